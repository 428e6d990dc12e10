"""Graph representations, distributed averaging, centralized accretion and root finding."""
from .distributions import DistributionSpec, analytic_moments, density, sample
from .graph import (Graph, degree_sequence, is_connected, is_isomorphic, isomorphism, make_complete,
                    make_erdos_renyi, make_regular, make_ring, strongly_connected_components,
                    subgraph)

__all__ = [
    "DistributionSpec", "Graph", "analytic_moments", "degree_sequence", "density", "is_connected",
    "is_isomorphic", "isomorphism", "make_complete", "make_erdos_renyi", "make_regular",
    "make_ring", "sample", "strongly_connected_components", "subgraph",
]

__version__ = "0.1.0"
