"""Distributed averaging on a graph.

Each node repeatedly replaces its value with the mean of its neighbours'
values: ``x(t+1) = W x(t)`` with ``W = D^-1 A``. ``W`` is row-stochastic, so
the iteration contracts the value range, and ``d^T W = d^T`` (``d`` the degree
vector), so ``sum_i d_i x_i(t)`` never changes. On a connected non-bipartite
graph every node therefore converges to the degree-weighted average
``sum_i d_i x_i(0) / sum_i d_i``; this is the plain mean only for regular
graphs.
"""
from __future__ import annotations

import logging
from collections import Counter, deque
from dataclasses import dataclass

import numpy as np

from . import distributions
from .distributions import DistributionSpec
from .errors import BipartiteGraph, DisconnectedGraph, InvalidArgument, IsolatedVertex
from .graph import Graph, degree_sequence, is_connected, make_erdos_renyi

log = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-8
DEFAULT_MAX_ITERS = 1000
DEFAULT_N = 20
DEFAULT_P = 0.5
RESAMPLE_ATTEMPTS = 50


def _structure(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v, _ in g.edges:
        a[u, v] = a[v, u] = 1.0
    return a


def build_averaging_matrix(g: Graph) -> np.ndarray:
    """``W[i, j] = 1 / deg(i)`` when i and j are adjacent, else 0.

    Edge weights are ignored; a node's degree is the row sum of the 0/1
    adjacency matrix.
    """
    if g.directed:
        raise InvalidArgument("averaging needs an undirected graph")
    a = _structure(g)
    deg = a.sum(axis=1)
    isolated = np.flatnonzero(deg == 0)
    if isolated.size:
        raise IsolatedVertex(f"vertices {isolated.tolist()} have no neighbours")
    if not is_connected(g):
        raise DisconnectedGraph("graph is disconnected; no global consensus value exists")
    return a / deg[:, None]


def bipartite_guard(g: Graph) -> bool:
    """True when breadth-first layering finds no edge inside a layer."""
    if g.directed:
        raise InvalidArgument("bipartite_guard needs an undirected graph")
    layer = [-1] * g.n
    for root in range(g.n):
        if layer[root] != -1:
            continue
        layer[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if layer[v] == -1:
                    layer[v] = layer[u] + 1
                    queue.append(v)
                elif layer[v] % 2 == layer[u] % 2:
                    return False
    return True


@dataclass(frozen=True)
class ConsensusTrace:
    n: int
    num_edges: int
    graph_seed: int | None
    spec: DistributionSpec
    value_seed: int
    values: np.ndarray  # (iterations_run + 1, n); row 0 is the initial draw
    converged: bool
    consensus_value: float | None
    iterations_run: int
    tolerance: float
    lazy: bool = False

    @property
    def spreads(self) -> np.ndarray:
        return self.values.max(axis=1) - self.values.min(axis=1)


def spread(x) -> float:
    x = np.asarray(x)
    return float(x.max() - x.min())


def iterate(w: np.ndarray, x0, tolerance: float = DEFAULT_TOLERANCE,
            max_iters: int = DEFAULT_MAX_ITERS, lazy: bool = False) -> tuple[np.ndarray, bool]:
    """Apply ``x <- W x`` (or the lazy ``x <- (x + W x) / 2``) until the spread
    is at most ``tolerance`` or ``max_iters`` steps have run."""
    x = np.asarray(x0, dtype=float)
    rows = [x]
    while spread(x) > tolerance:
        if len(rows) > max_iters:
            return np.vstack(rows), False
        nxt = w @ x
        x = 0.5 * (x + nxt) if lazy else nxt
        rows.append(x)
    return np.vstack(rows), True


def run_consensus(g: Graph, spec: DistributionSpec, seed: int, max_iters: int = DEFAULT_MAX_ITERS,
                  tolerance: float = DEFAULT_TOLERANCE, lazy: bool = False,
                  graph_seed: int | None = None, initial=None) -> ConsensusTrace:
    """Draw one value per node from ``spec`` and iterate to consensus.

    Bipartite graphs make the plain iteration oscillate forever, so they are
    rejected unless ``lazy`` is set. ``initial`` overrides the random draw.
    """
    if max_iters < 1 or tolerance <= 0:
        raise InvalidArgument("max_iters must be positive and tolerance > 0")
    w = build_averaging_matrix(g)
    if not lazy and bipartite_guard(g):
        raise BipartiteGraph("graph is bipartite; the plain averaging iteration oscillates "
                             "(pass lazy=True for x <- (x + Wx)/2)")
    if initial is None:
        x0 = distributions.sample(spec, g.n, seed)
    else:
        x0 = np.asarray(initial, dtype=float)
        if x0.shape != (g.n,):
            raise InvalidArgument(f"initial values must have length {g.n}")
    values, converged = iterate(w, x0, tolerance, max_iters, lazy)
    return ConsensusTrace(
        n=g.n, num_edges=g.num_edges, graph_seed=graph_seed, spec=spec, value_seed=seed,
        values=values, converged=converged,
        consensus_value=float(values[-1, 0]) if converged else None,
        iterations_run=values.shape[0] - 1, tolerance=tolerance, lazy=lazy,
    )


def averaging_degrees(g: Graph) -> np.ndarray:
    """Row sums of the 0/1 adjacency matrix, the degrees ``W`` divides by."""
    return _structure(g).sum(axis=1)


def degree_weighted_average(g: Graph, x) -> float:
    deg = averaging_degrees(g)
    return float(deg @ np.asarray(x, dtype=float) / deg.sum())


def sample_connected_graph(n: int = DEFAULT_N, p: float = DEFAULT_P, seed: int = 0,
                           attempts: int = RESAMPLE_ATTEMPTS) -> tuple[Graph, int]:
    """G(n, p) that is connected, trying ``seed, seed+1, ...``.

    Returns the graph and the seed that produced it.
    """
    for offset in range(attempts):
        g = make_erdos_renyi(n, p, seed + offset)
        if is_connected(g) and g.n > 0 and all(degree_sequence(g)):
            return g, seed + offset
        log.info("G(%d, %g) with seed %d is disconnected; resampling", n, p, seed + offset)
    raise DisconnectedGraph(f"no connected G({n}, {p}) within {attempts} seeds from {seed}")


@dataclass(frozen=True)
class DegreeStatistics:
    histogram: list[tuple[int, int]]
    cumulative: list[tuple[int, int]]


def degree_statistics(g: Graph) -> DegreeStatistics:
    """Unit-width histogram of degrees from the smallest to the largest observed
    degree (empty bins included), with the running cumulative count."""
    deg = degree_sequence(g)
    if not deg:
        return DegreeStatistics([], [])
    counts = Counter(deg)
    hist = [(d, counts.get(d, 0)) for d in range(min(deg), max(deg) + 1)]
    cum = []
    total = 0
    for d, c in hist:
        total += c
        cum.append((d, total))
    return DegreeStatistics(hist, cum)
