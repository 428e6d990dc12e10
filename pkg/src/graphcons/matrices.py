"""Matrix representations of graphs: adjacency, incidence, Laplacian, walk counts.

Every function returns a dense ``numpy.ndarray`` of floats. Row and column
order follows vertex indices; incidence columns follow ``g.edges``, which is
sorted lexicographically by (min endpoint, max endpoint).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AsymmetryError, InvalidArgument, Unsupported
from .graph import Graph, degree_sequence, is_connected

SPECTRAL_TOL = 1e-9


def adjacency_matrix(g: Graph) -> np.ndarray:
    """Entry (i, j) is the weight of edge i->j, mirrored when undirected.

    A self-loop appears once on the diagonal, so the row sum of a vertex with
    a loop is one less than its undirected degree.
    """
    a = np.zeros((g.n, g.n))
    for u, v, w in g.edges:
        a[u, v] = w
        if not g.directed:
            a[v, u] = w
    return a


def degree_matrix(g: Graph) -> np.ndarray:
    return np.diag(np.asarray(degree_sequence(g), dtype=float))


def graph_from_adjacency(m, directed: bool = False, labels: Sequence[str] | None = None,
                         tol: float = 1e-12) -> Graph:
    """Rebuild a graph from its adjacency matrix; nonzero entries become weighted edges."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidArgument(f"adjacency matrix must be square, got shape {m.shape}")
    if not directed:
        gap = np.abs(m - m.T).max(initial=0.0)
        if gap > tol:
            raise AsymmetryError(f"matrix is not symmetric (max |m - m^T| = {gap:g})")
        rows, cols = np.nonzero(np.triu(m))
    else:
        rows, cols = np.nonzero(m)
    edges = tuple((int(i), int(j), float(m[i, j])) for i, j in zip(rows, cols))
    return Graph(m.shape[0], directed, edges, tuple(labels) if labels is not None else None)


def _require_undirected(g: Graph, what: str):
    if g.directed:
        raise Unsupported(f"{what} is only defined here for undirected graphs")


def incidence_matrix(g: Graph) -> np.ndarray:
    """Unsigned vertex-by-edge 0/1 matrix; column j marks the endpoints of ``g.edges[j]``."""
    _require_undirected(g, "incidence matrix")
    q = np.zeros((g.n, g.num_edges))
    for j, (u, v, _) in enumerate(g.edges):
        q[u, j] = 1.0
        q[v, j] = 1.0
    return q


def signed_incidence_matrix(g: Graph) -> np.ndarray:
    """Oriented incidence: +sqrt(w) at the lower endpoint, -sqrt(w) at the higher one."""
    _require_undirected(g, "incidence matrix")
    if g.self_loops():
        raise InvalidArgument("signed incidence needs a graph without self-loops")
    q = np.zeros((g.n, g.num_edges))
    for j, (u, v, w) in enumerate(g.edges):
        if w < 0:
            raise InvalidArgument(f"edge ({u}, {v}) has negative weight {w}")
        s = np.sqrt(w)
        q[u, j] = s
        q[v, j] = -s
    return q


def graph_from_incidence(q, row_labels: Sequence[str] | None = None,
                         col_labels: Sequence[str] | None = None) -> Graph:
    """Bipartite reading of a 0/1 incidence grid.

    Rows become vertices ``0..r-1`` and columns ``r..r+c-1``; a nonzero cell
    (i, j) joins row vertex i to column vertex r+j.
    """
    q = np.asarray(q, dtype=float)
    if q.ndim != 2:
        raise InvalidArgument("incidence matrix must be 2-D")
    r, c = q.shape
    rows, cols = np.nonzero(q)
    labels = None
    if row_labels is not None or col_labels is not None:
        rl = list(row_labels) if row_labels is not None else [f"r{i}" for i in range(r)]
        cl = list(col_labels) if col_labels is not None else [f"c{j}" for j in range(c)]
        labels = tuple(rl + cl)
    return Graph(r + c, False, tuple((int(i), r + int(j)) for i, j in zip(rows, cols)), labels)


def laplacian(g: Graph, normalized: bool = False) -> np.ndarray:
    """Combinatorial ``D - A`` or the symmetric normalized Laplacian.

    Self-loops do not enter the combinatorial form, so every row sums to zero.
    The normalized form has 1 on the diagonal of non-isolated vertices and
    ``-w_ij / sqrt(d_i d_j)`` between neighbours (weighted degrees).
    """
    _require_undirected(g, "the Laplacian")
    if normalized and g.self_loops():
        raise InvalidArgument("normalized Laplacian is undefined with self-loops")
    a = adjacency_matrix(g)
    np.fill_diagonal(a, 0.0)
    d = a.sum(axis=1)
    if not normalized:
        return np.diag(d) - a
    if (d < 0).any():
        raise InvalidArgument("normalized Laplacian needs non-negative weighted degrees")
    nz = d != 0
    scale = np.sqrt(np.outer(d, d))
    lap = np.zeros_like(a)
    adj = a != 0
    lap[adj] = 0.0 - a[adj] / scale[adj]
    lap[np.diag_indices_from(lap)] = nz.astype(float)
    return lap


def laplacian_via_incidence(g: Graph) -> np.ndarray:
    """``Q Q^T`` with the signed incidence matrix, which equals ``D - A``.

    The unsigned incidence product would give ``D + A`` instead.
    """
    q = signed_incidence_matrix(g)
    return q @ q.T


def walk_count_sum(g: Graph, k: int) -> np.ndarray:
    """``A + A^2 + ... + A^k``: entry (i, j) counts walks of length 1..k from i to j."""
    if k < 1:
        raise InvalidArgument(f"k must be at least 1, got {k}")
    a = adjacency_matrix(g)
    total = np.zeros_like(a)
    power = np.eye(g.n)
    for _ in range(k):
        power = power @ a
        total += power
    return total


@dataclass(frozen=True)
class SpectralReport:
    is_regular: bool
    degree: int | None
    degree_eigenvalue: float | None
    residual: float | None
    multiplicity: int | None
    multiplicity_one: bool | None
    connected: bool


def regular_spectral_check(g: Graph) -> SpectralReport:
    """Check the all-ones eigenvector of a k-regular graph and the multiplicity of k.

    A k-regular graph is connected exactly when k is a simple eigenvalue of A,
    so ``multiplicity_one`` must agree with ``connected``.
    """
    _require_undirected(g, "regular_spectral_check")
    deg = degree_sequence(g)
    connected = is_connected(g)
    if g.n == 0 or len(set(deg)) != 1:
        return SpectralReport(False, None, None, None, None, None, connected)
    k = deg[0]
    # Loops count twice so that A @ 1 reproduces the degree.
    a = (adjacency_matrix(g) != 0).astype(float)
    a[np.diag_indices_from(a)] *= 2.0
    ones = np.ones(g.n)
    residual = float(np.abs(a @ ones - k * ones).max())
    eig = np.linalg.eigvalsh(a)
    mult = int(np.sum(np.abs(eig - k) < SPECTRAL_TOL))
    nearest = float(eig[np.argmin(np.abs(eig - k))])
    return SpectralReport(True, k, nearest, residual, mult, mult == 1, connected)
