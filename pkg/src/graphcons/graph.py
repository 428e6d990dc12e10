"""Graph value type, constructors for the common families, and structural queries.

Vertices are integer indices ``0..n-1``; optional string labels are carried for
I/O only. Graphs are immutable once built. Undirected edges are stored once
with ``u <= v``; directed edges keep their orientation.
"""
from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ConstructionFailed, InvalidArgument, UnsupportedSize

Edge = tuple[int, int, float]

MAX_ISOMORPHISM_N = 10


@dataclass(frozen=True)
class Graph:
    n: int
    directed: bool = False
    edges: tuple[Edge, ...] = ()
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise InvalidArgument(f"vertex count must be non-negative, got {self.n}")
        canon: dict[tuple[int, int], float] = {}
        for edge in self.edges:
            if len(edge) == 2:
                u, v = edge
                w = 1.0
            else:
                u, v, w = edge
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidArgument(f"edge ({u}, {v}) references a vertex outside [0, {self.n})")
            key = (u, v) if self.directed else (min(u, v), max(u, v))
            if key in canon:
                raise InvalidArgument(f"duplicate edge {key}")
            canon[key] = w
        object.__setattr__(self, "edges", tuple(sorted((u, v, w) for (u, v), w in canon.items())))
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.n:
                raise InvalidArgument(f"expected {self.n} labels, got {len(labels)}")
            if len(set(labels)) != len(labels):
                raise InvalidArgument("vertex labels must be unique")
            object.__setattr__(self, "labels", labels)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def _weights(self) -> dict[tuple[int, int], float]:
        out = {}
        for u, v, w in self.edges:
            out[(u, v)] = w
            if not self.directed:
                out[(v, u)] = w
        return out

    @cached_property
    def _succ(self) -> tuple[tuple[int, ...], ...]:
        succ: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.edges:
            succ[u].append(v)
            if not self.directed and u != v:
                succ[v].append(u)
        return tuple(tuple(sorted(s)) for s in succ)

    def neighbors(self, u: int) -> tuple[int, ...]:
        """Out-neighbours of ``u`` (all neighbours when undirected)."""
        return self._succ[u]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._weights

    def weight(self, u: int, v: int) -> float:
        return self._weights.get((u, v), 0.0)

    @property
    def is_weighted(self) -> bool:
        return any(w != 1.0 for _, _, w in self.edges)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def labeled_edges(self) -> set[tuple[str, str, float]]:
        """Edge set keyed by vertex label, used for label-level round-trip checks."""
        out = set()
        for u, v, w in self.edges:
            a, b = self.label(u), self.label(v)
            if not self.directed and b < a:
                a, b = b, a
            out.add((a, b, w))
        return out

    def self_loops(self) -> int:
        return sum(1 for u, v, _ in self.edges if u == v)

    def transpose(self) -> Graph:
        if not self.directed:
            return self
        return Graph(self.n, True, tuple((v, u, w) for u, v, w in self.edges), self.labels)


# -- constructors ----------------------------------------------------------


def make_ring(n: int) -> Graph:
    if n < 3:
        raise InvalidArgument(f"a ring needs at least 3 vertices, got {n}")
    return Graph(n, edges=tuple((i, (i + 1) % n) for i in range(n)))


def make_path(n: int) -> Graph:
    if n < 1:
        raise InvalidArgument(f"a path needs at least 1 vertex, got {n}")
    return Graph(n, edges=tuple((i, i + 1) for i in range(n - 1)))


def make_star(n: int, center: int = 0) -> Graph:
    if n < 1 or not 0 <= center < n:
        raise InvalidArgument(f"invalid star: n={n}, center={center}")
    return Graph(n, edges=tuple((center, i) for i in range(n) if i != center))


def make_complete(n: int) -> Graph:
    if n < 1:
        raise InvalidArgument(f"a complete graph needs at least 1 vertex, got {n}")
    return Graph(n, edges=tuple(itertools.combinations(range(n), 2)))


def make_erdos_renyi(n: int, p: float, seed: int, directed: bool = False) -> Graph:
    """G(n, p): every possible edge kept independently with probability ``p``.

    Draws come from ``numpy.random.default_rng(seed)`` (PCG64) in the fixed
    order of the upper-triangle pairs (all ordered pairs when directed).
    """
    if n < 0:
        raise InvalidArgument(f"n must be non-negative, got {n}")
    if not 0.0 <= p <= 1.0:
        raise InvalidArgument(f"p must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    if directed:
        rows, cols = np.nonzero(~np.eye(n, dtype=bool))
    else:
        rows, cols = np.triu_indices(n, 1)
    keep = rng.random(rows.size) < p
    return Graph(n, directed, tuple(zip(rows[keep].tolist(), cols[keep].tolist())))


def _pairing_attempt(n: int, k: int, rng: np.random.Generator) -> set[tuple[int, int]] | None:
    # Pair stubs at random, skipping pairs that would make a loop or a repeat edge.
    stubs = [v for v in range(n) for _ in range(k)]
    edges: set[tuple[int, int]] = set()
    misses = 0
    while stubs:
        i, j = rng.choice(len(stubs), size=2, replace=False)
        u, v = stubs[i], stubs[j]
        key = (min(u, v), max(u, v))
        if u == v or key in edges:
            misses += 1
            if misses >= 20:
                open_ = sorted(set(stubs))
                if not any((a, b) not in edges for a, b in itertools.combinations(open_, 2)):
                    return None
                misses = 0
            continue
        edges.add(key)
        for idx in sorted((i, j), reverse=True):
            stubs.pop(idx)
        misses = 0
    return edges


def make_regular(n: int, k: int, seed: int, max_retries: int = 100) -> Graph:
    """Random simple k-regular graph on n vertices."""
    if n < 1 or k < 0 or k >= n or (n * k) % 2:
        raise InvalidArgument(f"no simple {k}-regular graph on {n} vertices")
    rng = np.random.default_rng(seed)
    # Dense targets are built as the complement of a sparse one.
    complement = k > (n - 1) // 2
    target = n - 1 - k if complement else k
    for _ in range(max_retries):
        edges = _pairing_attempt(n, target, rng)
        if edges is not None:
            break
    else:
        raise ConstructionFailed(f"could not build a {k}-regular graph on {n} vertices "
                                 f"after {max_retries} attempts")
    if complement:
        edges = set(itertools.combinations(range(n), 2)) - edges
    return Graph(n, edges=tuple(edges))


def subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Induced subgraph on ``vertices``.

    Retained vertices are renumbered in ascending order; labels follow them
    when ``g`` has labels.
    """
    keep = sorted(set(int(v) for v in vertices))
    bad = [v for v in keep if not 0 <= v < g.n]
    if bad:
        raise InvalidArgument(f"vertices {bad} outside [0, {g.n})")
    index = {v: i for i, v in enumerate(keep)}
    edges = tuple((index[u], index[v], w) for u, v, w in g.edges if u in index and v in index)
    labels = tuple(g.labels[v] for v in keep) if g.labels is not None else None
    return Graph(len(keep), g.directed, edges, labels)


def disjoint_union(*graphs: Graph) -> Graph:
    directed = {g.directed for g in graphs}
    if len(directed) > 1:
        raise InvalidArgument("cannot mix directed and undirected graphs")
    offset = 0
    edges = []
    for g in graphs:
        edges.extend((u + offset, v + offset, w) for u, v, w in g.edges)
        offset += g.n
    return Graph(offset, directed.pop() if directed else False, tuple(edges))


# -- degree ----------------------------------------------------------------


def degree_sequence(g: Graph) -> list[int]:
    """Per-vertex degrees; a loop adds 2 when undirected. Out-degrees when directed."""
    deg = [0] * g.n
    for u, v, _ in g.edges:
        deg[u] += 1
        if not g.directed:
            deg[v] += 1
    return deg


def in_degree_sequence(g: Graph) -> list[int]:
    return degree_sequence(g.transpose()) if g.directed else degree_sequence(g)


# -- connectivity ----------------------------------------------------------


def _require_undirected(g: Graph, what: str):
    if g.directed:
        raise InvalidArgument(f"{what} needs an undirected graph")


def connected_components(g: Graph) -> list[list[int]]:
    _require_undirected(g, "connected_components")
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    _require_undirected(g, "is_connected (use strongly_connected_components for digraphs)")
    if g.n <= 1:
        return True
    return len(connected_components(g)[0]) == g.n


def strongly_connected_components(g: Graph) -> list[list[int]]:
    """Tarjan's algorithm, iterative.

    Components come out in reverse topological order of the condensation;
    each component is sorted.
    """
    if not g.directed:
        raise InvalidArgument("strongly_connected_components needs a directed graph")
    index = [-1] * g.n
    low = [0] * g.n
    on_stack = [False] * g.n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(g.n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work[-1]
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            succ = g.neighbors(v)
            if pos < len(succ):
                work[-1] = (v, pos + 1)
                w = succ[pos]
                if index[w] == -1:
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def condensation(g: Graph, components: Sequence[Sequence[int]] | None = None) -> Graph:
    """Directed graph with one vertex per strongly connected component."""
    if components is None:
        components = strongly_connected_components(g)
    owner = {}
    for ci, comp in enumerate(components):
        for v in comp:
            owner[v] = ci
    edges = {(owner[u], owner[v]) for u, v, _ in g.edges if owner[u] != owner[v]}
    return Graph(len(components), True, tuple(edges))


def is_acyclic(g: Graph) -> bool:
    if not g.directed:
        raise InvalidArgument("is_acyclic needs a directed graph")
    indeg = in_degree_sequence(g)
    if g.self_loops():
        return False
    queue = deque(v for v in range(g.n) if indeg[v] == 0)
    seen = 0
    while queue:
        u = queue.popleft()
        seen += 1
        for v in g.neighbors(u):
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return seen == g.n


# -- isomorphism -----------------------------------------------------------


def _signature(g: Graph) -> list[tuple]:
    out_deg = degree_sequence(g)
    in_deg = in_degree_sequence(g)
    loops = Counter(u for u, v, _ in g.edges if u == v)
    return [(out_deg[v], in_deg[v], g.weight(v, v), loops[v]) for v in range(g.n)]


def isomorphism(g1: Graph, g2: Graph) -> list[int] | None:
    """Vertex bijection ``perm`` with g1 edge (u, v, w) <-> g2 edge (perm[u], perm[v], w).

    Backtracking over candidates restricted to the same degree class; capped at
    ``MAX_ISOMORPHISM_N`` vertices. Returns ``None`` when no bijection exists.
    """
    if g1.n > MAX_ISOMORPHISM_N or g2.n > MAX_ISOMORPHISM_N:
        raise UnsupportedSize(f"isomorphism search is limited to n <= {MAX_ISOMORPHISM_N}")
    if g1.n != g2.n or g1.directed != g2.directed or g1.num_edges != g2.num_edges:
        return None
    sig1, sig2 = _signature(g1), _signature(g2)
    if sorted(sig1) != sorted(sig2):
        return None
    n = g1.n
    # Most constrained (highest degree) vertices first.
    order = sorted(range(n), key=lambda v: (-sig1[v][0] - sig1[v][1], v))
    perm = [-1] * n
    used = [False] * n

    def consistent(u: int, c: int, placed: int) -> bool:
        for x in order[:placed]:
            y = perm[x]
            if g1.weight(u, x) != g2.weight(c, y) or g1.weight(x, u) != g2.weight(y, c):
                return False
        return True

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        u = order[pos]
        for c in range(n):
            if used[c] or sig1[u] != sig2[c] or not consistent(u, c, pos):
                continue
            perm[u] = c
            used[c] = True
            if extend(pos + 1):
                return True
            used[c] = False
            perm[u] = -1
        return False

    return perm if extend(0) else None


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    return isomorphism(g1, g2) is not None


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``u`` renamed to ``perm[u]``."""
    if sorted(perm) != list(range(g.n)):
        raise InvalidArgument("perm must be a permutation of range(n)")
    return Graph(g.n, g.directed, tuple((perm[u], perm[v], w) for u, v, w in g.edges))
