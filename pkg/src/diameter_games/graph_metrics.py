"""Distance and expansion metrics for simple undirected graphs on {0..n-1}.

All distances are measured in the given graph only.  Unreachable pairs get
INFINITE (math.inf), a distinguished non-integer value: comparisons such as
``dist <= d`` are False for unreachable pairs without any sentinel tricks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

INFINITE = math.inf


class InvalidGraph(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph: vertex set {0..n-1} plus a set of edges (u, v), u < v."""

    n: int
    edges: frozenset[tuple[int, int]]
    _adj: dict[int, list[int]] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidGraph(f"vertex count must be nonnegative, got {self.n}")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise InvalidGraph(f"edge ({u}, {v}) is not canonical for n={self.n}")
        adj: dict[int, list[int]] = {v: [] for v in range(self.n)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        object.__setattr__(self, "_adj", adj)

    def neighbors(self, v: int) -> list[int]:
        return self._adj[v]


def graph_from_edges(n: int, edges) -> Graph:
    canon = frozenset((u, v) if u < v else (v, u) for u, v in edges)
    return Graph(n, canon)


def _bfs_levels(g: Graph, source: int, limit: float = INFINITE) -> dict[int, int]:
    """Level map of the BFS tree rooted at source, truncated at depth `limit`."""
    seen = {source: 0}
    frontier = [source]
    depth = 0
    while frontier and depth < limit:
        depth += 1
        nxt = []
        for u in frontier:
            for w in g.neighbors(u):
                if w not in seen:
                    seen[w] = depth
                    nxt.append(w)
        frontier = nxt
    return seen


def dist(g: Graph, u: int, v: int) -> int | float:
    """Length of a shortest u-v path, or INFINITE if none exists."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise InvalidGraph(f"vertices ({u}, {v}) out of range for n={g.n}")
    if u == v:
        return 0
    levels = _bfs_levels(g, u)
    return levels.get(v, INFINITE)


def ball(g: Graph, v: int, radius: int | float) -> frozenset[int]:
    """All vertices within distance `radius` of v (v itself included)."""
    if not 0 <= v < g.n:
        raise InvalidGraph(f"vertex {v} out of range for n={g.n}")
    if radius < 0:
        raise InvalidGraph(f"radius must be nonnegative, got {radius}")
    return frozenset(_bfs_levels(g, v, limit=radius))


def sphere(g: Graph, v: int, radius: int) -> frozenset[int]:
    """Vertices at distance exactly `radius` from v."""
    levels = _bfs_levels(g, v, limit=radius)
    return frozenset(w for w, d in levels.items() if d == radius)


def diameter(g: Graph) -> int | float:
    """Largest pairwise distance; INFINITE when g is disconnected.

    Duality used throughout this package: diameter(g) <= d holds iff
    |ball(g, v, d)| == n for every vertex v.
    """
    if g.n < 2:
        raise InvalidGraph("diameter needs at least two vertices")
    worst = 0
    for v in range(g.n):
        levels = _bfs_levels(g, v)
        if len(levels) < g.n:
            return INFINITE
        ecc = max(levels.values())
        if ecc > worst:
            worst = ecc
    return worst


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    min_degree: int
    max_degree: int


def degree_profile(g: Graph) -> DegreeProfile:
    degs = tuple(len(g.neighbors(v)) for v in range(g.n))
    if not degs:
        return DegreeProfile((), 0, 0)
    return DegreeProfile(degs, min(degs), max(degs))


def has_expansion(g: Graph, r: int, s: int) -> bool:
    """True iff every pair of disjoint vertex sets (R, S) with |R|=r, |S|=s has an edge between them.

    For a fixed R, a violating S exists exactly when at least s vertices lie
    outside R with no edge into R.  Enumerating R-sets and counting their
    non-neighborhood is O(C(n, r) * n) instead of enumerating S-sets too.
    """
    if r < 1 or s < 1:
        raise InvalidGraph(f"set sizes must be positive, got r={r}, s={s}")
    if r + s > g.n:
        raise InvalidGraph(f"r + s = {r + s} exceeds vertex count {g.n}")
    for rset in combinations(range(g.n), r):
        members = set(rset)
        attached = set()
        for u in rset:
            attached.update(g.neighbors(u))
        bad_pool = g.n - len(members | attached)
        if bad_pool >= s:
            return False
    return True
