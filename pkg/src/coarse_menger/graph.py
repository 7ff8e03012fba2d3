"""Immutable undirected graphs and the distance primitives everything else uses.

Vertices are dense integer ids 0..n-1; labels and roles live outside the
graph.  All functions are pure: derived graphs (powers, unions) are new
values, and a Graph may be shared freely between worker processes.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

INF = math.inf

VertexSet = frozenset[int]


class GraphError(ValueError):
    pass


class SelfLoopError(GraphError):
    def __init__(self, vertex: int):
        super().__init__(f"self-loop at vertex {vertex}")
        self.vertex = vertex


class DuplicateEdgeError(GraphError):
    def __init__(self, u: int, v: int):
        super().__init__(f"duplicate edge ({u}, {v})")
        self.edge = (u, v)


class VertexRangeError(GraphError):
    def __init__(self, vertex: int, vertex_count: int):
        super().__init__(f"vertex {vertex} outside range [0, {vertex_count})")
        self.vertex = vertex


class EmptySourcesError(GraphError):
    pass


class PathError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph as a tuple of ascending neighbor tuples."""

    adjacency: tuple[tuple[int, ...], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    def vertices(self) -> range:
        return range(len(self.adjacency))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    @cached_property
    def max_degree(self) -> int:
        return max((len(nbrs) for nbrs in self.adjacency), default=0)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as (u, v) with u < v, in ascending order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if v > u:
                    yield (u, v)

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.adjacency[u]
        if len(self.adjacency[v]) < len(nbrs):
            u, v, nbrs = v, u, self.adjacency[v]
        return v in nbrs


def build_graph(
    vertex_count: int, edges: Iterable[tuple[int, int]], strict: bool = True
) -> Graph:
    """Build a Graph, validating simplicity.

    In strict mode a repeated edge is an error; otherwise duplicates collapse.
    Self-loops and out-of-range endpoints are always errors.
    """
    if vertex_count < 0:
        raise GraphError("vertex_count must be nonnegative")
    neighbor_sets: list[set[int]] = [set() for _ in range(vertex_count)]
    for u, v in edges:
        for w in (u, v):
            if not 0 <= w < vertex_count:
                raise VertexRangeError(w, vertex_count)
        if u == v:
            raise SelfLoopError(u)
        if v in neighbor_sets[u]:
            if strict:
                raise DuplicateEdgeError(u, v)
            continue
        neighbor_sets[u].add(v)
        neighbor_sets[v].add(u)
    return Graph(tuple(tuple(sorted(s)) for s in neighbor_sets))


@dataclass(frozen=True)
class Path:
    """A simple path given by its vertex sequence (a single vertex is legal)."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if not self.vertices:
            raise PathError("a path has at least one vertex")

    @property
    def length(self) -> int:
        """Number of edges."""
        return len(self.vertices) - 1

    @cached_property
    def vertex_set(self) -> VertexSet:
        return frozenset(self.vertices)

    @property
    def first(self) -> int:
        return self.vertices[0]

    @property
    def last(self) -> int:
        return self.vertices[-1]

    def reverse(self) -> "Path":
        return Path(tuple(reversed(self.vertices)))

    def validate(self, g: Graph) -> None:
        """Raise PathError unless this is a simple path of g."""
        if len(self.vertex_set) != len(self.vertices):
            raise PathError(f"repeated vertex in path {self.vertices}")
        for v in self.vertices:
            if not 0 <= v < g.vertex_count:
                raise PathError(f"vertex {v} outside graph")
        for u, v in zip(self.vertices, self.vertices[1:]):
            if not g.has_edge(u, v):
                raise PathError(f"({u}, {v}) is not an edge")


def _as_vertices(obj: Iterable[int] | Path) -> Iterable[int]:
    return obj.vertices if isinstance(obj, Path) else obj


def _bfs_distances(
    g: Graph, sources: Iterable[int], forbidden: VertexSet = frozenset()
) -> list[float]:
    dist: list[float] = [INF] * g.vertex_count
    queue: deque[int] = deque()
    for s in sources:
        if s in forbidden or dist[s] == 0:
            continue
        dist[s] = 0
        queue.append(s)
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in g.adjacency[u]:
            if dist[v] == INF and v not in forbidden:
                dist[v] = du
                queue.append(v)
    return dist


def distances_from(g: Graph, sources: Iterable[int] | Path) -> list[float]:
    """Multi-source BFS distances; unreachable vertices map to INF."""
    src = list(_as_vertices(sources))
    if not src:
        raise EmptySourcesError("distance computation needs at least one source")
    for s in src:
        if not 0 <= s < g.vertex_count:
            raise VertexRangeError(s, g.vertex_count)
    return _bfs_distances(g, src)


def set_distance(
    g: Graph, a: Iterable[int] | Path, b: Iterable[int] | Path
) -> float:
    """min over pairs of d(x, y); 0 iff the sets intersect, INF if separated."""
    av = set(_as_vertices(a))
    bv = set(_as_vertices(b))
    if not av or not bv:
        raise EmptySourcesError("set_distance needs nonempty sets")
    if len(av) > len(bv):
        av, bv = bv, av
    dist = _bfs_distances(g, av)
    return min(dist[v] for v in bv)


def ball(g: Graph, center: Iterable[int] | Path, radius: float) -> VertexSet:
    """All vertices within the given distance of some center vertex."""
    if radius < 0:
        raise GraphError("radius must be nonnegative")
    centers = list(_as_vertices(center))
    if not centers:
        return frozenset()
    dist = _bfs_distances(g, centers)
    return frozenset(v for v in g.vertices() if dist[v] <= radius)


def shortest_path(
    g: Graph,
    sources: Iterable[int] | Path,
    targets: Iterable[int] | Path,
    forbidden: VertexSet = frozenset(),
) -> Path | None:
    """Minimum-length path from sources to targets avoiding forbidden entirely.

    Among minimum-length paths, returns the lexicographically smallest vertex
    sequence, so results are reproducible across runs.
    """
    src = {v for v in _as_vertices(sources) if v not in forbidden}
    tgt = {v for v in _as_vertices(targets) if v not in forbidden}
    if not src or not tgt:
        return None
    dist_to_target = _bfs_distances(g, tgt, forbidden)
    best = min((dist_to_target[s] for s in src), default=INF)
    if best == INF:
        return None
    at = min(s for s in src if dist_to_target[s] == best)
    walk = [at]
    remaining = best
    while remaining > 0:
        at = min(
            v
            for v in g.adjacency[at]
            if v not in forbidden and dist_to_target[v] == remaining - 1
        )
        walk.append(at)
        remaining -= 1
    return Path(tuple(walk))


@dataclass(frozen=True)
class Component:
    """A connected piece of G - removed, with its neighbors inside removed."""

    vertices: VertexSet
    boundary: VertexSet


def components_excluding(g: Graph, removed: Iterable[int]) -> list[Component]:
    """Connected components of the subgraph induced on V - removed.

    Ordered by smallest contained vertex; each component carries the set of
    removed vertices adjacent to it.
    """
    out = set(removed)
    seen = [False] * g.vertex_count
    comps: list[Component] = []
    for start in g.vertices():
        if seen[start] or start in out:
            continue
        seen[start] = True
        queue = deque([start])
        members: list[int] = []
        boundary: set[int] = set()
        while queue:
            u = queue.popleft()
            members.append(u)
            for v in g.adjacency[u]:
                if v in out:
                    boundary.add(v)
                elif not seen[v]:
                    seen[v] = True
                    queue.append(v)
        comps.append(Component(frozenset(members), frozenset(boundary)))
    return comps


def power(g: Graph, p: int) -> Graph:
    """Graph on the same vertices joining every pair at distance 1..p."""
    if p < 1:
        raise GraphError("power exponent must be >= 1")
    if p == 1:
        return Graph(g.adjacency)
    edges: list[tuple[int, int]] = []
    for u in g.vertices():
        dist = [-1] * g.vertex_count
        dist[u] = 0
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if dist[x] == p:
                continue
            for y in g.adjacency[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    if y > u:
                        edges.append((u, y))
                    queue.append(y)
    return build_graph(g.vertex_count, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union; vertex ids of later graphs are shifted up."""
    edges: list[tuple[int, int]] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.vertex_count
    return build_graph(offset, edges)
