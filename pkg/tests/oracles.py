"""Independent brute-force oracles used to freeze expected values.

Everything here recomputes results from definitions, with no shared code
paths into the library beyond the Graph container itself.
"""

from __future__ import annotations

import math
from itertools import combinations

from coarse_menger.graph import Graph
from coarse_menger.intervals import Interval, IntervalFamily

INF = math.inf


def pairwise_distances(g: Graph) -> list[list[float]]:
    """Floyd-Warshall all-pairs distances."""
    n = g.vertex_count
    dist = [[INF] * n for _ in range(n)]
    for v in range(n):
        dist[v][v] = 0
    for u, v in g.edges():
        dist[u][v] = dist[v][u] = 1
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == INF:
                continue
            di = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return dist


def family_is_powerful(items: list[tuple[int, int]], ell: int, n: int) -> bool:
    """Definition-level coverage scan."""
    for h in range(0, n - ell + 1):
        if not any(a <= h and h + ell <= b for a, b in items):
            return False
    return True


def minimal_powerful_subfamilies(
    family: IntervalFamily, ell: int
) -> list[frozenset[Interval]]:
    """All inclusion-minimal ell-powerful subfamilies, by subset enumeration."""
    items = list(dict.fromkeys(family.items))
    n = family.horizon
    powerful: list[frozenset[Interval]] = []
    for size in range(0, len(items) + 1):
        for combo in combinations(items, size):
            pairs = [(iv.a, iv.b) for iv in combo]
            if family_is_powerful(pairs, ell, n):
                candidate = frozenset(combo)
                if not any(prev <= candidate for prev in powerful):
                    powerful.append(candidate)
    return powerful


def all_simple_paths_between(
    g: Graph, sources: frozenset[int], targets: frozenset[int]
) -> list[tuple[int, ...]]:
    """Every simple path with first vertex in sources and last in targets."""
    found: list[tuple[int, ...]] = []

    def extend(path: list[int], used: set[int]) -> None:
        if path[-1] in targets:
            found.append(tuple(path))
        for v in g.neighbors(path[-1]):
            if v not in used:
                path.append(v)
                used.add(v)
                extend(path, used)
                used.remove(v)
                path.pop()

    for s in sorted(sources):
        extend([s], {s})
    return found


def exists_far_path_pair(
    g: Graph, sources: frozenset[int], targets: frozenset[int], d: int
) -> bool:
    """Naive check for two S-T paths at pairwise distance >= d."""
    dist = pairwise_distances(g)
    paths = all_simple_paths_between(g, sources, targets)
    for p, q in combinations(paths, 2):
        if all(dist[u][v] >= d for u in p for v in q):
            return True
    return False
