"""Exhaustive, certificate-grade verification of separator and path claims.

Everything here is exact: a negative answer means the full candidate space
was exhausted, and every positive answer carries a witness that re-verifies
from definitions.  Budgets turn runaway searches into honest
``BudgetExhausted`` values rather than wrong answers.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, islice
from multiprocessing import get_context
from typing import Iterator

from .gadgets import build_tree_gadget
from .graph import (
    Graph,
    Path,
    VertexSet,
    ball,
    set_distance,
    shortest_path,
)


class OracleError(ValueError):
    pass


class TooLargeError(OracleError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 100_000_000
    max_seconds: float | None = None

    def __post_init__(self):
        if self.max_nodes <= 0:
            raise OracleError("max_nodes must be positive")


@dataclass(frozen=True)
class FoundPaths:
    paths: tuple[Path, ...]
    nodes_used: int


@dataclass(frozen=True)
class NoneExists:
    nodes_used: int


@dataclass(frozen=True)
class BudgetExhausted:
    nodes_used: int


FarPathsResult = FoundPaths | NoneExists | BudgetExhausted


@dataclass(frozen=True)
class Separates:
    pass


@dataclass(frozen=True)
class Escapes:
    witness: Path


SeparatorResult = Separates | Escapes


def is_ball_separator(
    g: Graph,
    sources: VertexSet,
    targets: VertexSet,
    centers: VertexSet,
    radius: int,
) -> SeparatorResult:
    """Does the radius-ball around centers meet every source-target path?

    Escapes carries a shortest path missing the ball entirely.
    """
    if radius < 0:
        raise OracleError("radius must be nonnegative")
    blocked = ball(g, centers, radius)
    witness = shortest_path(g, sources, targets, forbidden=blocked)
    return Separates() if witness is None else Escapes(witness)


def _center_sets(n: int, max_size: int) -> Iterator[tuple[int, ...]]:
    for size in range(1, max_size + 1):
        yield from combinations(range(n), size)


def _scan_candidates(
    g: Graph,
    sources: VertexSet,
    targets: VertexSet,
    radius: int,
    max_size: int,
    start: int,
    stop: int | None,
) -> tuple[int, VertexSet] | None:
    """Scan candidate center sets [start, stop) in size-then-lex order.

    A cached escape path whose ball misses a candidate rules the candidate
    out without a BFS, so only genuinely new escape shapes cost full checks.
    """
    single_ball: dict[int, VertexSet] = {}
    witnesses: list[VertexSet] = []
    for index, cand in enumerate(
        islice(_center_sets(g.vertex_count, max_size), start, stop), start
    ):
        reach: VertexSet = frozenset()
        for v in cand:
            if v not in single_ball:
                single_ball[v] = ball(g, (v,), radius)
            reach |= single_ball[v]
        if any(reach.isdisjoint(w) for w in witnesses):
            continue
        witness = shortest_path(g, sources, targets, forbidden=reach)
        if witness is None:
            return index, frozenset(cand)
        witnesses.append(witness.vertex_set)
    return None


def _scan_candidates_star(args) -> tuple[int, VertexSet] | None:
    return _scan_candidates(*args)


def _count_combinations(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def find_ball_separator(
    g: Graph,
    sources: VertexSet,
    targets: VertexSet,
    max_size: int,
    radius: int,
    workers: int = 1,
) -> VertexSet | None:
    """First center set (singletons in ascending order, then pairs in
    lexicographic order, ...) of size <= max_size whose radius-ball meets every
    source-target path, or None if no such set exists.

    If sources and targets are already separated, the empty set is returned:
    it is the least valid separator and doubles as the no-path flag.
    """
    if not sources or not targets:
        return frozenset()
    if shortest_path(g, sources, targets) is None:
        return frozenset()
    if workers <= 1:
        hit = _scan_candidates(g, sources, targets, radius, max_size, 0, None)
        return hit[1] if hit else None
    n = g.vertex_count
    total = sum(_count_combinations(n, size) for size in range(1, max_size + 1))
    chunk = max(1, -(-total // (workers * 4)))
    tasks = [
        (g, sources, targets, radius, max_size, lo, min(lo + chunk, total))
        for lo in range(0, total, chunk)
    ]
    with get_context("fork").Pool(workers) as pool:
        hits = [h for h in pool.map(_scan_candidates_star, tasks) if h is not None]
    if not hits:
        return None
    return min(hits)[1]


class _BudgetHit(Exception):
    pass


class _FarPathSearch:
    """Backtracking state for the k-path placement search.

    ``ball_dist`` is the exact distance to the union of all currently stacked
    path vertices (committed and partial), maintained incrementally with an
    undo log.  ``blocked`` counts coverage by committed paths' balls only: a
    path may run close to itself, but never within d-1 of a committed path.
    """

    def __init__(self, g: Graph, sources: VertexSet, targets: VertexSet, k: int, d: int, budget: SearchBudget):
        self.g = g
        self.adj = g.adjacency
        self.sources = sorted(sources)
        self.targets = set(targets)
        self.k = k
        self.reach = d - 1
        self.budget = budget
        n = g.vertex_count
        self.far = n + 1
        self.ball_dist = [self.far] * n
        self.undo: list[tuple[int, int]] = []
        self.members: list[int] = []
        self.blocked = [0] * n
        self.on_path = [False] * n
        self.nodes = 0
        self.deadline = (
            time.monotonic() + budget.max_seconds if budget.max_seconds is not None else None
        )
        self.found: list[list[int]] = []

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _BudgetHit
        if (
            self.deadline is not None
            and self.nodes % 1024 == 0
            and time.monotonic() > self.deadline
        ):
            raise _BudgetHit

    # -- incremental ball maintenance ------------------------------------

    def _set_dist(self, w: int, val: int) -> None:
        old = self.ball_dist[w]
        self.undo.append((w, old))
        self.ball_dist[w] = val
        if old > self.reach and val <= self.reach:
            self.members.append(w)

    def grow_ball(self, v: int) -> tuple[int, int]:
        marks = (len(self.undo), len(self.members))
        if self.ball_dist[v] > 0:
            self._set_dist(v, 0)
        frontier = [v]
        depth = 0
        while frontier and depth < self.reach:
            depth += 1
            nxt = []
            for u in frontier:
                for w in self.adj[u]:
                    if self.ball_dist[w] > depth:
                        self._set_dist(w, depth)
                        nxt.append(w)
            frontier = nxt
        return marks

    def shrink_ball(self, marks: tuple[int, int]) -> None:
        undo_mark, member_mark = marks
        while len(self.undo) > undo_mark:
            w, old = self.undo.pop()
            self.ball_dist[w] = old
        del self.members[member_mark:]

    # -- pruning ----------------------------------------------------------

    def current_can_finish(self, endpoint: int) -> bool:
        """Can the path under construction still reach a free target?"""
        if endpoint in self.targets:
            return True
        seen = {endpoint}
        stack = [endpoint]
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if w in seen or self.blocked[w] or self.on_path[w]:
                    continue
                if w in self.targets:
                    return True
                seen.add(w)
                stack.append(w)
        return False

    def future_feasible(self, placed: int, min_start: int) -> bool:
        """Necessary condition for the remaining k - placed paths to exist."""
        need = self.k - placed
        if need <= 0:
            return True
        blocked, dist, reach = self.blocked, self.ball_dist, self.reach
        starts = [
            s
            for s in self.sources
            if s > min_start and not blocked[s] and dist[s] > reach
        ]
        if len(starts) < need:
            return False
        ends = sum(
            1 for t in self.targets if not blocked[t] and dist[t] > reach
        )
        if ends < need:
            return False
        seen = set(starts)
        stack = list(starts)
        while stack:
            u = stack.pop()
            if u in self.targets:
                return True
            for w in self.adj[u]:
                if w not in seen and not blocked[w] and dist[w] > reach:
                    seen.add(w)
                    stack.append(w)
        return False

    # -- search -----------------------------------------------------------

    def place(self, slot: int, min_start: int) -> bool:
        if slot == self.k:
            return True
        if not self.future_feasible(slot, min_start):
            return False
        for s in self.sources:
            if s <= min_start or self.blocked[s] or self.ball_dist[s] <= self.reach:
                continue
            self.tick()
            self.on_path[s] = True
            marks = self.grow_ball(s)
            path = [s]
            ok = (
                self.current_can_finish(s)
                and (slot + 1 >= self.k or self.future_feasible(slot + 1, s))
                and self.extend(slot, path, marks[1])
            )
            self.shrink_ball(marks)
            self.on_path[s] = False
            if ok:
                return True
        return False

    def extend(self, slot: int, path: list[int], member_mark: int) -> bool:
        self.tick()
        v = path[-1]
        if v in self.targets and self.commit(slot, path, member_mark):
            return True
        for u in self.adj[v]:
            if self.blocked[u] or self.on_path[u]:
                continue
            self.on_path[u] = True
            can_finish = self.current_can_finish(u)
            if not can_finish:
                self.on_path[u] = False
                self.tick()
                continue
            path.append(u)
            marks = self.grow_ball(u)
            ok = (
                slot + 1 >= self.k or self.future_feasible(slot + 1, path[0])
            ) and self.extend(slot, path, member_mark)
            self.shrink_ball(marks)
            path.pop()
            self.on_path[u] = False
            if ok:
                return True
        return False

    def commit(self, slot: int, path: list[int], member_mark: int) -> bool:
        # members[member_mark:] is exactly this path's radius-(d-1) ball,
        # minus whatever earlier committed balls already cover.
        fresh = self.members[member_mark:]
        for w in fresh:
            self.blocked[w] += 1
        self.found.append(list(path))
        ok = self.place(slot + 1, path[0])
        if not ok:
            self.found.pop()
        for w in fresh:
            self.blocked[w] -= 1
        return ok


def search_far_paths(
    g: Graph,
    sources: VertexSet,
    targets: VertexSet,
    k: int,
    d: int,
    budget: SearchBudget = SearchBudget(),
) -> FarPathsResult:
    """Complete backtracking search for k source-target paths pairwise at
    distance >= d.

    Paths are placed one at a time in ascending order of their start vertex;
    once a path is committed, the radius-(d-1) ball around it is forbidden to
    all later paths.  Extensions are tried in ascending neighbor order, and a
    branch is cut as soon as the current path can no longer reach a target or
    some future path provably cannot exist; both cuts preserve completeness.
    NoneExists is claimed only when the whole space was exhausted in budget.
    """
    if k < 1 or d < 1:
        raise OracleError("need k >= 1 and d >= 1")
    if k == 1:
        sp = shortest_path(g, sources, targets)
        return FoundPaths((sp,), 0) if sp is not None else NoneExists(0)
    search = _FarPathSearch(g, sources, targets, k, d, budget)
    try:
        if search.place(0, -1):
            paths = tuple(Path(tuple(p)) for p in search.found)
            verify_far_paths(g, sources, targets, paths, d)
            return FoundPaths(paths, search.nodes)
        return NoneExists(search.nodes)
    except _BudgetHit:
        return BudgetExhausted(search.nodes)


def verify_far_paths(
    g: Graph,
    sources: VertexSet,
    targets: VertexSet,
    paths: tuple[Path, ...],
    d: int,
) -> None:
    """Re-verify a Found result from definitions; raises OracleError if bad."""
    for p in paths:
        p.validate(g)
        if p.first not in sources or p.last not in targets:
            raise OracleError(f"path endpoints {p.first}, {p.last} not in S/T")
    for p, q in combinations(paths, 2):
        dist = set_distance(g, p, q)
        if dist < d:
            raise OracleError(f"paths at distance {dist} < {d}")


@dataclass(frozen=True)
class DichotomyReport:
    depth: int
    pairs_checked: int
    first_violation: tuple[Path, Path] | None

    @property
    def ok(self) -> bool:
        return self.first_violation is None


def check_gadget_dichotomy(depth: int, max_pairs: int = 50_000_000) -> DichotomyReport:
    """Check every disjoint end-to-end path pair of the bare gadget.

    For each ordered pair (P, Q) of vertex-disjoint paths between {s1, s2} and
    {t1, t2}: either some connecting path of length <= 2 avoids edges with an
    end on the bottom path, or one of P, Q is the tree path between s1 and t2.
    The predicate is orientation-symmetric, so unordered pairs are enumerated
    and the ordered count is reported.
    """
    gadget = build_tree_gadget(depth)
    g = gadget.graph
    bottom = gadget.bottom
    tree_set = gadget.tree_path().vertex_set
    t_ends = (gadget.t1, gadget.t2)

    # Closed radius-1 neighborhoods in the graph induced on non-bottom
    # vertices; a length <= 2 connection avoiding bottom-incident edges
    # exists between two paths iff their neighborhood masks intersect.
    inner_reach = [0] * g.vertex_count
    for v in g.vertices():
        if v in bottom:
            continue
        mask = 1 << v
        for u in g.neighbors(v):
            if u not in bottom:
                mask |= 1 << u
        inner_reach[v] = mask

    def reach_mask(path: tuple[int, ...]) -> int:
        mask = 0
        for v in path:
            mask |= inner_reach[v]
        return mask

    def end_to_end_paths(start: int, banned: frozenset[int]) -> Iterator[tuple[int, ...]]:
        if start in banned:
            return
        stack = [start]
        used = {start}

        def walk() -> Iterator[tuple[int, ...]]:
            v = stack[-1]
            if v in t_ends:
                yield tuple(stack)
            for u in g.neighbors(v):
                if u in used or u in banned:
                    continue
                stack.append(u)
                used.add(u)
                yield from walk()
                used.remove(u)
                stack.pop()

        yield from walk()

    pairs = 0
    for p in end_to_end_paths(gadget.s1, frozenset()):
        p_is_tree = frozenset(p) == tree_set
        p_mask = reach_mask(p)
        for q in end_to_end_paths(gadget.s2, frozenset(p)):
            pairs += 1
            if pairs > max_pairs:
                raise TooLargeError(f"pair enumeration exceeded {max_pairs} pairs")
            if p_is_tree or (p_mask & reach_mask(q)):
                continue
            return DichotomyReport(depth, 2 * pairs, (Path(p), Path(q)))
    return DichotomyReport(depth, 2 * pairs, None)
