"""The constructive two-outcome router.

Given a graph and source/target sets, ``solve`` returns either two
source-target paths at pairwise distance >= 3 or a single vertex whose
radius-(8*ell + c + 2) ball meets every source-target path (161 with the
default c=7, ell=19).  Every "there must be a path avoiding this ball" step
of the underlying argument is an explicit reachability check whose failure
yields a verified center, which makes the procedure total.

The pipeline is deterministic: all path choices use lexicographic shortest
paths and all vertex choices take the least id.  With ``self_verify`` on
(the default), every intermediate object is checked against its contract and
a failure raises InternalInvariantViolation; the final outcome is re-verified
unconditionally either way.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .graph import (
    INF,
    Graph,
    Path,
    VertexSet,
    _bfs_distances,
    components_excluding,
    power,
    set_distance,
    shortest_path,
)
from .intervals import Interval, IntervalFamily, spaced_select
from .oracle import Separates, is_ball_separator


class SolverError(ValueError):
    pass


class InternalInvariantViolation(RuntimeError):
    """A fact the routing argument guarantees failed at runtime.

    This never signals bad input; it signals a bug in the implementation.
    """

    def __init__(self, stage: str, detail: str):
        super().__init__(f"[{stage}] {detail}")
        self.stage = stage
        self.detail = detail


class EnumerationBudgetError(RuntimeError):
    """Joint enumeration outgrew its budget; rerun on a smaller instance or
    raise SolverConfig.joint_budget."""


class VerificationFailedError(RuntimeError):
    """The general-distance wrapper could not verify its lifted outcome."""


@dataclass(frozen=True)
class SolverConfig:
    c: int = 7
    ell: int = 19
    self_verify: bool = True
    joint_budget: int = 2_000_000

    def __post_init__(self):
        if self.c < 7:
            raise SolverError(f"config needs c >= 7, got {self.c}")
        if self.ell < 2 * self.c + 5:
            raise SolverError(f"config needs ell >= 2c+5 = {2 * self.c + 5}, got {self.ell}")

    @property
    def radius(self) -> int:
        return 8 * self.ell + self.c + 2


@dataclass(frozen=True)
class TwoFarPaths:
    first: Path
    second: Path
    distance: float


@dataclass(frozen=True)
class Center:
    vertex: int
    radius: int


@dataclass(frozen=True)
class NoPath:
    pass


SolverOutcome = TwoFarPaths | Center | NoPath


@dataclass(frozen=True, eq=False)
class Frame:
    """The backbone coordinate system.

    The backbone holds vertices r_1..r_{n-1} of a minimum-length source-target
    path, so n = edge count + 2.  For a vertex v, a[v]/b[v] are the least and
    greatest backbone indices reachable at distance exactly d(v, backbone),
    with sentinel 0 for deep sources and n for deep targets ("deep" meaning
    d(v, backbone) >= c + 4, including vertices in other components).  Both
    are None for unreachable vertices with no sentinel role.
    """

    backbone: Path
    n: int
    dist: tuple[float, ...]
    a: tuple[int | None, ...]
    b: tuple[int | None, ...]
    within_c: frozenset[int]
    surface: frozenset[int]

    def backbone_vertex(self, index: int) -> int:
        """The vertex r_index, 1-based."""
        return self.backbone.vertices[index - 1]


@dataclass(frozen=True)
class ComponentInfo:
    vertices: VertexSet
    boundary: VertexSet
    interval: Interval | None


@dataclass(frozen=True)
class Supercomponent:
    vertices: VertexSet
    interval: Interval


@dataclass(frozen=True)
class PathPieces:
    """Per selected supercomponent: the access paths and the inner connector.

    access_in[i] runs from the backbone to supercomponent i (a single deep
    source vertex for i = 0); access_out[i] runs from supercomponent i back to
    the backbone (a single deep target vertex for the last i).  connector[i]
    joins their supercomponent ends inside the supercomponent.
    """

    access_in: tuple[Path, ...]
    access_out: tuple[Path, ...]
    connector: tuple[Path, ...]
    backbone_segments_odd: tuple[Path, ...]
    backbone_segments_even: tuple[Path, ...]


@dataclass
class SolverTrace:
    frame: Frame | None = None
    components: list[ComponentInfo] = field(default_factory=list)
    selected_components: list[ComponentInfo] = field(default_factory=list)
    joints_union: VertexSet = frozenset()
    supercomponents: list[Supercomponent] = field(default_factory=list)
    selected_supercomponents: list[Supercomponent] = field(default_factory=list)
    pieces: PathPieces | None = None
    decisions: list[str] = field(default_factory=list)

    def log(self, message: str) -> None:
        self.decisions.append(message)

    def to_dict(self) -> dict:
        def num(x):
            return None if x is None or x == INF else x

        out: dict = {"decisions": list(self.decisions)}
        if self.frame is not None:
            f = self.frame
            out["frame"] = {
                "backbone": list(f.backbone.vertices),
                "n": f.n,
                "dist": [num(x) for x in f.dist],
                "a": [num(x) for x in f.a],
                "b": [num(x) for x in f.b],
                "within_c": sorted(f.within_c),
                "surface": sorted(f.surface),
            }
        out["components"] = [
            {
                "vertices": sorted(c.vertices),
                "boundary": sorted(c.boundary),
                "interval": [c.interval.a, c.interval.b] if c.interval else None,
            }
            for c in self.components
        ]
        out["selected_components"] = [
            [c.interval.a, c.interval.b] for c in self.selected_components if c.interval
        ]
        out["joints_union"] = sorted(self.joints_union)
        out["supercomponents"] = [
            {"vertices": sorted(s.vertices), "interval": [s.interval.a, s.interval.b]}
            for s in self.supercomponents
        ]
        out["selected_supercomponents"] = [
            [s.interval.a, s.interval.b] for s in self.selected_supercomponents
        ]
        if self.pieces is not None:
            out["pieces"] = {
                "access_in": [list(p.vertices) for p in self.pieces.access_in],
                "access_out": [list(p.vertices) for p in self.pieces.access_out],
                "connector": [list(p.vertices) for p in self.pieces.connector],
                "backbone_segments_odd": [
                    list(p.vertices) for p in self.pieces.backbone_segments_odd
                ],
                "backbone_segments_even": [
                    list(p.vertices) for p in self.pieces.backbone_segments_even
                ],
            }
        return out


# ---------------------------------------------------------------------------
# frame


def _build_frame(g: Graph, backbone: Path, sources: VertexSet, targets: VertexSet, cfg: SolverConfig) -> Frame:
    n = len(backbone.vertices) + 1
    dist = _bfs_distances(g, backbone.vertices)
    least: list[int | None] = [None] * g.vertex_count
    greatest: list[int | None] = [None] * g.vertex_count
    for index, v in enumerate(backbone.vertices, start=1):
        least[v] = greatest[v] = index

    buckets: dict[int, list[int]] = {}
    for v in g.vertices():
        if 0 < dist[v] < INF:
            buckets.setdefault(int(dist[v]), []).append(v)
    for layer in sorted(buckets):
        for v in buckets[layer]:
            lo, hi = None, None
            for u in g.adjacency[v]:
                if dist[u] == layer - 1:
                    lu, gu = least[u], greatest[u]
                    if lo is None or lu < lo:
                        lo = lu
                    if hi is None or gu > hi:
                        hi = gu
            least[v], greatest[v] = lo, hi

    deep = cfg.c + 4
    a = list(least)
    b = list(greatest)
    for v in sources:
        if dist[v] >= deep:
            a[v] = 0
    for v in targets:
        if dist[v] >= deep:
            b[v] = n

    within_c = frozenset(v for v in g.vertices() if dist[v] <= cfg.c)
    surface = frozenset(v for v in g.vertices() if dist[v] == cfg.c)
    return Frame(backbone, n, tuple(dist), tuple(a), tuple(b), within_c, surface)


def _check_frame(frame: Frame, cfg: SolverConfig) -> None:
    for w in frame.within_c:
        # Vertices within c of the backbone are never sentinel cases, so both
        # indices are plain landing indices here.
        aw, bw = frame.a[w], frame.b[w]
        if aw is None or bw is None:
            raise InternalInvariantViolation("frame", f"vertex {w} near backbone lacks indices")
        if not 0 <= bw - aw <= 2 * frame.dist[w] <= 2 * cfg.c:
            raise InternalInvariantViolation(
                "frame",
                f"vertex {w}: b-a={bw - aw}, dist={frame.dist[w]}, c={cfg.c}",
            )
    for v in range(len(frame.a)):
        av, bv = frame.a[v], frame.b[v]
        if av is not None and bv is not None and av > bv:
            raise InternalInvariantViolation("frame", f"vertex {v}: a={av} > b={bv}")


# ---------------------------------------------------------------------------
# guard stages


def _guard_backbone_start(
    g: Graph, sources: VertexSet, targets: VertexSet, frame: Frame, cfg: SolverConfig, trace: SolverTrace
) -> SolverOutcome | None:
    start = frame.backbone.first
    result = is_ball_separator(g, sources, targets, frozenset({start}), cfg.radius)
    if isinstance(result, Separates):
        trace.log(f"ball around backbone start r_1={start} separates -> center")
        return Center(start, cfg.radius)
    witness = result.witness
    gap = set_distance(g, witness, frame.backbone)
    if gap >= 3:
        trace.log(f"escape path misses the backbone by {gap} -> two far paths")
        return TwoFarPaths(frame.backbone, witness, gap)
    if frame.n - 2 < 8 * cfg.ell + cfg.c + 1:
        raise InternalInvariantViolation(
            "guard_start",
            f"escape hugging the backbone forces n-2 >= {8 * cfg.ell + cfg.c + 1}, got {frame.n - 2}",
        )
    trace.log(f"escape path hugs the backbone (gap {gap}); n={frame.n}")
    return None


def _guard_short_backbone(
    g: Graph, sources: VertexSet, targets: VertexSet, frame: Frame, cfg: SolverConfig, trace: SolverTrace
) -> SolverOutcome:
    """Total two-way resolution for 8*ell+c+3 <= n < 16*ell.

    The midpoint ball either separates, or the escape path stays
    radius - (n-2)/2 >= c+3 away from the whole backbone.
    """
    mid = frame.n // 2
    center = frame.backbone_vertex(mid)
    result = is_ball_separator(g, sources, targets, frozenset({center}), cfg.radius)
    if isinstance(result, Separates):
        trace.log(f"short backbone: midpoint ball at r_{mid}={center} separates")
        return Center(center, cfg.radius)
    witness = result.witness
    gap = set_distance(g, witness, frame.backbone)
    if gap < 3:
        raise InternalInvariantViolation(
            "guard_short",
            f"midpoint escape should clear the backbone by >= 3, got {gap}",
        )
    trace.log(f"short backbone: escape clears by {gap} -> two far paths")
    return TwoFarPaths(frame.backbone, witness, gap)


# ---------------------------------------------------------------------------
# components and coverage


def _component_intervals(g: Graph, frame: Frame, trace: SolverTrace) -> list[ComponentInfo]:
    infos: list[ComponentInfo] = []
    for comp in components_excluding(g, frame.within_c):
        lows = [frame.a[v] for v in comp.vertices if frame.a[v] is not None]
        highs = [frame.b[v] for v in comp.vertices if frame.b[v] is not None]
        interval = Interval(min(lows), max(highs)) if lows and highs else None
        infos.append(ComponentInfo(comp.vertices, comp.boundary, interval))
    trace.components = infos
    return infos


def _check_components(frame: Frame, comps: list[ComponentInfo]) -> None:
    for info in comps:
        if not info.boundary <= frame.surface:
            raise InternalInvariantViolation(
                "components", f"boundary {sorted(info.boundary - frame.surface)} off the surface"
            )
        if info.interval is not None and not 0 <= info.interval.a <= info.interval.b <= frame.n:
            raise InternalInvariantViolation("components", f"bad interval {info.interval}")


def _first_uncovered(intervals: list[Interval], span: int, n: int) -> int | None:
    ordered = sorted(intervals, key=lambda iv: iv.a)
    reach = -1
    idx = 0
    for h in range(0, n - span + 1):
        while idx < len(ordered) and ordered[idx].a <= h:
            reach = max(reach, ordered[idx].b)
            idx += 1
        if reach < h + span:
            return h
    return None


def _cover_or_center(
    g: Graph,
    sources: VertexSet,
    targets: VertexSet,
    frame: Frame,
    comps: list[ComponentInfo],
    cfg: SolverConfig,
    trace: SolverTrace,
) -> Center | None:
    """Certify the component intervals cover every 16*ell window, or return a
    verified center at the first gap."""
    span = 16 * cfg.ell
    intervals = [c.interval for c in comps if c.interval is not None]
    gap_at = _first_uncovered(intervals, span, frame.n)
    if gap_at is None:
        trace.log(f"component intervals are {span}-powerful ({len(intervals)} intervals)")
        return None
    mid = gap_at + 8 * cfg.ell
    center = frame.backbone_vertex(mid)
    result = is_ball_separator(g, sources, targets, frozenset({center}), cfg.radius)
    if isinstance(result, Separates):
        trace.log(f"coverage gap at offset {gap_at}: ball at r_{mid}={center} separates")
        return Center(center, cfg.radius)
    raise InternalInvariantViolation(
        "cover",
        f"window ({gap_at}, {gap_at + span}) uncovered yet an escape path exists "
        f"around r_{mid}; a component interval must capture it",
    )


def _select_components(
    comps: list[ComponentInfo], frame: Frame, cfg: SolverConfig, trace: SolverTrace
) -> list[ComponentInfo]:
    by_interval: dict[Interval, ComponentInfo] = {}
    for info in comps:
        if info.interval is not None and info.interval not in by_interval:
            by_interval[info.interval] = info
    fam = IntervalFamily(tuple(sorted(by_interval)), frame.n)
    chosen = spaced_select(fam, 4 * cfg.ell)
    selected = [by_interval[iv] for iv in chosen]
    gap = 4 * cfg.ell
    a, b = chosen.endpoints()
    for i in range(3, len(a)):
        if a[i] - b[i - 3] < gap:
            raise InternalInvariantViolation(
                "select_components",
                f"a_{i + 1} - b_{i - 2} = {a[i] - b[i - 3]} < {gap}",
            )
    trace.selected_components = selected
    trace.log(f"selected {len(selected)} deep components: {[(iv.a, iv.b) for iv in chosen]}")
    return selected


# ---------------------------------------------------------------------------
# joints and supercomponents


def _joints_union(
    g: Graph, frame: Frame, selected: list[ComponentInfo], cfg: SolverConfig, trace: SolverTrace
) -> VertexSet:
    """Union of all joints: small connected sets near the surface that touch
    the boundaries of two (size <= 3) or three (size <= 8) selected components.
    """
    if len(selected) < 2 or not frame.surface:
        trace.log("no joints possible")
        return frozenset()
    dist_surface = _bfs_distances(g, frame.surface)
    within = frame.within_c
    pool = frozenset(
        v for v in g.vertices() if v not in within or dist_surface[v] <= 3
    )
    touch_mask: dict[int, int] = {}
    for i, info in enumerate(selected):
        for w in info.boundary:
            touch_mask[w] = touch_mask.get(w, 0) | (1 << i)
    anchors = sorted(touch_mask)

    # Every joint meets some selected boundary, so its vertices sit within 7
    # pool-steps of an anchor.
    near: set[int] = set(anchors)
    frontier = list(anchors)
    for _ in range(7):
        nxt = []
        for u in frontier:
            for w in g.adjacency[u]:
                if w in pool and w not in near:
                    near.add(w)
                    nxt.append(w)
        frontier = nxt

    joints: set[int] = set()
    emitted = 0

    def consider(members: list[int]) -> None:
        mask = 0
        for v in members:
            mask |= touch_mask.get(v, 0)
        touched = mask.bit_count()
        if touched < 2 or (touched == 2 and len(members) > 3):
            return
        half = len(members) - 1
        for v in members:
            if v in within and 2 * dist_surface[v] > half:
                return
        joints.update(members)

    def enumerate_from(anchor: int, allowed: set[int]) -> None:
        # Extension-list enumeration: branching on candidate u explores all
        # sets whose first candidate taken at this level is u, and u is banned
        # for the later sibling branches, so every connected superset of
        # {anchor} inside allowed is emitted exactly once.
        def extend(members: list[int], ext: list[int], banned: frozenset[int]) -> None:
            nonlocal emitted
            emitted += 1
            if emitted > cfg.joint_budget:
                raise EnumerationBudgetError(
                    f"joint enumeration exceeded {cfg.joint_budget} sets"
                )
            consider(members)
            if len(members) == 8:
                return
            member_set = set(members)
            for idx, u in enumerate(ext):
                branch_banned = banned | frozenset(ext[:idx])
                rest = ext[idx + 1 :]
                rest_set = set(rest)
                fresh = sorted(
                    w
                    for w in g.adjacency[u]
                    if w in allowed
                    and w not in member_set
                    and w not in branch_banned
                    and w not in rest_set
                )
                members.append(u)
                extend(members, rest + fresh, branch_banned)
                members.pop()

        extend([anchor], sorted(u for u in g.adjacency[anchor] if u in allowed), frozenset())

    for anchor in anchors:
        allowed = {v for v in near if v not in touch_mask or v >= anchor}
        allowed.discard(anchor)
        enumerate_from(anchor, allowed)

    trace.joints_union = frozenset(joints)
    trace.log(f"joints union has {len(joints)} vertices ({emitted} sets enumerated)")
    return frozenset(joints)


def _build_supercomponents(
    g: Graph,
    frame: Frame,
    selected: list[ComponentInfo],
    joints: VertexSet,
    cfg: SolverConfig,
    trace: SolverTrace,
) -> list[Supercomponent]:
    deep_union: set[int] = set()
    for info in selected:
        deep_union.update(info.vertices)
    region = frozenset(deep_union) | joints
    seen: set[int] = set()
    supers: list[Supercomponent] = []
    for start in sorted(region):
        if start in seen:
            continue
        queue = deque([start])
        seen.add(start)
        members: list[int] = []
        while queue:
            u = queue.popleft()
            members.append(u)
            for w in g.adjacency[u]:
                if w in region and w not in seen:
                    seen.add(w)
                    queue.append(w)
        lows = [frame.a[v] for v in members if frame.a[v] is not None]
        highs = [frame.b[v] for v in members if frame.b[v] is not None]
        if not lows or not highs:
            raise InternalInvariantViolation(
                "supercomponents", f"supercomponent at {start} has no interval data"
            )
        supers.append(Supercomponent(frozenset(members), Interval(min(lows), max(highs))))

    for info in selected:
        hosts = [s for s in supers if info.vertices <= s.vertices]
        if len(hosts) != 1:
            raise InternalInvariantViolation(
                "supercomponents", "every selected component lies in exactly one supercomponent"
            )
        if info.interval is not None and not hosts[0].interval.captures(info.interval):
            raise InternalInvariantViolation(
                "supercomponents",
                f"interval {hosts[0].interval} fails to capture {info.interval}",
            )
    fam = IntervalFamily(tuple(sorted({s.interval for s in supers})), frame.n)
    gap = _first_uncovered(list(fam.items), 4 * cfg.ell, frame.n)
    if gap is not None:
        raise InternalInvariantViolation(
            "supercomponents", f"interval family misses window at {gap}"
        )
    trace.supercomponents = supers
    trace.log(f"{len(supers)} supercomponents")
    return supers


def _select_supercomponents(
    supers: list[Supercomponent], frame: Frame, cfg: SolverConfig, trace: SolverTrace
) -> list[Supercomponent]:
    by_interval: dict[Interval, Supercomponent] = {}
    for s in supers:
        if s.interval not in by_interval:
            by_interval[s.interval] = s
    fam = IntervalFamily(tuple(sorted(by_interval)), frame.n)
    chosen = spaced_select(fam, cfg.ell)
    selected = [by_interval[iv] for iv in chosen]
    trace.selected_supercomponents = selected
    trace.log(
        f"selected {len(selected)} supercomponents: {[(s.interval.a, s.interval.b) for s in selected]}"
    )
    return selected


# ---------------------------------------------------------------------------
# assembly


def _restricted_path(g: Graph, allowed: VertexSet, start: int, end: int) -> Path | None:
    forbidden = frozenset(v for v in g.vertices() if v not in allowed)
    return shortest_path(g, (start,), (end,), forbidden=forbidden)


def _assemble_two_paths(
    g: Graph,
    sources: VertexSet,
    targets: VertexSet,
    frame: Frame,
    chosen: list[Supercomponent],
    cfg: SolverConfig,
    trace: SolverTrace,
) -> TwoFarPaths:
    s = len(chosen)
    n = frame.n
    lows = [sc.interval.a for sc in chosen]
    highs = [sc.interval.b for sc in chosen]

    deep_sources = [v for v in chosen[0].vertices if frame.a[v] == 0]
    if not deep_sources:
        raise InternalInvariantViolation("assemble", "first supercomponent has no deep source")
    access_in: list[Path] = [Path((min(deep_sources),))]
    for i in range(1, s):
        anchor = frame.backbone_vertex(lows[i])
        p = shortest_path(g, (anchor,), chosen[i].vertices)
        if p is None:
            raise InternalInvariantViolation("assemble", f"no access into supercomponent {i}")
        access_in.append(p)

    deep_targets = [v for v in chosen[-1].vertices if frame.b[v] == n and v in targets]
    if not deep_targets:
        raise InternalInvariantViolation("assemble", "last supercomponent has no deep target")
    access_out: list[Path] = []
    for i in range(0, s - 1):
        anchor = frame.backbone_vertex(highs[i])
        p = shortest_path(g, (anchor,), chosen[i].vertices)
        if p is None:
            raise InternalInvariantViolation("assemble", f"no access out of supercomponent {i}")
        access_out.append(p.reverse())
    access_out.append(Path((min(deep_targets),)))

    if cfg.self_verify:
        for i, p in enumerate(access_in[1:], start=1):
            if p.length > cfg.c + 1:
                raise InternalInvariantViolation(
                    "assemble", f"access path into {i} has length {p.length} > c+1"
                )
        for i, p in enumerate(access_out[:-1]):
            if p.length > cfg.c + 1:
                raise InternalInvariantViolation(
                    "assemble", f"access path out of {i} has length {p.length} > c+1"
                )

    connector: list[Path] = []
    for i in range(s):
        inner_start = access_in[i].last if i > 0 else access_in[i].first
        inner_end = access_out[i].first if i < s - 1 else access_out[i].last
        q = _restricted_path(g, chosen[i].vertices, inner_start, inner_end)
        if q is None:
            raise InternalInvariantViolation(
                "assemble", f"supercomponent {i} cannot connect its access ends"
            )
        connector.append(q)

    def backbone_segment(i: int, j: int) -> Path:
        lo, hi = min(i, j), max(i, j)
        return Path(frame.backbone.vertices[lo - 1 : hi])

    # 1-based piece indices with sentinel anchors just inside the backbone.
    low_at = {i: lows[i - 1] for i in range(1, s + 1)}
    high_at = {i: highs[i - 1] for i in range(1, s + 1)}
    low_at[s + 1] = n - 1
    high_at[0] = 1

    segments_odd = [
        backbone_segment(high_at[i], low_at[i + 2]) for i in range(1, s, 2)
    ]
    segments_even = [
        backbone_segment(high_at[i], low_at[i + 2]) for i in range(0, s, 2)
    ]
    trace.pieces = PathPieces(
        tuple(access_in), tuple(access_out), tuple(connector),
        tuple(segments_odd), tuple(segments_even),
    )

    def union_vertices(parity: int) -> set[int]:
        out: set[int] = set()
        for i in range(1, s + 1):
            if i % 2 == parity:
                out.update(access_in[i - 1].vertices)
                out.update(connector[i - 1].vertices)
                out.update(access_out[i - 1].vertices)
        segments = segments_odd if parity == 1 else segments_even
        for seg in segments:
            out.update(seg.vertices)
        return out

    extracted: list[Path] = []
    for parity in (1, 0):
        union = union_vertices(parity)
        forbidden = frozenset(v for v in g.vertices() if v not in union)
        p = shortest_path(g, sources & union, targets & union, forbidden=forbidden)
        if p is None:
            raise InternalInvariantViolation(
                "assemble", f"parity-{parity} union contains no source-target path"
            )
        extracted.append(p)

    gap = set_distance(g, extracted[0], extracted[1])
    if gap < 3:
        raise InternalInvariantViolation(
            "assemble", f"assembled paths are only {gap} apart"
        )
    trace.log(f"assembled two paths at distance {gap}")
    return TwoFarPaths(extracted[0], extracted[1], gap)


# ---------------------------------------------------------------------------
# trace-level claim checks


def _check_claims(
    g: Graph,
    frame: Frame,
    selected: list[ComponentInfo],
    supers: list[Supercomponent],
    chosen: list[Supercomponent],
    pieces: PathPieces,
    cfg: SolverConfig,
) -> None:
    floor = 4 * cfg.ell - 2 * cfg.c + 2
    for i in range(len(selected)):
        for j in range(i + 3, len(selected)):
            d = set_distance(g, selected[i].vertices, selected[j].vertices)
            if d < floor:
                raise InternalInvariantViolation(
                    "claims", f"components {i},{j} at distance {d} < {floor}"
                )
    for i in range(len(supers)):
        for j in range(i + 1, len(supers)):
            d = set_distance(g, supers[i].vertices, supers[j].vertices)
            if d < 5:
                raise InternalInvariantViolation(
                    "claims", f"supercomponents {i},{j} at distance {d} < 5"
                )
    owners = list(range(len(chosen)))
    for kind, access in (("in", pieces.access_in), ("out", pieces.access_out)):
        for i in owners:
            path = access[i]
            if path.length == 0:
                continue
            for j, other in enumerate(chosen):
                if j == i:
                    continue
                d = set_distance(g, other.vertices, path)
                if d < 3:
                    raise InternalInvariantViolation(
                        "claims",
                        f"access-{kind} path of {i} within {d} of supercomponent {j}",
                    )


# ---------------------------------------------------------------------------
# driver


def _verify_outcome(
    g: Graph,
    sources: VertexSet,
    targets: VertexSet,
    outcome: SolverOutcome,
    min_gap: int,
    radius: int | None,
) -> None:
    if isinstance(outcome, NoPath):
        if shortest_path(g, sources, targets) is not None:
            raise InternalInvariantViolation("verify", "NoPath returned on a connected instance")
        return
    if isinstance(outcome, Center):
        if radius is not None and outcome.radius != radius:
            raise InternalInvariantViolation(
                "verify", f"center radius {outcome.radius} != required {radius}"
            )
        if not isinstance(
            is_ball_separator(g, sources, targets, frozenset({outcome.vertex}), outcome.radius),
            Separates,
        ):
            raise InternalInvariantViolation("verify", "claimed center fails to separate")
        return
    outcome.first.validate(g)
    outcome.second.validate(g)
    for p in (outcome.first, outcome.second):
        if p.first not in sources or p.last not in targets:
            raise InternalInvariantViolation("verify", "path endpoints left S/T")
    gap = set_distance(g, outcome.first, outcome.second)
    if gap < min_gap or gap != outcome.distance:
        raise InternalInvariantViolation(
            "verify", f"paths at distance {gap}, reported {outcome.distance}, need >= {min_gap}"
        )


def _validated_sets(g: Graph, sources: Iterable[int], targets: Iterable[int]) -> tuple[VertexSet, VertexSet]:
    s, t = frozenset(sources), frozenset(targets)
    for v in s | t:
        if not 0 <= v < g.vertex_count:
            raise SolverError(f"endpoint vertex {v} outside graph")
    return s, t


def solve(
    g: Graph,
    sources: Iterable[int],
    targets: Iterable[int],
    config: SolverConfig | None = None,
) -> tuple[SolverOutcome, SolverTrace]:
    """Two far paths, or a verified ball-separator center of radius 161.

    Returns exactly one of TwoFarPaths (source-target paths at distance >= 3),
    Center (every source-target path meets the radius ball around it), or
    NoPath.  The outcome is re-verified before returning regardless of
    config.self_verify; self_verify additionally checks every intermediate
    stage contract.
    """
    cfg = config or SolverConfig()
    srcs, tgts = _validated_sets(g, sources, targets)
    trace = SolverTrace()

    def finish(outcome: SolverOutcome) -> tuple[SolverOutcome, SolverTrace]:
        _verify_outcome(g, srcs, tgts, outcome, 3, cfg.radius)
        return outcome, trace

    if not srcs or not tgts:
        trace.log("empty endpoint set")
        return finish(NoPath())
    backbone = shortest_path(g, srcs, tgts)
    if backbone is None:
        trace.log("sources and targets are disconnected")
        return finish(NoPath())
    frame = _build_frame(g, backbone, srcs, tgts, cfg)
    trace.frame = frame
    trace.log(f"backbone has {len(backbone.vertices)} vertices (n={frame.n})")
    if cfg.self_verify:
        _check_frame(frame, cfg)

    early = _guard_backbone_start(g, srcs, tgts, frame, cfg, trace)
    if early is not None:
        return finish(early)

    if frame.n < 16 * cfg.ell:
        return finish(_guard_short_backbone(g, srcs, tgts, frame, cfg, trace))

    comps = _component_intervals(g, frame, trace)
    if cfg.self_verify:
        _check_components(frame, comps)
    center = _cover_or_center(g, srcs, tgts, frame, comps, cfg, trace)
    if center is not None:
        return finish(center)

    selected = _select_components(comps, frame, cfg, trace)
    joints = _joints_union(g, frame, selected, cfg, trace)
    supers = _build_supercomponents(g, frame, selected, joints, cfg, trace)
    chosen = _select_supercomponents(supers, frame, cfg, trace)
    outcome = _assemble_two_paths(g, srcs, tgts, frame, chosen, cfg, trace)
    if cfg.self_verify:
        _check_claims(g, frame, selected, supers, chosen, trace.pieces, cfg)
    return finish(outcome)


# ---------------------------------------------------------------------------
# general distance via graph powers


def _simplify_walk(walk: list[int]) -> tuple[int, ...]:
    position: dict[int, int] = {}
    simple: list[int] = []
    for v in walk:
        if v in position:
            for u in simple[position[v] + 1 :]:
                del position[u]
            del simple[position[v] + 1 :]
        else:
            position[v] = len(simple)
            simple.append(v)
    return tuple(simple)


def _expand_power_path(g: Graph, p: Path) -> Path:
    walk = [p.first]
    for u, v in zip(p.vertices, p.vertices[1:]):
        hop = shortest_path(g, (u,), (v,))
        if hop is None:
            raise VerificationFailedError(f"power edge ({u}, {v}) has no underlying path")
        walk.extend(hop.vertices[1:])
    return Path(_simplify_walk(walk))


def solve_at_distance(
    g: Graph,
    sources: Iterable[int],
    targets: Iterable[int],
    d: int,
    config: SolverConfig | None = None,
) -> tuple[SolverOutcome, SolverTrace]:
    """Two paths at pairwise distance >= d, or a center of radius d*(8*ell+c+2).

    Runs the distance-3 router on the d-th power graph and lifts the outcome
    back, re-verifying it in the original graph; a lift that fails to verify
    raises VerificationFailedError rather than returning silently.
    """
    if d < 3:
        raise SolverError("solve_at_distance needs d >= 3")
    cfg = config or SolverConfig()
    srcs, tgts = _validated_sets(g, sources, targets)
    powered = power(g, d)
    outcome, trace = solve(powered, srcs, tgts, cfg)
    if isinstance(outcome, NoPath):
        return outcome, trace
    if isinstance(outcome, Center):
        lifted = Center(outcome.vertex, d * cfg.radius)
        if not isinstance(
            is_ball_separator(g, srcs, tgts, frozenset({lifted.vertex}), lifted.radius),
            Separates,
        ):
            raise VerificationFailedError("lifted center fails to separate in the base graph")
        return lifted, trace
    first = _expand_power_path(g, outcome.first)
    second = _expand_power_path(g, outcome.second)
    try:
        first.validate(g)
        second.validate(g)
    except Exception as exc:
        raise VerificationFailedError(f"expanded path invalid: {exc}") from exc
    if first.first not in srcs or first.last not in tgts:
        raise VerificationFailedError("expanded path endpoints left S/T")
    if second.first not in srcs or second.last not in tgts:
        raise VerificationFailedError("expanded path endpoints left S/T")
    gap = set_distance(g, first, second)
    if gap < d:
        raise VerificationFailedError(f"expanded paths at distance {gap} < {d}")
    return TwoFarPaths(first, second, gap), trace
