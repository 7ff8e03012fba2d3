"""Instance zoo: deterministic generators for router stress tests and demos.

The rail builders construct long-backbone instances that drive the router
through its deep stages (component intervals, coverage certification, joints,
supercomponents, assembly); the simpler families exercise the early guards.
All generators are pure functions of their arguments, so fuzz suites are
reproducible from a seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .gadgets import build_counterexample
from .graph import Graph, VertexSet, build_graph, disjoint_union


@dataclass(frozen=True)
class Instance:
    name: str
    graph: Graph
    sources: VertexSet
    targets: VertexSet
    expect: str | None = None  # "center" | "two_far_paths" | "no_path" | None


def corridor(length: int) -> Instance:
    """A single path; the router must return a center at the source end."""
    edges = [(i, i + 1) for i in range(length - 1)]
    return Instance(
        f"corridor-{length}",
        build_graph(length, edges),
        frozenset({0}),
        frozenset({length - 1}),
        expect="center",
    )


def double_corridor(length_a: int, length_b: int) -> Instance:
    """Two disjoint paths; the second corridor is an escape at infinity."""
    edges = [(i, i + 1) for i in range(length_a - 1)]
    base = length_a
    edges += [(base + i, base + i + 1) for i in range(length_b - 1)]
    return Instance(
        f"double-corridor-{length_a}-{length_b}",
        build_graph(length_a + length_b, edges),
        frozenset({0, base}),
        frozenset({length_a - 1, base + length_b - 1}),
        expect="two_far_paths",
    )


def ring(circumference: int) -> Instance:
    """A cycle with sources and targets at alternating quarter points."""
    m = circumference
    if m % 4 or m < 8:
        raise ValueError("circumference must be a positive multiple of 4")
    edges = [(i, (i + 1) % m) for i in range(m)]
    return Instance(
        f"ring-{m}",
        build_graph(m, edges),
        frozenset({0, m // 2}),
        frozenset({m // 4, 3 * m // 4}),
    )


def detour_corridor(length: int, attach: int, tail: int) -> Instance:
    """A corridor plus a pendant source spur attached at ``attach``.

    With attach beyond the router radius the spur end escapes the
    first-vertex ball; a long spur (tail > attach) keeps the backbone the
    shortest path, steering short instances into the midpoint-ball stage.
    """
    if not 0 < attach < length:
        raise ValueError("attach must be an interior position")
    n = length
    edges = [(i, i + 1) for i in range(length - 1)]
    prev = attach
    for _ in range(tail):
        edges.append((prev, n))
        prev = n
        n += 1
    return Instance(
        f"detour-{length}-{attach}-{tail}",
        build_graph(n, edges),
        frozenset({0, prev}),
        frozenset({length - 1}),
    )


@dataclass(frozen=True)
class RailSpec:
    """A parallel corridor attached to the backbone by vertical rungs.

    ``rungs`` are backbone positions.  Rail segments between consecutive rung
    tops run 9 edges longer than the backbone span below them, so no route
    through a rail undercuts the backbone.  A marked end grows a long
    extension whose tip is a deep source/target that cannot shortcut either.
    """

    rungs: tuple[int, ...]
    source_end: bool = False
    target_end: bool = False
    rung_len: int = 8
    plain_ext: int = 4


def rails_instance(
    backbone_len: int,
    rails: tuple[RailSpec, ...],
    name: str = "rails",
    towers: tuple[tuple[int, int, int], ...] = (),
) -> Instance:
    """Backbone plus parallel rails; optional shared towers create joints.

    A tower (position, rail_i, rail_j) is a 7-step chain from the backbone
    whose top (a surface vertex) hooks into a fresh deep neighbor on each of
    the two named rails, touching both their components at once.
    """
    nb = backbone_len
    edges = [(i, i + 1) for i in range(nb - 1)]
    n = nb
    sources = {0}
    targets = {nb - 1}

    def fresh() -> int:
        nonlocal n
        n += 1
        return n - 1

    rail_tops: list[dict[int, int]] = []  # per rail: rung position -> top id
    rail_after_top: list[dict[int, int]] = []  # rung position -> spacer right of top
    for spec in rails:
        if sorted(set(spec.rungs)) != list(spec.rungs):
            raise ValueError("rung positions must be strictly increasing")
        if spec.rungs[0] - spec.rung_len <= 0 or spec.rungs[-1] >= nb:
            raise ValueError("rungs must sit inside the backbone")
        # Extension lengths: long enough that tip routes exceed the backbone.
        left_ext = spec.rungs[0] + 4 if spec.source_end else spec.plain_ext
        right_ext = (nb - 1 - spec.rungs[-1]) + 4 if spec.target_end else spec.plain_ext

        chain = [fresh() for _ in range(left_ext)]
        tops: dict[int, int] = {}
        for idx, pos in enumerate(spec.rungs):
            if idx:
                gap = pos - spec.rungs[idx - 1]
                chain.extend(fresh() for _ in range(gap + 8))
            top = fresh()
            chain.append(top)
            tops[pos] = top
        chain.extend(fresh() for _ in range(right_ext))
        edges.extend(zip(chain, chain[1:]))
        for pos, top in tops.items():
            prev = pos
            for _ in range(spec.rung_len - 1):
                mid = fresh()
                edges.append((prev, mid))
                prev = mid
            edges.append((prev, top))
        if spec.source_end:
            sources.add(chain[0])
        if spec.target_end:
            targets.add(chain[-1])
        rail_tops.append(tops)
        rail_after_top.append({pos: chain[chain.index(top) + 1] for pos, top in tops.items()})

    for pos, rail_i, rail_j in towers:
        # The tower top must sit at distance exactly 7 from the backbone and
        # the double hook must not undercut it: each hook lands next to the
        # rung top nearest the tower, and the rung feet involved stay within
        # the bridge length of each other.
        feet = []
        for rail in (rail_i, rail_j):
            q = min(rail_tops[rail], key=lambda r: abs(r - pos))
            if abs(q - pos) > 19:
                raise ValueError(f"tower at {pos} too far from rung {q} of rail {rail}")
            feet.append(q)
        if abs(feet[0] - feet[1]) > 22:
            raise ValueError("tower would shortcut the backbone between its rails")
        prev = pos
        for _ in range(7):
            mid = fresh()
            edges.append((prev, mid))
            prev = mid
        top = prev
        for rail, q in zip((rail_i, rail_j), feet):
            hook = fresh()
            edges.append((top, hook))
            edges.append((hook, rail_after_top[rail][q]))

    return Instance(name, build_graph(n, edges), frozenset(sources), frozenset(targets))


def twin_rails(backbone_len: int = 440) -> Instance:
    """Two overlapping rails whose intervals jointly cover the backbone."""
    nb = backbone_len
    a = RailSpec(rungs=(170, 230, 300, 370), source_end=True)
    b = RailSpec(rungs=(60, 130, 200, nb - 20), target_end=True)
    return rails_instance(nb, (a, b), name=f"twin-rails-{nb}")


def towered_rails(backbone_len: int = 440) -> Instance:
    """Twin rails plus a shared tower: a singleton joint merges them."""
    nb = backbone_len
    a = RailSpec(rungs=(170, 230, 300, 370), source_end=True)
    b = RailSpec(rungs=(60, 130, 222, nb - 20), target_end=True)
    return rails_instance(nb, (a, b), name=f"towered-rails-{nb}", towers=((226, 0, 1),))


def gapped_rails(backbone_len: int = 700) -> Instance:
    """Rails whose intervals leave an uncovered window, so coverage
    certification returns a midwindow center."""
    nb = backbone_len
    a = RailSpec(rungs=(170, 260), source_end=True)
    b = RailSpec(rungs=(nb - 200, nb - 30), target_end=True)
    return rails_instance(nb, (a, b), name=f"gapped-rails-{nb}")


def quad_rails(backbone_len: int = 2100) -> Instance:
    """Four staggered rails; exercises selection spacing with t >= 4."""
    nb = backbone_len
    specs = (
        RailSpec(rungs=(170, 400, 700), source_end=True),
        RailSpec(rungs=(330, 600, 1000)),
        RailSpec(rungs=(640, 900, 1300)),
        RailSpec(rungs=(940, 1500, nb - 30), target_end=True),
    )
    return rails_instance(nb, specs, name=f"quad-rails-{nb}")


def grid(width: int, height: int) -> Instance:
    """Width x height grid, left column to right column."""

    def vid(x: int, y: int) -> int:
        return y * width + x

    edges = []
    for y in range(height):
        for x in range(width):
            if x + 1 < width:
                edges.append((vid(x, y), vid(x + 1, y)))
            if y + 1 < height:
                edges.append((vid(x, y), vid(x, y + 1)))
    return Instance(
        f"grid-{width}x{height}",
        build_graph(width * height, edges),
        frozenset(vid(0, y) for y in range(height)),
        frozenset(vid(width - 1, y) for y in range(height)),
    )


def random_sparse(n: int, extra_edges: int, seed: int) -> Instance:
    """A random tree plus extra chords; endpoints are random samples."""
    rng = random.Random(seed)
    edges = set()
    for v in range(1, n):
        edges.add((rng.randrange(v), v))
    while len(edges) < min(n - 1 + extra_edges, n * (n - 1) // 2):
        u, v = rng.sample(range(n), 2)
        edges.add((min(u, v), max(u, v)))
    k = max(1, n // 100 + 2)
    sources = frozenset(rng.sample(range(n), rng.randint(1, k)))
    targets = frozenset(rng.sample(range(n), rng.randint(1, k)))
    return Instance(
        f"sparse-{n}-{extra_edges}-seed{seed}",
        build_graph(n, sorted(edges)),
        sources,
        targets,
    )


def random_forest(n: int, parts: int, seed: int) -> Instance:
    """A forest of ``parts`` random trees; disconnection is common."""
    rng = random.Random(seed)
    sizes = [n // parts] * parts
    sizes[0] += n - sum(sizes)
    graphs = []
    for size in sizes:
        edges = [(rng.randrange(v), v) for v in range(1, size)]
        graphs.append(build_graph(size, edges))
    g = disjoint_union(*graphs)
    sources = frozenset(rng.sample(range(n), rng.randint(1, 3)))
    targets = frozenset(rng.sample(range(n), rng.randint(1, 3)))
    return Instance(f"forest-{n}-{parts}-seed{seed}", g, sources, targets)


def counterexample_instance(ell: int) -> Instance:
    cx = build_counterexample(ell)
    return Instance(f"counterexample-ell{ell}", cx.graph, cx.sources, cx.targets)


def fuzz_instances(count: int, seed: int) -> list[Instance]:
    """A deterministic mixed bag of at least ``count`` instances."""
    rng = random.Random(seed)
    out: list[Instance] = [
        corridor(1000),
        double_corridor(401, 455),
        counterexample_instance(1),
        twin_rails(),
        towered_rails(),
        gapped_rails(),
        quad_rails(),
        ring(1200),
        ring(1400),
        grid(40, 11),
        detour_corridor(290, 200, 205),
    ]
    while len(out) < count:
        kind = rng.randrange(10)
        if kind <= 3:
            n = rng.randint(10, 3000)
            out.append(random_sparse(n, rng.randint(0, n // 2), rng.randrange(1 << 30)))
        elif kind <= 5:
            out.append(random_forest(rng.randint(10, 400), rng.randint(2, 5), rng.randrange(1 << 30)))
        elif kind == 6:
            out.append(corridor(rng.randint(2, 1200)))
        elif kind == 7:
            out.append(double_corridor(rng.randint(170, 700), rng.randint(170, 700)))
        elif kind == 8:
            out.append(ring(4 * rng.randint(2, 400)))
        else:
            length = rng.randint(230, 302)
            attach = rng.randint(165, length - 20)
            tail = attach + 5 if rng.random() < 0.5 else rng.randint(1, 8)
            out.append(detour_corridor(length, attach, tail))
    return out
