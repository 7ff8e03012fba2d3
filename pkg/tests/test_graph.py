from __future__ import annotations

import math
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coarse_menger.graph import (
    INF,
    DuplicateEdgeError,
    EmptySourcesError,
    Graph,
    Path,
    PathError,
    SelfLoopError,
    VertexRangeError,
    ball,
    build_graph,
    components_excluding,
    disjoint_union,
    distances_from,
    power,
    set_distance,
    shortest_path,
)
from oracles import pairwise_distances


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


# -- construction -------------------------------------------------------------


def test_triangle():
    g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    assert [g.degree(v) for v in g.vertices()] == [2, 2, 2]
    assert list(g.edges()) == [(0, 1), (0, 2), (1, 2)]


def test_self_loop_rejected():
    with pytest.raises(SelfLoopError):
        build_graph(2, [(0, 0)])


def test_path_degrees():
    g = path_graph(5)
    assert [g.degree(v) for v in g.vertices()] == [1, 2, 2, 2, 1]


def test_duplicate_edges():
    with pytest.raises(DuplicateEdgeError):
        build_graph(3, [(0, 1), (1, 0)])
    g = build_graph(3, [(0, 1), (1, 0)], strict=False)
    assert g.edge_count == 1


def test_vertex_range():
    with pytest.raises(VertexRangeError):
        build_graph(3, [(0, 3)])


# -- distances ----------------------------------------------------------------


def test_distances_path():
    g = path_graph(5)
    assert distances_from(g, [0]) == [0, 1, 2, 3, 4]
    assert distances_from(g, [0, 4]) == [0, 1, 2, 1, 0]


def test_distances_disconnected():
    g = build_graph(4, [(0, 1), (2, 3)])
    dist = distances_from(g, [0])
    assert dist[1] == 1 and dist[2] == INF and dist[3] == INF


def test_distances_empty_sources():
    with pytest.raises(EmptySourcesError):
        distances_from(path_graph(3), [])


def test_set_distance():
    g = path_graph(11)
    assert set_distance(g, {0}, {7}) == 7
    assert set_distance(g, {0, 1, 2}, {2, 5}) == 0
    h = build_graph(4, [(0, 1), (2, 3)])
    assert set_distance(h, {0}, {3}) == INF


def test_ball():
    g = path_graph(11)
    assert ball(g, {5}, 0) == frozenset({5})
    assert ball(g, {5}, 2) == frozenset({3, 4, 5, 6, 7})
    assert ball(g, {5}, 100) == frozenset(range(11))
    assert ball(g, frozenset(), 3) == frozenset()


# -- shortest paths -----------------------------------------------------------


def test_shortest_path_direct():
    g = path_graph(5)
    sp = shortest_path(g, {0}, {4})
    assert sp.vertices == (0, 1, 2, 3, 4)


def test_shortest_path_blocked():
    g = path_graph(5)
    assert shortest_path(g, {0}, {4}, forbidden=frozenset({2})) is None


def test_shortest_path_shared_vertex():
    g = path_graph(5)
    sp = shortest_path(g, {0, 3}, {3, 4})
    assert sp.vertices == (3,)


def test_shortest_path_lexicographic():
    # Two shortest 0 -> 5 routes: 0-1-5 and 0-2-5; the lex-smaller wins.
    g = build_graph(6, [(0, 1), (0, 2), (1, 5), (2, 5), (0, 3), (3, 4), (4, 5)])
    sp = shortest_path(g, {0}, {5})
    assert sp.vertices == (0, 1, 5)


def test_shortest_path_matches_set_distance():
    g = cycle_graph(9)
    for s, t in combinations(range(9), 2):
        sp = shortest_path(g, {s}, {t})
        assert sp.length == set_distance(g, {s}, {t})


def test_path_validate():
    g = path_graph(4)
    Path((0, 1, 2)).validate(g)
    with pytest.raises(PathError):
        Path((0, 2)).validate(g)
    with pytest.raises(PathError):
        Path((0, 1, 0)).validate(g)
    with pytest.raises(PathError):
        Path(())


# -- components ---------------------------------------------------------------


def test_components_basics():
    g = path_graph(5)
    comps = components_excluding(g, set())
    assert len(comps) == 1 and comps[0].vertices == frozenset(range(5))
    assert components_excluding(g, range(5)) == []
    comps = components_excluding(g, {2})
    assert [sorted(c.vertices) for c in comps] == [[0, 1], [3, 4]]
    assert all(c.boundary == frozenset({2}) for c in comps)


def test_component_boundary():
    g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    comps = components_excluding(g, {0, 2})
    assert [sorted(c.vertices) for c in comps] == [[1], [3, 4]]
    assert comps[0].boundary == frozenset({0, 2})


# -- powers -------------------------------------------------------------------


def test_power_identity():
    g = cycle_graph(7)
    assert power(g, 1).adjacency == g.adjacency


def test_power_path_square():
    g = path_graph(5)
    assert power(g, 2).edge_count == 7


def test_power_saturates():
    g = path_graph(6)
    assert power(g, 10).edge_count == 15


def _power_oracle(g: Graph, p: int) -> set[tuple[int, int]]:
    dist = pairwise_distances(g)
    return {
        (u, v)
        for u in range(g.vertex_count)
        for v in range(u + 1, g.vertex_count)
        if 1 <= dist[u][v] <= p
    }


def test_power_composition_on_paths_and_cycles():
    for n in range(3, 13):
        for base in (path_graph(n), cycle_graph(n)):
            for p in (1, 2, 3):
                gp = power(base, p)
                assert set(gp.edges()) == _power_oracle(base, p)
                for q in (1, 2, 3):
                    nested = set(power(gp, q).edges())
                    flat = set(power(base, p * q).edges())
                    assert nested == flat


@st.composite
def random_graphs(draw):
    n = draw(st.integers(2, 12))
    possible = list(combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(possible), unique=True, max_size=len(possible)))
    return build_graph(n, edges)


@given(random_graphs(), st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_power_composition_subset_generally(g, p, q):
    nested = set(power(power(g, p), q).edges())
    flat = set(power(g, p * q).edges())
    assert nested <= flat


@given(random_graphs())
@settings(max_examples=60, deadline=None)
def test_triangle_inequality(g):
    dist = [distances_from(g, [v]) for v in g.vertices()]
    for i in range(g.vertex_count):
        for j in range(g.vertex_count):
            for k in range(g.vertex_count):
                assert dist[i][j] <= dist[i][k] + dist[k][j]


@given(random_graphs())
@settings(max_examples=60, deadline=None)
def test_set_distance_dual_computation(g):
    n = g.vertex_count
    a = frozenset(range(0, n, 2))
    b = frozenset(range(1, n, 2))
    if not a or not b:
        return
    direct = set_distance(g, a, b)
    via_rows = min(min(distances_from(g, [x])[y] for y in b) for x in a)
    assert direct == via_rows


@given(random_graphs(), st.integers(0, 4))
@settings(max_examples=60, deadline=None)
def test_ball_matches_distances(g, r):
    x = frozenset(v for v in g.vertices() if v % 3 == 0)
    dist = distances_from(g, x) if x else None
    expected = frozenset(v for v in g.vertices() if dist[v] <= r) if x else frozenset()
    assert ball(g, x, r) == expected


@given(random_graphs())
@settings(max_examples=60, deadline=None)
def test_shortest_path_length_is_exact(g):
    sources = frozenset({0})
    targets = frozenset({g.vertex_count - 1})
    forbidden = frozenset(v for v in g.vertices() if v % 5 == 4 and v not in sources | targets)
    sp = shortest_path(g, sources, targets, forbidden)
    kept = [
        [u for u in g.neighbors(v) if u not in forbidden] for v in g.vertices()
    ]
    reduced = build_graph(
        g.vertex_count,
        [(u, v) for u, v in g.edges() if u not in forbidden and v not in forbidden],
    )
    dist = distances_from(reduced, [0])[g.vertex_count - 1]
    if sp is None:
        assert dist == INF
    else:
        sp.validate(g)
        assert sp.length == dist
        assert not (sp.vertex_set & forbidden)


def test_disjoint_union():
    g = disjoint_union(path_graph(3), cycle_graph(3))
    assert g.vertex_count == 6
    assert set(g.edges()) == {(0, 1), (1, 2), (3, 4), (3, 5), (4, 5)}
