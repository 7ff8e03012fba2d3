"""Generators for the tree-with-bottom-path gadget family.

The gadget of depth k is a complete binary tree plus a path M through its
leaves and two extra vertices.  M visits the leaves in an interleaved order
(leaf i sits at path position i for odd i and i + 2 for even i), which is
what denies any pair of disjoint end-to-end paths a wide berth.  Subdividing
every edge that meets the bottom path stretches the gadget into a max-degree-3
graph on which no one or two balls of a given radius can separate the marked
source set from the target set, while three mutually far paths still cannot
coexist.

Vertex ids are stable: tree vertices in heap (breadth-first) order, then the
two extra bottom vertices, then subdivision vertices in edge-creation order
(tree edges by parent id, then bottom-path edges left to right).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .graph import Graph, Path, build_graph


class GadgetError(ValueError):
    pass


class BadDepthError(GadgetError):
    pass


class BadParamsError(GadgetError):
    pass


@dataclass(frozen=True, eq=False)
class LabeledGadget:
    """A generated gadget graph together with its role labels.

    ``sources``/``targets`` hold the endpoint sets the instance is meant to be
    solved with: {s1, s2} / {t1, t2} for the bare gadget, and the three-member
    sets including the root for the subdivided counterexample.
    """

    graph: Graph
    sources: frozenset[int]
    targets: frozenset[int]
    root: int
    s1: int
    s2: int
    t1: int
    t2: int
    bottom: frozenset[int]
    bottom_order: tuple[int, ...]
    tree_parent: tuple[int | None, ...]
    leaves: frozenset[int]
    depth: int
    subdivision_len: int
    ell: int | None
    edge_routes: dict[tuple[int, int], tuple[int, ...]] = field(repr=False)

    @property
    def tree_size(self) -> int:
        return 2**self.depth - 1

    def route(self, u: int, v: int) -> tuple[int, ...]:
        """Full vertex route replacing the original edge (u, v)."""
        if (u, v) in self.edge_routes:
            return self.edge_routes[(u, v)]
        return tuple(reversed(self.edge_routes[(v, u)]))

    @cached_property
    def subdivision_vertices(self) -> frozenset[int]:
        base = 2**self.depth + 1
        return frozenset(range(base, self.graph.vertex_count))

    def tree_path(self) -> Path:
        """The unique path through the tree from s1 up to the root down to t2."""
        up = [self.s1]
        while up[-1] != self.root:
            up.append(self.tree_parent[up[-1]])
        down = [self.t2]
        while down[-1] != self.root:
            down.append(self.tree_parent[down[-1]])
        spine = up + list(reversed(down))[1:]
        walk = [spine[0]]
        for u, v in zip(spine, spine[1:]):
            walk.extend(self.route(u, v)[1:])
        return Path(tuple(walk))


def _bottom_position_vertex(pos: int, leaf_count: int, s2: int, t1: int) -> int:
    """Vertex occupying 1-based bottom-path position pos."""
    leaf_base = leaf_count - 1
    if pos == 2:
        return s2
    if pos == leaf_count + 1:
        return t1
    leaf_index = pos if pos % 2 == 1 else pos - 2
    return leaf_base + leaf_index - 1


def _build(depth: int, subdivision_len: int, ell: int | None, with_root_labels: bool) -> LabeledGadget:
    if depth < 2:
        raise BadDepthError(f"gadget depth must be >= 2, got {depth}")
    if subdivision_len < 1:
        raise BadParamsError(f"subdivision length must be >= 1, got {subdivision_len}")

    tree_size = 2**depth - 1
    leaf_count = 2 ** (depth - 1)
    leaf_base = leaf_count - 1
    s2 = tree_size
    t1 = tree_size + 1
    base_count = tree_size + 2
    positions = leaf_count + 2

    bottom_order = tuple(
        _bottom_position_vertex(p, leaf_count, s2, t1) for p in range(1, positions + 1)
    )
    bottom = frozenset(bottom_order)

    base_edges: list[tuple[int, int]] = []
    for v in range(leaf_base):
        base_edges.append((v, 2 * v + 1))
        base_edges.append((v, 2 * v + 2))
    base_edges.extend(zip(bottom_order, bottom_order[1:]))

    edges: list[tuple[int, int]] = []
    routes: dict[tuple[int, int], tuple[int, ...]] = {}
    next_id = base_count
    for u, v in base_edges:
        if subdivision_len > 1 and (u in bottom or v in bottom):
            interior = list(range(next_id, next_id + subdivision_len - 1))
            next_id += subdivision_len - 1
            chain = [u, *interior, v]
            edges.extend(zip(chain, chain[1:]))
            routes[(u, v)] = tuple(chain)
        else:
            edges.append((u, v))
            routes[(u, v)] = (u, v)

    graph = build_graph(next_id, edges)
    s1 = bottom_order[0]
    t2 = bottom_order[-1]
    root = 0
    if with_root_labels:
        sources = frozenset({root, s1, s2})
        targets = frozenset({root, t1, t2})
    else:
        sources = frozenset({s1, s2})
        targets = frozenset({t1, t2})

    tree_parent: tuple[int | None, ...] = tuple(
        None if v == 0 else (v - 1) // 2 for v in range(tree_size)
    )
    return LabeledGadget(
        graph=graph,
        sources=sources,
        targets=targets,
        root=root,
        s1=s1,
        s2=s2,
        t1=t1,
        t2=t2,
        bottom=bottom,
        bottom_order=bottom_order,
        tree_parent=tree_parent,
        leaves=frozenset(range(leaf_base, tree_size)),
        depth=depth,
        subdivision_len=subdivision_len,
        ell=ell,
        edge_routes=routes,
    )


def build_tree_gadget(depth: int) -> LabeledGadget:
    """The unsubdivided gadget, labeled with the four bottom endpoints."""
    return _build(depth, 1, None, with_root_labels=False)


def build_counterexample(
    ell: int,
    depth: int | None = None,
    subdivision_len: int | None = None,
    allow_weak: bool = False,
) -> LabeledGadget:
    """The subdivided instance defeating all 2-ball separators of radius ell.

    Defaults are the least parameters with the required slack: tree depth
    2*ell + 3 (strictly more than 2*ell + 2) and subdivision length 2*ell + 1
    (strictly more than 2*ell).  Weaker overrides are rejected unless
    allow_weak is set, which exists for negative tests.
    """
    if ell < 1:
        raise BadParamsError(f"ell must be >= 1, got {ell}")
    k = depth if depth is not None else 2 * ell + 3
    length = subdivision_len if subdivision_len is not None else 2 * ell + 1
    if not allow_weak:
        if k <= 2 * ell + 2:
            raise BadParamsError(f"depth {k} too small for ell={ell}; need > {2 * ell + 2}")
        if length <= 2 * ell:
            raise BadParamsError(
                f"subdivision length {length} too small for ell={ell}; need > {2 * ell}"
            )
    return _build(k, length, ell, with_root_labels=True)
