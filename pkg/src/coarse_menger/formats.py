"""Text formats: the edge-list graph format, role sidecars, and DOT export.

The graph format is line-oriented: a header ``p <n> <m>``, then ``e <u> <v>``
per edge (0-based), optional ``s <v>`` / ``t <v>`` lines marking source and
target vertices, and ``#`` comments.  Serialization is canonical (sorted
edges and marks), so parse -> serialize is a fixed point.
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence

from .gadgets import LabeledGadget
from .graph import Graph, Path, VertexSet, build_graph


class InputFormatError(ValueError):
    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


def parse_graph_text(text: str) -> tuple[Graph, VertexSet, VertexSet]:
    """Parse the text format; returns (graph, sources, targets)."""
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    sources: set[int] = set()
    targets: set[int] = set()
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        kind, args = fields[0], fields[1:]
        try:
            values = [int(x) for x in args]
        except ValueError:
            raise InputFormatError(line_number, f"non-integer field in {raw!r}")
        if kind == "p":
            if header is not None:
                raise InputFormatError(line_number, "duplicate header")
            if len(values) != 2 or values[0] < 0 or values[1] < 0:
                raise InputFormatError(line_number, "header must be 'p <n> <m>'")
            header = (values[0], values[1])
        elif kind in ("e", "s", "t"):
            if header is None:
                raise InputFormatError(line_number, "header must come first")
            want = 2 if kind == "e" else 1
            if len(values) != want:
                raise InputFormatError(line_number, f"'{kind}' takes {want} argument(s)")
            for v in values:
                if not 0 <= v < header[0]:
                    raise InputFormatError(line_number, f"vertex {v} out of range")
            if kind == "e":
                edges.append((values[0], values[1]))
            elif kind == "s":
                sources.add(values[0])
            else:
                targets.add(values[0])
        else:
            raise InputFormatError(line_number, f"unknown record {kind!r}")
    if header is None:
        raise InputFormatError(0, "missing 'p' header")
    if len(edges) != header[1]:
        raise InputFormatError(0, f"header promises {header[1]} edges, found {len(edges)}")
    try:
        graph = build_graph(header[0], edges)
    except ValueError as exc:
        raise InputFormatError(0, str(exc)) from exc
    return graph, frozenset(sources), frozenset(targets)


def serialize_graph_text(
    g: Graph, sources: Iterable[int] = (), targets: Iterable[int] = ()
) -> str:
    lines = [f"p {g.vertex_count} {g.edge_count}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    lines.extend(f"s {v}" for v in sorted(set(sources)))
    lines.extend(f"t {v}" for v in sorted(set(targets)))
    return "\n".join(lines) + "\n"


def gadget_labels_json(gadget: LabeledGadget) -> str:
    """Role-label sidecar for a generated gadget."""
    payload = {
        "root": gadget.root,
        "s1": gadget.s1,
        "s2": gadget.s2,
        "t1": gadget.t1,
        "t2": gadget.t2,
        "sources": sorted(gadget.sources),
        "targets": sorted(gadget.targets),
        "bottom_order": list(gadget.bottom_order),
        "leaves": sorted(gadget.leaves),
        "depth": gadget.depth,
        "subdivision_len": gadget.subdivision_len,
        "ell": gadget.ell,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def export_dot(
    g: Graph,
    sources: Iterable[int] = (),
    targets: Iterable[int] = (),
    highlight_paths: Sequence[Path] = (),
    highlight_sets: Sequence[Iterable[int]] = (),
) -> str:
    """Undirected DOT rendering with role styling and path highlights.

    Sources are boxes, targets doubled circles (both, for shared vertices);
    highlighted paths get bold styles cycling through a small palette, and
    highlighted sets are filled.  Output order is deterministic.
    """
    src = set(sources)
    tgt = set(targets)
    styles = ["penwidth=3 color=black", "penwidth=3 color=gray50 style=dashed"]
    path_edges: dict[tuple[int, int], str] = {}
    for i, path in enumerate(highlight_paths):
        style = styles[i % len(styles)]
        for u, v in zip(path.vertices, path.vertices[1:]):
            path_edges[(min(u, v), max(u, v))] = style
    filled = set()
    for group in highlight_sets:
        filled.update(group)

    lines = ["graph G {", "  node [shape=circle width=0.3];"]
    for v in g.vertices():
        attrs = []
        if v in src and v in tgt:
            attrs.append("shape=doubleoctagon")
        elif v in src:
            attrs.append("shape=box")
        elif v in tgt:
            attrs.append("shape=doublecircle")
        if v in filled:
            attrs.append("style=filled fillcolor=lightgray")
        lines.append(f"  {v} [{' '.join(attrs)}];" if attrs else f"  {v};")
    for u, v in g.edges():
        style = path_edges.get((u, v))
        lines.append(f"  {u} -- {v} [{style}];" if style else f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
