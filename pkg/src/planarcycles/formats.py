"""Text formats (.grf, .gr1, .ezi, .gm1, .gm2), the JSON document and SVG rendering.

The numeric formats are whitespace-separated integer or decimal tokens. A .grf
file holds n, a pointer line of n + 1 cumulative 1-based offsets and the
concatenated neighbor rows; .gr1 appends m and the incidence rows; .ezi holds a
cycle count, a pointer line, the edge rows and the sorted vertex rows; .gm1
holds a boundary count, the vertex ids and their X and Y coordinates.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from .cycles import Cycle, CycleSystem, _walk, edge_bits
from .embed import Embedding
from .graph import Graph, GraphError, from_adjacency
from .layout import Drawing, Point
from .planarize import PlanarResult


class FormatError(GraphError):
    """Malformed input file; line is the 1-based line of the offending token."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class _Tokens:
    def __init__(self, text: str):
        self.items: list[tuple[str, int]] = []
        for no, raw in enumerate(text.splitlines(), start=1):
            self.items.extend((tok, no) for tok in raw.split())
        self.last_line = max(1, len(text.splitlines()))
        self.pos = 0

    def line(self) -> int:
        return self.items[self.pos][1] if self.pos < len(self.items) else self.last_line

    def integer(self, what: str) -> int:
        if self.pos >= len(self.items):
            raise FormatError(f"unexpected end of file, expected {what}", self.last_line)
        tok, line = self.items[self.pos]
        try:
            value = int(tok)
        except ValueError:
            raise FormatError(f"expected integer {what}, got {tok!r}", line) from None
        self.pos += 1
        return value

    def number(self, what: str) -> float:
        if self.pos >= len(self.items):
            raise FormatError(f"unexpected end of file, expected {what}", self.last_line)
        tok, line = self.items[self.pos]
        try:
            value = float(tok)
        except ValueError:
            raise FormatError(f"expected number {what}, got {tok!r}", line) from None
        self.pos += 1
        return value

    def pointers(self, count: int, what: str) -> list[int]:
        line = self.line()
        ptr = [self.integer(f"{what} pointer {i + 1}") for i in range(count + 1)]
        if ptr[0] != 1:
            raise FormatError(f"{what} pointer line must start with 1", line)
        if any(b < a for a, b in zip(ptr, ptr[1:])):
            raise FormatError(f"{what} pointers decrease", line)
        return ptr

    def end(self) -> None:
        if self.pos < len(self.items):
            tok, line = self.items[self.pos]
            raise FormatError(f"unexpected trailing token {tok!r}", line)


def _read(source: str | Path) -> str:
    return Path(source).read_text() if isinstance(source, Path) else source


def _rows(ptr: Sequence[int], values: Sequence[int]) -> list[list[int]]:
    return [list(values[ptr[i] - 1 : ptr[i + 1] - 1]) for i in range(len(ptr) - 1)]


def _pointer_line(lengths: Iterable[int]) -> list[int]:
    ptr = [1]
    for k in lengths:
        ptr.append(ptr[-1] + k)
    return ptr


def _line(values: Iterable[Any]) -> str:
    return " ".join(str(v) for v in values)


# ---------------------------------------------------------------- graphs


def _graph_block(tok: _Tokens) -> Graph:
    n = tok.integer("vertex count")
    if n < 1:
        raise FormatError("vertex count must be positive", tok.items[0][1] if tok.items else 1)
    ptr = tok.pointers(n, "adjacency")
    values = []
    for k in range(ptr[-1] - 1):
        line = tok.line()
        u = tok.integer("neighbor")
        if not 1 <= u <= n:
            raise FormatError(f"neighbor {u} out of range 1..{n}", line)
        values.append(u)
    try:
        return from_adjacency(n, _rows(ptr, values))
    except FormatError:
        raise
    except GraphError as exc:
        raise FormatError(str(exc), tok.line()) from None


def parse_grf(source: str | Path) -> Graph:
    """Graph from .grf text (or a Path)."""
    tok = _Tokens(_read(source))
    g = _graph_block(tok)
    tok.end()
    return g


def write_grf(g: Graph) -> str:
    lines = [str(g.n), _line(_pointer_line(g.degree(v) for v in g.vertices))]
    lines += [_line(g.neighbors(v)) for v in g.vertices]
    return "\n".join(lines) + "\n"


def parse_gr1(source: str | Path) -> Graph:
    """Graph from .gr1 text; the incidence rows must match the row-scan edge numbering."""
    tok = _Tokens(_read(source))
    g = _graph_block(tok)
    line = tok.line()
    m = tok.integer("edge count")
    if m != g.m:
        raise FormatError(f"edge count {m} differs from {g.m}", line)
    for v in g.vertices:
        line = tok.line()
        row = tuple(tok.integer(f"incidence of v{v}") for _ in range(g.degree(v)))
        if row != g.incident_edges(v):
            raise FormatError(f"incidence row of v{v} disagrees with the adjacency", line)
    tok.end()
    return g


def write_gr1(g: Graph) -> str:
    lines = [write_grf(g).rstrip("\n"), str(g.m)]
    lines += [_line(g.incident_edges(v)) for v in g.vertices]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- cycles


def write_ezi(sys: CycleSystem) -> str:
    """Cycle count, pointer line, edge rows, then sorted vertex rows."""
    cycles = sys.cycles
    lines = [str(len(cycles)), _line(_pointer_line(c.length for c in cycles))]
    lines += [_line(c.edge_list) for c in cycles]
    lines += [_line(sorted(c.vertices)) for c in cycles]
    return "\n".join(lines) + "\n"


def parse_ezi(source: str | Path, g: Graph) -> CycleSystem:
    """Cycle system over g from .ezi text; each vertex row must match its edge row."""
    tok = _Tokens(_read(source))
    count = tok.integer("cycle count")
    ptr = tok.pointers(count, "cycle")
    total = ptr[-1] - 1
    lines = [tok.line()]
    edges = [tok.integer("edge id") for _ in range(total)]
    lines.append(tok.line())
    verts = [tok.integer("vertex id") for _ in range(total)]
    tok.end()
    cycles = []
    for i, (erow, vrow) in enumerate(zip(_rows(ptr, edges), _rows(ptr, verts)), start=1):
        if any(not 1 <= e <= g.m for e in erow):
            raise FormatError(f"cycle {i} names an edge outside 1..{g.m}", lines[0])
        bits = edge_bits(erow)
        try:
            walk = _walk(g, bits)
        except GraphError as exc:
            raise FormatError(f"cycle {i}: {exc}", lines[0]) from None
        if sorted(walk) != vrow:
            raise FormatError(f"vertex row of cycle {i} disagrees with its edges", lines[1])
        cycles.append(Cycle(bits, walk))
    return CycleSystem(g, tuple(cycles))


# ---------------------------------------------------------------- boundaries


def parse_gm1(source: str | Path) -> dict[int, Point]:
    """Boundary vertex -> (x, y), in file order."""
    tok = _Tokens(_read(source))
    count = tok.integer("boundary count")
    if count < 1:
        raise FormatError("boundary is empty", 1)
    ids = [tok.integer("boundary vertex") for _ in range(count)]
    xs = [tok.number("X coordinate") for _ in range(count)]
    ys = [tok.number("Y coordinate") for _ in range(count)]
    if tok.pos < len(tok.items):
        raise FormatError(f"more values than the boundary count {count}", tok.line())
    if len(set(ids)) != count:
        raise FormatError("repeated boundary vertex", 2)
    return {v: (x, y) for v, x, y in zip(ids, xs, ys)}


def write_gm1(boundary: Mapping[int, Point]) -> str:
    ids = list(boundary)
    lines = [str(len(ids)), _line(ids), _line(float(boundary[v][0]) for v in ids), _line(float(boundary[v][1]) for v in ids)]
    return "\n".join(lines) + "\n"


def write_gm2(drawing: Drawing) -> str:
    """Free-vertex coordinate table: count, ids, X and Y with three decimals."""
    free = sorted(v for v in drawing.coords if v not in drawing.fixed)
    lines = [
        str(len(free)),
        _line(free),
        _line(f"{drawing.coords[v][0]:.3f}" for v in free),
        _line(f"{drawing.coords[v][1]:.3f}" for v in free),
    ]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- JSON


def _r6(x: float) -> float:
    return round(float(x), 6) + 0.0


def document(
    graph: Graph | None = None,
    *,
    system: CycleSystem | None = None,
    result: PlanarResult | None = None,
    embedding: Embedding | None = None,
    layers: Sequence[Iterable[int]] | None = None,
    drawing: Drawing | None = None,
) -> dict[str, Any]:
    """The JSON document as plain data. Keys always appear in the same order.

    faces lists the rim first when the embedding has one; rotation, dummies and
    coords are keyed by vertex id as a string.
    """
    kept: list[dict[str, Any]] = []
    if result is not None and system is not None:
        for i in system.members(result.kept_cycles):
            c = system.cycles[i]
            kept.append({"id": i + 1, "edges": c.edge_list, "vertices": list(c.vertices)})
    faces: list[list[int]] = []
    rotation: dict[str, list[int]] = {}
    dummies: dict[str, list[list[int]]] = {}
    if embedding is not None:
        order = list(range(len(embedding.faces)))
        if embedding.rim_face >= 0:
            order.remove(embedding.rim_face)
            order.insert(0, embedding.rim_face)
        faces = [list(embedding.faces[i]) for i in order]
        rotation = {str(v): list(embedding.rotation.sigma[v]) for v in embedding.rotation.vertices}
        dummies = {str(d): [list(a), list(b)] for d, (a, b) in sorted(embedding.dummy_vertices.items())}
    coords: dict[str, list[float]] = {}
    if drawing is not None:
        coords = {str(v): [_r6(x), _r6(y)] for v, (x, y) in sorted(drawing.coords.items())}
    return {
        "graph": None if graph is None else {"n": graph.n, "m": graph.m, "edges": [list(graph.ends(e)) for e in graph.edges]},
        "kept_cycles": kept,
        "deleted_edges": sorted(result.deleted_edges) if result is not None else [],
        "rotation": rotation,
        "faces": faces,
        "dummies": dummies,
        "layers": [sorted(layer) for layer in layers] if layers is not None else [],
        "coords": coords,
    }


def emit_json(doc: Mapping[str, Any]) -> str:
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------- SVG

LAYER_STYLES = (
    ("#1f4e79", None),
    ("#c0392b", "6 3"),
    ("#2e7d32", "2 3"),
    ("#8e44ad", "8 3 2 3"),
)


def emit_svg(
    drawing: Drawing,
    edges: Iterable[tuple[int, int]] | None = None,
    *,
    embedding: Embedding | None = None,
    layers: Sequence[Iterable[tuple[int, int]]] | None = None,
    size: float = 600.0,
    margin: float = 30.0,
) -> str:
    """SVG 1.1 drawing with straight edges, labeled vertices and square dummies.

    Edges come from layers (one styled group each), else from edges, else from
    the embedding's rotation.
    """
    dummies = set(embedding.dummy_vertices) if embedding is not None else set()
    if layers is None:
        if edges is None:
            if embedding is None:
                raise GraphError("nothing to draw: give edges, layers or an embedding")
            edges = embedding.rotation.edges()
        layers = [list(edges)]
    groups = [sorted({(min(a, b), max(a, b)) for a, b in layer}) for layer in layers]
    used = sorted({v for grp in groups for e in grp for v in e} | set(drawing.coords))
    missing = [v for v in used if v not in drawing.coords]
    if missing:
        raise GraphError(f"missing coordinate for v{missing[0]}")
    xs = [drawing.coords[v][0] for v in used] or [0.0]
    ys = [drawing.coords[v][1] for v in used] or [0.0]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    scale = (size - 2 * margin) / span

    def at(v: int) -> tuple[str, str]:
        x, y = drawing.coords[v]
        return f"{margin + (x - min(xs)) * scale:.3f}", f"{size - margin - (y - min(ys)) * scale:.3f}"

    svg = ET.Element(
        "svg",
        {"xmlns": "http://www.w3.org/2000/svg", "version": "1.1", "width": f"{size:g}", "height": f"{size:g}", "viewBox": f"0 0 {size:g} {size:g}"},
    )
    for k, grp in enumerate(groups, start=1):
        color, dash = LAYER_STYLES[(k - 1) % len(LAYER_STYLES)]
        attrs = {"id": f"layer-{k}", "class": "layer", "stroke": color, "stroke-width": "1.5", "fill": "none"}
        if dash:
            attrs["stroke-dasharray"] = dash
        g = ET.SubElement(svg, "g", attrs)
        for a, b in grp:
            (x1, y1), (x2, y2) = at(a), at(b)
            ET.SubElement(g, "line", {"x1": x1, "y1": y1, "x2": x2, "y2": y2})
    verts = ET.SubElement(svg, "g", {"id": "vertices", "font-family": "sans-serif", "font-size": "10", "text-anchor": "middle"})
    for v in used:
        x, y = at(v)
        if v in dummies:
            ET.SubElement(verts, "rect", {"class": "dummy", "x": f"{float(x) - 3:.3f}", "y": f"{float(y) - 3:.3f}", "width": "6", "height": "6", "fill": "#555555"})
            continue
        ET.SubElement(verts, "circle", {"class": "vertex", "cx": x, "cy": y, "r": "8", "fill": "#ffffff", "stroke": "#000000"})
        label = ET.SubElement(verts, "text", {"x": x, "y": f"{float(y) + 3.5:.3f}"})
        label.text = str(v)
    ET.indent(svg)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"
