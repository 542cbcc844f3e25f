"""Instance text format and drawing documents.

Instance format (``#`` starts a comment; a ``/`` token also ends a line)::

    instance  := header edge* section*
    header    := N M                      vertex and edge counts
    edge      := U V                      0 <= U, V < N
    section   := "model:" ("rf" | "usf")
               | "external:" V V V V ...  the external cycle, in cycle order
               | "corners:" V V V V
               | "rotation:" V U U ...    clockwise neighbors of V (one line per vertex)
               | "angle:" V A B           neighbors of V bounding its 180 degree angle

Rotation lines must cover every vertex once given; angle lines must cover
every degree-3 vertex.  ``emit_instance`` writes the normal form: edges as
``min max`` in ascending order, then sections in the order above, rotation
and angle lines by vertex.

Drawing document (JSON object, keys in this order)::

    {"model": "RF" | "USF",
     "vertices": [{"id": int, "label": str, "x": int, "y": int}, ...],
     "edges": [[u, v], ...]}

Vertices are listed by id, edges as ``[min, max]`` in ascending order.
Files are written with two-space indentation and a trailing newline; a
corpus holds one compact document per line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

from .drawing import GridDrawing, Model
from .graph import Graph, GraphError, RotationSystem
from .outcome import Constraints

SECTIONS = ("model", "external", "corners", "rotation", "angle")


class ParseError(GraphError):
    """Malformed input, anchored at a 1-based line and column."""

    def __init__(self, code: str, msg: str, line: int = 0, col: int = 0) -> None:
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(code, where + msg)
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Instance:
    graph: Graph
    constraints: Constraints
    model: Model | None = None


def _lines(text: str) -> Iterator[tuple[int, list[tuple[int, str]]]]:
    """(line number, [(column, token)]) for non-empty logical lines."""
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        tokens: list[tuple[int, str]] = []
        col = 0
        for part in body.split():
            col = body.index(part, col) + 1
            if part == "/":
                if tokens:
                    yield no, tokens
                tokens = []
            else:
                tokens.append((col, part))
            col += len(part) - 1
        if tokens:
            yield no, tokens


def _int(no: int, tok: tuple[int, str]) -> int:
    col, s = tok
    try:
        value = int(s)
    except ValueError:
        raise ParseError("bad-token", f"expected an integer, found {s!r}", no, col) from None
    if value < 0:
        raise ParseError("bad-token", f"negative number {value}", no, col)
    return value


def parse_instance(text: str) -> Instance:
    """Graph plus constraints; ``ParseError`` or ``GraphError`` on bad input."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty-input", "no header line", 1, 1)
    no, head = lines[0]
    if len(head) != 2:
        raise ParseError("bad-header", "header must be 'N M'", no, head[0][0])
    n, m = _int(no, head[0]), _int(no, head[1])
    edges = []
    for no, toks in lines[1 : 1 + m]:
        if len(toks) != 2 or toks[0][1].endswith(":"):
            raise ParseError("bad-edge", "edge lines hold two vertex ids", no, toks[0][0])
        u, v = _int(no, toks[0]), _int(no, toks[1])
        for tok, w in ((toks[0], u), (toks[1], v)):
            if w >= n:
                raise ParseError("dangling-id", f"vertex {w} not declared (N = {n})", no, tok[0])
        edges.append((u, v))
    if len(edges) < m:
        raise ParseError("missing-edges", f"header declares {m} edges, found {len(edges)}", lines[-1][0] + 1, 1)
    try:
        g = Graph(n, edges)
    except GraphError as exc:
        raise ParseError(exc.code, str(exc), lines[1][0] if m else lines[0][0], 1) from None

    model = None
    external = corners = None
    rotation: dict[int, tuple[int, ...]] = {}
    angles: dict[int, tuple[int, int]] = {}
    for no, toks in lines[1 + m :]:
        col, key = toks[0]
        if not key.endswith(":") or key[:-1] not in SECTIONS:
            raise ParseError("bad-section", f"unknown section {key!r}", no, col)
        key = key[:-1]
        args = toks[1:]
        if key == "model":
            if len(args) != 1:
                raise ParseError("bad-section", "model takes one value", no, col)
            try:
                model = Model.parse(args[0][1])
            except ValueError as exc:
                raise ParseError("bad-model", str(exc), no, args[0][0]) from None
            continue
        vals = [_int(no, t) for t in args]
        for t, v in zip(args, vals):
            if v >= n:
                raise ParseError("dangling-id", f"vertex {v} not declared", no, t[0])
        if key == "external":
            if external is not None:
                raise ParseError("duplicate-section", "external given twice", no, col)
            external = tuple(vals)
        elif key == "corners":
            if corners is not None:
                raise ParseError("duplicate-section", "corners given twice", no, col)
            if len(vals) != 4:
                raise ParseError("bad-corners", "corners takes four ids", no, col)
            corners = tuple(vals)
        elif key == "rotation":
            if not vals:
                raise ParseError("bad-rotation", "rotation line needs a vertex", no, col)
            v, order = vals[0], tuple(vals[1:])
            if v in rotation:
                raise ParseError("duplicate-section", f"rotation for {v} given twice", no, col)
            if sorted(order) != list(g.neighbors(v)):
                raise ParseError("bad-rotation", f"order at {v} is not a permutation of its neighbors", no, col)
            rotation[v] = order
        else:
            if len(vals) != 3:
                raise ParseError("bad-angle", "angle takes a vertex and two neighbors", no, col)
            v, a, b = vals
            if g.degree(v) != 3:
                raise ParseError("bad-angle", f"vertex {v} has degree {g.degree(v)}, not 3", no, args[0][0])
            if v in angles:
                raise ParseError("duplicate-section", f"angle for {v} given twice", no, col)
            if a == b or not g.has_edge(v, a) or not g.has_edge(v, b):
                raise ParseError("bad-angle", f"{a} and {b} must be distinct neighbors of {v}", no, args[1][0])
            angles[v] = (min(a, b), max(a, b))
    rot = None
    if rotation:
        missing = [v for v in g.vertices() if v not in rotation]
        if missing:
            raise ParseError("bad-rotation", f"no rotation for vertices {missing}", lines[-1][0], 1)
        rot = RotationSystem(tuple(rotation[v] for v in g.vertices()))
    cons = Constraints(external, rot, corners, angles or None)
    cons.check(g)
    return Instance(g, cons, model)


def emit_instance(g: Graph, constraints: Constraints | None = None, model: Model | None = None) -> str:
    cons = constraints or Constraints()
    out = [f"{g.n} {g.edge_count}"]
    out += [f"{u} {v}" for u, v in g.edges()]
    if model is not None:
        out.append(f"model: {model.value.lower()}")
    if cons.external_cycle is not None:
        out.append("external: " + " ".join(map(str, cons.external_cycle)))
    if cons.corners is not None:
        out.append("corners: " + " ".join(map(str, cons.corners)))
    if cons.rotation is not None:
        for v in g.vertices():
            out.append(f"rotation: {v} " + " ".join(map(str, cons.rotation[v])) if cons.rotation[v] else f"rotation: {v}")
    if cons.angles:
        for v in sorted(cons.angles):
            a, b = sorted(cons.angles[v])
            out.append(f"angle: {v} {a} {b}")
    return "\n".join(out) + "\n"


def read_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


# ---------------------------------------------------------------------------
# Drawings
# ---------------------------------------------------------------------------


def drawing_to_dict(d: GridDrawing) -> dict:
    g = d.graph
    return {
        "model": d.model.value,
        "vertices": [
            {"id": v, "label": g.label(v), "x": x, "y": y}
            for v, (x, y) in enumerate(d.positions)
        ],
        "edges": [[u, v] for u, v in g.edges()],
    }


def drawing_from_dict(obj: dict) -> GridDrawing:
    if not isinstance(obj, dict):
        raise ParseError("bad-drawing", "drawing document must be an object")
    try:
        model = Model.parse(obj.get("model", "RF"))
        verts = sorted(obj["vertices"], key=lambda v: v["id"])
        ids = [v["id"] for v in verts]
        if ids != list(range(len(ids))):
            raise ParseError("bad-drawing", "vertex ids must be 0..n-1")
        g = Graph(len(verts), [tuple(e) for e in obj["edges"]], [str(v.get("label", v["id"])) for v in verts])
        pos = tuple((int(v["x"]), int(v["y"])) for v in verts)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("bad-drawing", f"malformed drawing document: {exc}") from None
    return GridDrawing(g, pos, model)


def dumps_drawing(d: GridDrawing, compact: bool = False) -> str:
    if compact:
        return json.dumps(drawing_to_dict(d), separators=(",", ":"))
    return json.dumps(drawing_to_dict(d), indent=2) + "\n"


def loads_drawing(text: str) -> GridDrawing:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("bad-json", exc.msg, exc.lineno, exc.colno) from None
    return drawing_from_dict(obj)


def read_drawing(path: str) -> GridDrawing:
    with open(path, encoding="utf-8") as fh:
        return loads_drawing(fh.read())


def write_corpus(drawings: Iterable[GridDrawing], fh: TextIO) -> int:
    count = 0
    for d in drawings:
        fh.write(dumps_drawing(d, compact=True) + "\n")
        count += 1
    return count


def read_corpus(fh: TextIO) -> Iterator[GridDrawing]:
    for no, line in enumerate(fh, 1):
        if line.strip():
            try:
                yield drawing_from_dict(json.loads(line))
            except json.JSONDecodeError as exc:
                raise ParseError("bad-json", exc.msg, no, exc.colno) from None
