"""Grid drawings, their planarization, and the independent UER-RF / UER-USF validator."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .graph import Graph, GraphError, RotationSystem

Point = tuple[int, int]

# Directions in counterclockwise order.
EAST, NORTH, WEST, SOUTH = 0, 1, 2, 3
STEP = {EAST: (1, 0), NORTH: (0, 1), WEST: (-1, 0), SOUTH: (0, -1)}
# Clockwise reading order used for rotation systems.
CLOCKWISE = (NORTH, EAST, SOUTH, WEST)


class Model(str, Enum):
    RF = "RF"
    USF = "USF"

    @classmethod
    def parse(cls, value: "str | Model") -> "Model":
        if isinstance(value, Model):
            return value
        try:
            return cls(value.upper())
        except ValueError:
            raise ValueError(f"unknown model {value!r}; expected 'rf' or 'usf'") from None


# Fixed violation vocabulary.
NON_UNIT_EDGE = "non-unit-edge"
NON_RECT_FACE = "non-rect-face"
NON_SQUARE_FACE = "non-square-face"
BAD_CORNER_DEGREE = "bad-corner-degree"
UNEQUAL_OPPOSITE_SIDES = "unequal-opposite-sides"
VERTEX_ON_EDGE = "vertex-on-edge"
OVERLAP = "overlap"
DUPLICATE_POSITION = "duplicate-position"
NON_RECTILINEAR_EDGE = "non-rectilinear-edge"
BAD_EXTERNAL_VERTEX = "bad-external-vertex"
DISCONNECTED = "disconnected"
EMPTY = "empty"


def direction(a: Point, b: Point) -> int:
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dy == 0 and dx > 0:
        return EAST
    if dy == 0 and dx < 0:
        return WEST
    if dx == 0 and dy > 0:
        return NORTH
    if dx == 0 and dy < 0:
        return SOUTH
    raise ValueError(f"{a} -> {b} is not axis-aligned")


@dataclass(frozen=True)
class GridDrawing:
    """Integer placement of every vertex of ``graph``; crossings are derived, never stored."""

    graph: Graph
    positions: tuple[Point, ...]
    model: Model = Model.RF

    def __post_init__(self) -> None:
        object.__setattr__(self, "positions", tuple((int(x), int(y)) for x, y in self.positions))
        object.__setattr__(self, "model", Model.parse(self.model))
        if len(self.positions) != self.graph.n:
            raise GraphError("bad-drawing", "one position per vertex required")

    @property
    def min_x(self) -> int:
        return min(p[0] for p in self.positions)

    @property
    def min_y(self) -> int:
        return min(p[1] for p in self.positions)

    @property
    def width(self) -> int:
        xs = [p[0] for p in self.positions]
        return max(xs) - min(xs) if xs else 0

    @property
    def height(self) -> int:
        ys = [p[1] for p in self.positions]
        return max(ys) - min(ys) if ys else 0

    @property
    def dimensions(self) -> tuple[int, int]:
        return (self.width, self.height)

    def position(self, v: int) -> Point:
        return self.positions[v]

    def with_model(self, model: Model | str) -> "GridDrawing":
        return GridDrawing(self.graph, self.positions, Model.parse(model))

    def transformed(self, k: int) -> "GridDrawing":
        """Apply symmetry ``k`` of the square (0..7) and translate to the origin."""
        pts = [_SYMMETRIES[k](x, y) for x, y in self.positions]
        return GridDrawing(self.graph, _translate(pts), self.model)

    def mirrored(self) -> "GridDrawing":
        return self.transformed(4)


_SYMMETRIES = (
    lambda x, y: (x, y),
    lambda x, y: (-y, x),
    lambda x, y: (-x, -y),
    lambda x, y: (y, -x),
    lambda x, y: (-x, y),
    lambda x, y: (y, x),
    lambda x, y: (x, -y),
    lambda x, y: (-y, -x),
)


def _translate(pts: Sequence[Point]) -> tuple[Point, ...]:
    if not pts:
        return ()
    mx = min(p[0] for p in pts)
    my = min(p[1] for p in pts)
    return tuple((x - mx, y - my) for x, y in pts)


# ---------------------------------------------------------------------------
# Planarization
# ---------------------------------------------------------------------------


class PlanarizeError(GraphError):
    def __init__(self, code: str, message: str = "", witness: Sequence[Point] = ()) -> None:
        super().__init__(code, message)
        self.witness = tuple(witness)


@dataclass
class PlanarizedDrawing:
    """Real and crossing vertices on grid points, joined by axis-parallel pieces of edges."""

    real_at: dict[Point, int]
    crossings: set[Point]
    # point -> {direction: neighbor point}
    links: dict[Point, dict[int, Point]]
    faces: list[list[tuple[Point, int]]] = field(default_factory=list)

    @property
    def points(self) -> list[Point]:
        return sorted(self.links, key=lambda p: (p[1], p[0]))

    def edges(self) -> list[tuple[Point, Point]]:
        out = []
        for p, nbrs in self.links.items():
            for q in nbrs.values():
                if p < q:
                    out.append((p, q))
        return sorted(out)

    def is_crossing(self, p: Point) -> bool:
        return p in self.crossings

    def degree(self, p: Point) -> int:
        return len(self.links[p])


def _segments(d: GridDrawing) -> list[tuple[int, int, Point, Point]]:
    segs = []
    for u, v in d.graph.edges():
        a, b = d.positions[u], d.positions[v]
        if a[0] != b[0] and a[1] != b[1]:
            raise PlanarizeError(NON_RECTILINEAR_EDGE, f"edge ({u}, {v}) is neither horizontal nor vertical", (a, b))
        segs.append((u, v, min(a, b), max(a, b)))
    return segs


def _on_open_segment(p: Point, a: Point, b: Point) -> bool:
    if a[1] == b[1] == p[1]:
        return a[0] < p[0] < b[0]
    if a[0] == b[0] == p[0]:
        return a[1] < p[1] < b[1]
    return False


def planarize(d: GridDrawing) -> PlanarizedDrawing:
    """Insert a crossing-vertex wherever a horizontal and a vertical edge cross."""
    seen: dict[Point, int] = {}
    for v, p in enumerate(d.positions):
        if p in seen:
            raise PlanarizeError(DUPLICATE_POSITION, f"vertices {seen[p]} and {v} share {p}", (p,))
        seen[p] = v
    segs = _segments(d)
    horizontal = [s for s in segs if s[2][1] == s[3][1]]
    vertical = [s for s in segs if s[2][0] == s[3][0]]
    for group, axis in ((horizontal, 1), (vertical, 0)):
        by_line: dict[int, list[tuple[int, int, Point, Point]]] = {}
        for s in group:
            by_line.setdefault(s[2][axis], []).append(s)
        for line in by_line.values():
            line.sort(key=lambda s: s[2][1 - axis])
            for s, t in zip(line, line[1:]):
                if t[2][1 - axis] < s[3][1 - axis]:
                    raise PlanarizeError(OVERLAP, f"edges ({s[0]}, {s[1]}) and ({t[0]}, {t[1]}) overlap", (t[2], s[3]))
    for u, v, a, b in segs:
        for w, p in enumerate(d.positions):
            if w != u and w != v and _on_open_segment(p, a, b):
                raise PlanarizeError(VERTEX_ON_EDGE, f"vertex {w} lies inside edge ({u}, {v})", (p,))
    cuts: dict[int, set[Point]] = {i: {s[2], s[3]} for i, s in enumerate(segs)}
    crossings: set[Point] = set()
    index = {id(s): i for i, s in enumerate(segs)}
    for h in horizontal:
        y = h[2][1]
        for vt in vertical:
            x = vt[2][0]
            if h[2][0] < x < h[3][0] and vt[2][1] < y < vt[3][1]:
                p = (x, y)
                crossings.add(p)
                cuts[index[id(h)]].add(p)
                cuts[index[id(vt)]].add(p)
    links: dict[Point, dict[int, Point]] = {p: {} for p in d.positions}
    for p in crossings:
        links[p] = {}
    for i, s in enumerate(segs):
        pts = sorted(cuts[i])
        for a, b in zip(pts, pts[1:]):
            links[a][direction(a, b)] = b
            links[b][direction(b, a)] = a
    pd = PlanarizedDrawing(real_at=dict(seen), crossings=crossings, links=links)
    pd.faces = trace_grid_faces(pd)
    return pd


def trace_grid_faces(pd: PlanarizedDrawing) -> list[list[tuple[Point, int]]]:
    """Face walks as (point, outgoing direction) lists, each face on the left of its walk."""
    seen: set[tuple[Point, int]] = set()
    faces = []
    for p in sorted(pd.links):
        for dr in sorted(pd.links[p]):
            if (p, dr) in seen:
                continue
            walk = []
            a, da = p, dr
            while (a, da) not in seen:
                seen.add((a, da))
                walk.append((a, da))
                b = pd.links[a][da]
                back = (da + 2) % 4
                nbrs = pd.links[b]
                for k in (1, 2, 3, 4):
                    cand = (back - k) % 4
                    if cand in nbrs:
                        a, da = b, cand
                        break
            faces.append(walk)
    return faces


def _walk_area2(walk: Sequence[tuple[Point, int]]) -> int:
    pts = [p for p, _ in walk]
    s = 0
    for i, (x1, y1) in enumerate(pts):
        x2, y2 = pts[(i + 1) % len(pts)]
        s += x1 * y2 - x2 * y1
    return s


def _turns(walk: Sequence[tuple[Point, int]]) -> list[int]:
    return [(walk[(i + 1) % len(walk)][1] - walk[i][1]) % 4 for i in range(len(walk))]


def _is_rectangle_walk(walk: Sequence[tuple[Point, int]], turn: int) -> bool:
    pts = [p for p, _ in walk]
    if len(set(pts)) != len(pts):
        return False
    turns = _turns(walk)
    return all(t in (0, turn) for t in turns) and turns.count(turn) == 4


def external_face(pd: PlanarizedDrawing) -> list[tuple[Point, int]] | None:
    outer = [f for f in pd.faces if _walk_area2(f) < 0]
    if len(outer) != 1:
        return None
    return outer[0]


def _walk_corners(walk: Sequence[tuple[Point, int]]) -> list[int]:
    """Indices in ``walk`` of the points where the walk turns."""
    n = len(walk)
    return [(i + 1) % n for i in range(n) if walk[(i + 1) % n][1] != walk[i][1]]


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    code: str
    description: str
    witness: tuple[Point, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    @property
    def codes(self) -> list[str]:
        return [v.code for v in self.violations]

    def __bool__(self) -> bool:
        return self.valid


def validate(d: GridDrawing) -> ValidationReport:
    """Check every UER-RF condition, plus unit-square faces for the USF model."""
    if d.graph.n == 0:
        return ValidationReport((Violation(EMPTY, "drawing has no vertices"),))
    try:
        pd = planarize(d)
    except PlanarizeError as exc:
        return ValidationReport((Violation(exc.code, str(exc), exc.witness),))
    out: list[Violation] = []
    for a, b in pd.edges():
        if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
            out.append(Violation(NON_UNIT_EDGE, f"planarized edge {a}-{b} is longer than one unit", (a, b)))
    if not _links_connected(pd):
        out.append(Violation(DISCONNECTED, "planarized drawing is disconnected"))
    if any(not pd.links[p] for p in pd.links):
        out.append(Violation(DISCONNECTED, "isolated vertex"))
    if out:
        return ValidationReport(tuple(out))
    outer = external_face(pd)
    if outer is None:
        return ValidationReport((Violation(NON_RECT_FACE, "no unique external face"),))
    for f in pd.faces:
        if f is outer:
            if not _is_rectangle_walk(f, 3):
                out.append(Violation(NON_RECT_FACE, "external boundary is not a rectangle", tuple(p for p, _ in f)))
        elif not _is_rectangle_walk(f, 1):
            out.append(Violation(NON_RECT_FACE, "internal face is not a rectangle", tuple(p for p, _ in f)))
        elif d.model is Model.USF and len(f) != 4:
            out.append(Violation(NON_SQUARE_FACE, "internal face is not a unit square", tuple(p for p, _ in f)))
    if out:
        return ValidationReport(tuple(out))
    out.extend(_property1(d, pd, outer))
    return ValidationReport(tuple(out))


def _links_connected(pd: PlanarizedDrawing) -> bool:
    pts = list(pd.links)
    if not pts:
        return True
    seen = {pts[0]}
    stack = [pts[0]]
    while stack:
        p = stack.pop()
        for q in pd.links[p].values():
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return len(seen) == len(pts)


def _property1(d: GridDrawing, pd: PlanarizedDrawing, outer: Sequence[tuple[Point, int]]) -> list[Violation]:
    out = []
    corner_idx = _walk_corners(outer)
    for i, (p, _) in enumerate(outer):
        v = pd.real_at.get(p)
        if v is None:
            out.append(Violation(BAD_EXTERNAL_VERTEX, f"crossing on the external cycle at {p}", (p,)))
            continue
        deg = d.graph.degree(v)
        if i in corner_idx and deg != 2:
            out.append(Violation(BAD_CORNER_DEGREE, f"corner vertex {v} has degree {deg}", (p,)))
        elif deg > 3:
            out.append(Violation(BAD_EXTERNAL_VERTEX, f"external vertex {v} has degree {deg}", (p,)))
    if len(corner_idx) == 4:
        n = len(outer)
        sides = [(corner_idx[(k + 1) % 4] - corner_idx[k]) % n for k in range(4)]
        if sides[0] != sides[2] or sides[1] != sides[3]:
            out.append(Violation(UNEQUAL_OPPOSITE_SIDES, f"side lengths {sides}"))
    return out


def is_valid(d: GridDrawing) -> bool:
    return validate(d).valid


# ---------------------------------------------------------------------------
# Canonical form and extraction
# ---------------------------------------------------------------------------


def _canon_key(d: GridDrawing) -> tuple:
    return (d.width < d.height, sorted((y, x) for x, y in d.positions), d.positions)


def canonicalize(d: GridDrawing) -> GridDrawing:
    """Translate to the origin and pick the lexicographically least of the 8 symmetric images."""
    return min((d.transformed(k) for k in range(8)), key=_canon_key)


def rotation_of(d: GridDrawing) -> RotationSystem:
    """Clockwise neighbor order read from the geometry."""
    order = []
    for v in d.graph.vertices():
        p = d.positions[v]
        by_dir = {direction(p, d.positions[w]): w for w in d.graph.neighbors(v)}
        order.append(tuple(by_dir[k] for k in CLOCKWISE if k in by_dir))
    return RotationSystem(tuple(order))


def angles_of(d: GridDrawing) -> dict[int, tuple[int, int]]:
    """For each degree-3 vertex, the two neighbors bounding its 180 degree angle."""
    out = {}
    for v in d.graph.vertices():
        if d.graph.degree(v) != 3:
            continue
        p = d.positions[v]
        by_dir = {direction(p, d.positions[w]): w for w in d.graph.neighbors(v)}
        for k in (EAST, NORTH):
            if k in by_dir and (k + 2) % 4 in by_dir:
                a, b = by_dir[k], by_dir[(k + 2) % 4]
                out[v] = (min(a, b), max(a, b))
    return out


@dataclass(frozen=True)
class Extraction:
    graph: Graph
    rotation: RotationSystem
    external_cycle: tuple[int, ...]
    corners: tuple[int, int, int, int]

    def __iter__(self):
        return iter((self.graph, self.rotation, self.external_cycle, self.corners))


def external_walk(d: GridDrawing) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """External cycle (clockwise from the bottom-left corner) and its corners."""
    pd = planarize(d)
    outer = external_face(pd)
    if outer is None:
        raise GraphError("invalid-drawing", "no external face")
    start = min(range(len(outer)), key=lambda i: (outer[i][0][1], outer[i][0][0]))
    walk = outer[start:] + outer[:start]
    cycle = tuple(pd.real_at[p] for p, _ in walk)
    corners = tuple(pd.real_at[walk[i][0]] for i in sorted(_walk_corners(walk)))
    return cycle, corners


def extract_graph(d: GridDrawing) -> Extraction:
    report = validate(d)
    if not report.valid:
        raise GraphError("invalid-drawing", ", ".join(report.codes))
    cycle, corners = external_walk(d)
    return Extraction(d.graph, rotation_of(d), cycle, corners)  # type: ignore[arg-type]


def drawing_from_points(points: Iterable[tuple[Point, Point]], model: Model | str = Model.RF) -> GridDrawing:
    """Build a drawing from edge segments given by endpoint coordinates."""
    segs = [(tuple(a), tuple(b)) for a, b in points]
    pts = sorted({p for s in segs for p in s}, key=lambda p: (p[1], p[0]))
    index = {p: i for i, p in enumerate(pts)}
    g = Graph(len(pts), [(index[a], index[b]) for a, b in segs])
    return GridDrawing(g, tuple(pts), Model.parse(model))


# ---------------------------------------------------------------------------
# Structural properties of accepted drawings
# ---------------------------------------------------------------------------


def internal_degree3_vertices(d: GridDrawing) -> list[int]:
    cycle, _ = external_walk(d)
    on_c = set(cycle)
    return [v for v in d.graph.vertices() if d.graph.degree(v) == 3 and v not in on_c]


def check_properties(d: GridDrawing) -> list[Violation]:
    """Properties of external cycles, USF degrees and straight paths on a valid drawing."""
    pd = planarize(d)
    outer = external_face(pd)
    assert outer is not None
    g = d.graph
    out = _property1(d, pd, outer)
    cycle = {pd.real_at[p] for p, _ in outer}
    x0, y0 = d.min_x, d.min_y
    x1, y1 = x0 + d.width, y0 + d.height
    corners = {(x0, y0), (x0, y1), (x1, y0), (x1, y1)}
    if d.model is Model.USF:
        for v in g.vertices():
            deg = g.degree(v)
            if v not in cycle and deg != 4:
                out.append(Violation("property2", f"internal vertex {v} has degree {deg}"))
            if v in cycle and d.positions[v] not in corners and deg != 3:
                out.append(Violation("property2", f"external non-corner {v} has degree {deg}"))
    straight = d.model is Model.USF or not any(g.degree(v) == 3 and v not in cycle for v in g.vertices())
    if not straight:
        return out
    vertical = {(p[0], p[1]) for p, q in pd.edges() if p[0] == q[0]}  # lower endpoints
    horizontal = {(p[0], p[1]) for p, q in pd.edges() if p[1] == q[1]}  # left endpoints
    label = "property3" if d.model is Model.USF else "property4"
    for x in range(x0 + 1, x1):
        covered = all((x, y) in vertical for y in range(y0, y1))
        top = pd.real_at.get((x, y1))
        if top is None or covered != (g.degree(top) == 3):
            out.append(Violation(label, f"column {x} coverage disagrees with its top vertex"))
    for y in range(y0 + 1, y1):
        covered = all((x, y) in horizontal for x in range(x0, x1))
        left = pd.real_at.get((x0, y))
        if left is None or covered != (g.degree(left) == 3):
            out.append(Violation(label, f"row {y} coverage disagrees with its left vertex"))
    for v in g.vertices():
        if v in cycle or g.degree(v) != 2:
            continue
        x, y = d.positions[v]
        if (x, y) in vertical or (x, y - 1) in vertical:
            aligned = [pd.real_at.get((x0, y)), pd.real_at.get((x1, y))]
        else:
            aligned = [pd.real_at.get((x, y0)), pd.real_at.get((x, y1))]
        if any(a is None or g.degree(a) != 2 for a in aligned):
            out.append(Violation(label, f"degree-2 vertex {v} has no aligned degree-2 side vertices"))
    return out
