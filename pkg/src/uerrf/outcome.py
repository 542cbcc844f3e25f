"""Recognition results, constraint bundles and rectangle candidates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .drawing import GridDrawing, Point, external_walk, rotation_of
from .graph import Graph, GraphError, RotationSystem


class Rejected(Exception):
    """Raised inside recognizers when the current guess (or the instance) is rejected."""

    def __init__(self, code: str, detail: str = "") -> None:
        super().__init__(f"{code}: {detail}" if detail else code)
        self.code = code
        self.detail = detail


class ConstraintError(GraphError):
    """Malformed constraint: refers to missing vertices, is not a cycle, and so on."""


ACCEPT, REJECT, UNKNOWN = "accept", "reject", "unknown"


@dataclass
class RecognitionOutcome:
    verdict: str
    drawing: GridDrawing | None = None
    reason: str | None = None
    detail: str = ""
    stats: dict = field(default_factory=dict)

    @property
    def accepted(self) -> bool:
        return self.verdict == ACCEPT

    def __bool__(self) -> bool:
        return self.accepted

    @classmethod
    def accept(cls, drawing: GridDrawing, **stats) -> "RecognitionOutcome":
        return cls(ACCEPT, drawing, stats=stats)

    @classmethod
    def reject(cls, reason: str, detail: str = "", **stats) -> "RecognitionOutcome":
        return cls(REJECT, None, reason, detail, stats=stats)

    @classmethod
    def unknown(cls, detail: str = "", **stats) -> "RecognitionOutcome":
        return cls(UNKNOWN, None, "budget-exceeded", detail, stats=stats)


@dataclass(frozen=True)
class Constraints:
    external_cycle: tuple[int, ...] | None = None
    rotation: RotationSystem | None = None
    corners: tuple[int, ...] | None = None
    angles: Mapping[int, tuple[int, int]] | None = None

    def is_empty(self) -> bool:
        return self.external_cycle is None and self.rotation is None and self.corners is None and self.angles is None

    def check(self, g: Graph) -> None:
        """Raise ``ConstraintError`` when a constraint does not fit ``g``."""
        if self.rotation is not None:
            try:
                self.rotation.check(g)
            except GraphError as exc:
                raise ConstraintError("bad-rotation", str(exc)) from None
        if self.external_cycle is not None:
            check_cycle(g, self.external_cycle)
        if self.corners is not None:
            cs = self.corners
            if len(cs) != 4 or len(set(cs)) != 4:
                raise ConstraintError("bad-corners", "exactly four distinct corners required")
            for c in cs:
                if not 0 <= c < g.n:
                    raise ConstraintError("dangling-id", f"corner {c}")
            if self.external_cycle is not None and not set(cs) <= set(self.external_cycle):
                raise ConstraintError("bad-corners", "corners must lie on the external cycle")
        if self.angles is not None:
            check_angles(g, self.angles)


def check_cycle(g: Graph, cycle: Sequence[int]) -> None:
    if len(cycle) < 4 or len(set(cycle)) != len(cycle):
        raise ConstraintError("bad-cycle", "external cycle must be a simple cycle of length at least 4")
    for v in cycle:
        if not 0 <= v < g.n:
            raise ConstraintError("dangling-id", f"cycle vertex {v}")
    for i, v in enumerate(cycle):
        if not g.has_edge(v, cycle[(i + 1) % len(cycle)]):
            raise ConstraintError("bad-cycle", f"{v} and {cycle[(i + 1) % len(cycle)]} are not adjacent")


def check_angles(g: Graph, angles: Mapping[int, tuple[int, int]]) -> None:
    deg3 = {v for v in g.vertices() if g.degree(v) == 3}
    for v, pair in angles.items():
        if not 0 <= v < g.n:
            raise ConstraintError("dangling-id", f"angle vertex {v}")
        if v not in deg3:
            raise ConstraintError("bad-angle", f"vertex {v} has degree {g.degree(v)}, not 3")
        a, b = pair
        if a == b or not g.has_edge(v, a) or not g.has_edge(v, b):
            raise ConstraintError("bad-angle", f"angle at {v} must name two distinct neighbors")
    missing = deg3 - set(angles)
    if missing:
        raise ConstraintError("bad-angle", f"no large angle given for degree-3 vertices {sorted(missing)}")


def cycle_distance(cycle: Sequence[int], a: int, b: int) -> int:
    n = len(cycle)
    return (cycle.index(b) - cycle.index(a)) % n


def normalize_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Rotate to start at the smallest id and walk towards its smaller cycle neighbor."""
    cyc = list(cycle)
    k = cyc.index(min(cyc))
    cyc = cyc[k:] + cyc[:k]
    if len(cyc) > 2 and cyc[-1] < cyc[1]:
        cyc = [cyc[0]] + cyc[1:][::-1]
    return tuple(cyc)


@dataclass(frozen=True)
class RectangleCandidate:
    """A cycle drawn as a ``width`` x ``height`` rectangle.

    ``cycle[0]`` is the first corner, placed at the origin; the cycle runs
    along the bottom side to the right, then up, left and down, so
    ``corners`` sit at ``(0,0)``, ``(w,0)``, ``(w,h)``, ``(0,h)``.
    """

    cycle: tuple[int, ...]
    corners: tuple[int, int, int, int]
    width: int
    height: int

    @classmethod
    def build(cls, cycle: Sequence[int], corners: Iterable[int]) -> "RectangleCandidate":
        """Rectangle with the given corner set; ``Rejected`` unless opposite sides match."""
        cyc = list(cycle)
        cset = set(corners)
        if len(cset) != 4 or not cset <= set(cyc):
            raise Rejected("bad-corners", "four distinct cycle vertices required")
        first = min(cset)
        k = cyc.index(first)
        cyc = cyc[k:] + cyc[:k]
        order = [v for v in cyc if v in cset]
        d = [cycle_distance(cyc, order[i], order[(i + 1) % 4]) for i in range(4)]
        if d[0] != d[2] or d[1] != d[3]:
            raise Rejected("unequal-opposite-sides", f"side lengths {d}")
        return cls(tuple(cyc), tuple(order), d[0], d[1])  # type: ignore[arg-type]

    @property
    def interior_points(self) -> int:
        return max(self.width - 1, 0) * max(self.height - 1, 0)

    def mirrored(self) -> "RectangleCandidate":
        cyc = (self.cycle[0],) + tuple(reversed(self.cycle[1:]))
        c = self.corners
        return RectangleCandidate(cyc, (c[0], c[3], c[2], c[1]), self.height, self.width)

    def positions(self) -> dict[int, Point]:
        w, h = self.width, self.height
        out = {}
        for t, v in enumerate(self.cycle):
            if t <= w:
                out[v] = (t, 0)
            elif t <= w + h:
                out[v] = (w, t - w)
            elif t <= 2 * w + h:
                out[v] = (w - (t - w - h), h)
            else:
                out[v] = (0, h - (t - 2 * w - h))
        return out

    def side_of(self) -> dict[int, str]:
        """'bottom', 'right', 'top', 'left' for non-corner vertices; 'corner' otherwise."""
        w, h = self.width, self.height
        out = {}
        for v, (x, y) in self.positions().items():
            if v in self.corners:
                out[v] = "corner"
            elif y == 0:
                out[v] = "bottom"
            elif x == w:
                out[v] = "right"
            elif y == h:
                out[v] = "top"
            else:
                out[v] = "left"
        return out

    def check_corners(self, g: Graph) -> None:
        for c in self.corners:
            if g.degree(c) != 2:
                raise Rejected("bad-corner-degree", f"corner {c} has degree {g.degree(c)}")


def rectangles_for_cycle(g: Graph, cycle: Sequence[int], corners: Iterable[int] | None = None) -> list[RectangleCandidate]:
    """Every rectangle on ``cycle`` with degree-2 corners and equal opposite sides.

    With ``corners`` given at most one rectangle is returned; otherwise each
    pair of adjacent corners is guessed and the remaining two are inferred.
    """
    cyc = list(cycle)
    n = len(cyc)
    if n < 4 or n % 2:
        return []
    if corners is not None:
        try:
            rect = RectangleCandidate.build(cyc, corners)
            rect.check_corners(g)
        except Rejected:
            return []
        return [rect]
    deg2 = [i for i, v in enumerate(cyc) if g.degree(v) == 2]
    is2 = {i for i in deg2}
    seen = set()
    out = []
    half = n // 2
    for i in deg2:
        for w in range(1, half):
            idx = (i, (i + w) % n, (i + half) % n, (i + half + w) % n)
            if not all(t in is2 for t in idx):
                continue
            key = frozenset(cyc[t] for t in idx)
            if key in seen:
                continue
            seen.add(key)
            out.append(RectangleCandidate.build(cyc, key))
    return out


def same_cycle(a: Sequence[int], b: Sequence[int]) -> bool:
    """Equal as cycles, up to starting point and direction."""
    if len(a) != len(b) or set(a) != set(b):
        return False
    if not a:
        return True
    k = list(b).index(a[0])
    rot = list(b[k:]) + list(b[:k])
    return rot == list(a) or [rot[0]] + rot[1:][::-1] == list(a)


def satisfies(d: GridDrawing, cons: Constraints) -> bool:
    """Whether drawing ``d`` realizes every constraint in ``cons``."""
    if cons.rotation is not None and rotation_of(d) != cons.rotation:
        return False
    if cons.external_cycle is not None or cons.corners is not None:
        cycle, corners = external_walk(d)
        if cons.corners is not None and set(corners) != set(cons.corners):
            return False
        if cons.external_cycle is not None and not same_cycle(cycle, cons.external_cycle):
            return False
    if cons.angles is not None:
        for v, (a, b) in cons.angles.items():
            (xa, ya), (xb, yb) = d.positions[a], d.positions[b]
            if xa != xb and ya != yb:
                return False
    return True
