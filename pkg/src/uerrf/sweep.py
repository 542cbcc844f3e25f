"""Column-by-column grid sweep with the Up/Left arrays.

Interior grid points of a candidate rectangle are visited left to right,
each column top to bottom.  ``left[j]`` holds the open horizontal edge
entering row ``j`` from the left (its placed source and unplaced target),
``up[i]`` the open vertical edge entering column ``i`` from above.  At a
point the two arrays decide between placing a vertex, putting a crossing
or leaving it empty; a placed vertex then sends its remaining edges to the
right and downwards.  When that split is not forced, the alternatives are
explored depth first, so the search is complete for a given rectangle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .drawing import (
    GridDrawing,
    Model,
    PlanarizedDrawing,
    Point,
    _is_rectangle_walk,
    _walk_area2,
    planarize,
    trace_grid_faces,
    validate,
)
from .graph import Graph
from .outcome import RectangleCandidate, Rejected

EAST, SOUTH = "E", "S"


@dataclass
class SweepStats:
    points: int = 0
    placements: int = 0
    crossings: int = 0
    branches: int = 0
    backtracks: int = 0
    max_visits: int = 0
    invariant_violations: list[str] = field(default_factory=list)


class _State:
    __slots__ = ("pos", "left", "up", "visits", "decisions")

    def __init__(self, pos, left, up) -> None:
        self.pos: dict[int, Point] = pos
        self.left: list[tuple[int, int] | None] = left
        self.up: list[tuple[int, int] | None] = up
        self.visits: dict[int, int] = {}
        # (kind, index, rightmost source) for null arrays, checked afterwards
        self.decisions: list[tuple[str, int, int]] = []

    def copy(self) -> "_State":
        s = _State(dict(self.pos), list(self.left), list(self.up))
        s.visits = dict(self.visits)
        s.decisions = list(self.decisions)
        return s


class GridSweep:
    """One rectangle, one optional large-angle assignment, one search."""

    def __init__(
        self,
        g: Graph,
        rect: RectangleCandidate,
        angles: Mapping[int, Sequence[int]] | None = None,
        debug: bool = False,
    ) -> None:
        self.g = g
        self.rect = rect
        self.angles = {v: frozenset(p) for v, p in angles.items()} if angles is not None else None
        self.debug = debug
        self.stats = SweepStats()
        self.w, self.h = rect.width, rect.height
        self.boundary = rect.positions()
        self.on_c = set(rect.cycle)
        self.right_side = {y: v for v, (x, y) in self.boundary.items() if x == self.w}
        self.bottom_side = {x: v for v, (x, y) in self.boundary.items() if y == 0}
        n_c = len(rect.cycle)
        self.cycle_nbrs = {rect.cycle[i]: {rect.cycle[i - 1], rect.cycle[(i + 1) % n_c]} for i in range(n_c)}

    # -- setup --------------------------------------------------------------

    def _initial_state(self) -> _State:
        g, w, h = self.g, self.w, self.h
        self.rect.check_corners(g)
        for v in self.rect.cycle:
            if g.degree(v) > 3:
                raise Rejected("bad-left-init", f"boundary vertex {v} has degree {g.degree(v)}")
            if self.angles is not None and g.degree(v) == 3 and self.angles[v] != frozenset(self.cycle_nbrs[v]):
                raise Rejected("angle-mismatch", f"large angle at boundary vertex {v} is not along the boundary")
        for v in g.vertices():
            if v not in self.on_c and (w < 2 or h < 2):
                raise Rejected("unplaced-remainder", "rectangle has no interior points")
        left: list[tuple[int, int] | None] = [None] * (h + 1)
        up: list[tuple[int, int] | None] = [None] * (w + 1)
        for v, (x, y) in self.boundary.items():
            if v in self.rect.corners:
                continue
            inner = [u for u in g.neighbors(v) if u not in self.cycle_nbrs[v]]
            if not inner:
                continue
            t = inner[0]
            if x == 0:
                if t in self.on_c and self.right_side.get(y) != t:
                    raise Rejected("bad-left-init", f"left-side vertex {v} meets boundary vertex {t} off its row")
                left[y] = (v, t)
            elif y == h:
                if t in self.on_c and self.bottom_side.get(x) != t:
                    raise Rejected("bad-left-init", f"top-side vertex {v} meets boundary vertex {t} off its column")
                up[x] = (v, t)
        return _State(dict(self.boundary), left, up)

    # -- search -------------------------------------------------------------

    def run(self) -> GridDrawing:
        points = [(i, j) for i in range(1, self.w) for j in range(self.h - 1, 0, -1)]
        stack: list[tuple[int, _State, int | None]] = [(0, self._initial_state(), None)]
        last: Rejected | None = None
        while stack:
            k, state, pending = stack.pop()
            try:
                if pending is not None:
                    self._close_column(state, pending)
                d = self._advance(points, k, state, stack)
            except Rejected as exc:
                last = exc
                self.stats.backtracks += 1
                continue
            return d
        assert last is not None
        raise last

    def _advance(self, points, k, state: _State, stack) -> GridDrawing:
        while k < len(points):
            i, j = points[k]
            k += 1
            self.stats.points += 1
            options = self._visit(state, i, j)
            if options is not None:
                if len(options) > 1:
                    self.stats.branches += 1
                    for alt in reversed(options[1:]):
                        stack.append((k, alt, i if j == 1 else None))
                state = options[0]
            if j == 1:
                self._close_column(state, i)
        return self._finish(state)

    def _visit(self, state: _State, i: int, j: int) -> list[_State] | None:
        lft, upv = state.left[j], state.up[i]
        lt = lft[1] if lft else None
        ut = upv[1] if upv else None
        if lt is not None and ut is not None and lt != ut:
            self.stats.crossings += 1
            return None
        target = lt if lt is not None else ut
        if target is None:
            if lft is None:
                state.decisions.append(("row", j, i))
            if upv is None:
                state.decisions.append(("col", i, j))
            return None
        if target in self.on_c:
            raise Rejected("z-position-invalid", f"edge towards boundary vertex {target} stops inside at {(i, j)}")
        if target in state.pos:
            raise Rejected("traversal-hits-fixed", f"{target} reached twice")
        return self._place(state, target, i, j, from_left=lt == target, from_up=ut == target)

    def _place(self, state: _State, v: int, i: int, j: int, from_left: bool, from_up: bool) -> list[_State]:
        g = self.g
        self.stats.placements += 1
        sources = set()
        if from_left:
            sources.add(state.left[j][0])
        if from_up:
            sources.add(state.up[i][0])
        free = []
        for u in g.neighbors(v):
            if u in sources:
                continue
            if u in state.pos and u not in self.on_c:
                raise Rejected("traversal-hits-fixed", f"{v} is adjacent to fixed vertex {u} off its row/column")
            if u in state.pos and u not in (self.right_side.get(j), self.bottom_side.get(i)):
                raise Rejected("anchor-misaligned", f"{v} at {(i, j)} cannot reach boundary vertex {u}")
            free.append(u)
        if not free:
            raise Rejected("U-empty", f"{v} has no edge left to draw")
        if len(free) > 2:
            raise Rejected("U-too-big", f"{v} has {len(free)} undrawn edges")
        deg = g.degree(v)
        if deg == 2 and from_left and from_up:
            raise Rejected("U-empty", f"degree-2 vertex {v} would bend")
        if deg == 4 and not (from_left and from_up):
            raise Rejected("U-too-big", f"degree-4 vertex {v} needs both incoming directions")
        layouts = self._layouts(state, v, i, j, free, from_left, from_up)
        if not layouts:
            raise Rejected("anchor-misaligned", f"no consistent direction for the edges of {v}")
        out = []
        for east, south in layouts:
            s = state.copy() if len(layouts) > 1 else state
            s.pos[v] = (i, j)
            s.left[j] = (v, east) if east is not None else None
            s.up[i] = (v, south) if south is not None else None
            out.append(s)
        return out

    def _layouts(self, state: _State, v, i, j, free, from_left, from_up) -> list[tuple[int | None, int | None]]:
        """Consistent (east target, south target) splits of the undrawn edges of ``v``."""
        g = self.g
        deg = g.degree(v)
        if len(free) == 1:
            u = free[0]
            if from_left and from_up:
                cands = [(u, None), (None, u)]
            elif from_left:
                cands = [(u, None)] if deg == 2 else []
            else:
                cands = [(None, u)] if deg == 2 else []
        else:
            a, b = free
            cands = [(a, b), (b, a)]
        a_pair = self.angles.get(v) if self.angles is not None and deg == 3 else None
        ok = []
        for east, south in cands:
            if a_pair is not None and not self._angle_ok(state, v, i, j, a_pair, east, south, from_left, from_up):
                continue
            if east is not None and not self._feasible(state, v, east, EAST, i, j):
                continue
            if south is not None and not self._feasible(state, v, south, SOUTH, i, j):
                continue
            ok.append((east, south))
        if len(ok) > 1:
            ok.sort(key=lambda es: self._preference(state, es))
        return ok

    def _angle_ok(self, state, v, i, j, pair, east, south, from_left, from_up) -> bool:
        by_dir = {}
        if from_left:
            by_dir["W"] = state.left[j][0]
        if from_up:
            by_dir["N"] = state.up[i][0]
        if east is not None:
            by_dir["E"] = east
        if south is not None:
            by_dir["S"] = south
        for d1, d2 in (("W", "E"), ("N", "S")):
            if {by_dir.get(d1), by_dir.get(d2)} == set(pair):
                fixed = sum(1 for u in pair if u in (by_dir.get("W"), by_dir.get("N")))
                if self.debug and fixed != 1:
                    self.stats.invariant_violations.append(f"angle partners of {v}: {fixed} fixed")
                return True
        return False

    def _feasible(self, state: _State, v: int, u: int, direction: str, i: int, j: int) -> bool:
        """Sound local test that the edge v-u can leave ``v`` in ``direction``."""
        if u in self.on_c:
            return (self.right_side.get(j) == u) if direction == EAST else (self.bottom_side.get(i) == u)
        for jj, e in enumerate(state.left):
            if e is not None and e[1] == u and (direction == EAST or jj >= j):
                return False
        for ii, e in enumerate(state.up):
            if e is not None and e[1] == u and (direction == SOUTH or ii <= i):
                return False
        # follow the straight chain of degree-2 vertices
        prev, cur, steps = v, u, 1
        while self.g.degree(cur) == 2 and cur not in self.on_c:
            state.visits[cur] = state.visits.get(cur, 0) + 1
            self.stats.max_visits = max(self.stats.max_visits, state.visits[cur])
            a, b = self.g.neighbors(cur)
            prev, cur = cur, (b if a == prev else a)
            steps += 1
            if cur == v:
                return False
        if cur in state.pos and cur not in self.on_c:
            return False
        if cur in self.on_c:
            x, y = self.boundary[cur]
            if direction == EAST:
                return self.right_side.get(j) == cur and self.w - i >= steps
            return self.bottom_side.get(i) == cur and j >= steps
        if direction == EAST:
            return self.w - i > steps
        return j > steps

    def _preference(self, state: _State, es) -> tuple:
        # prefer sending down a vertex whose row is already decided
        east, south = es
        rows = {e[1] for e in state.left if e is not None}
        return (0 if south in rows else 1, 0 if east not in rows else 1)

    def _close_column(self, state: _State, i: int) -> None:
        e = state.up[i]
        b = self.bottom_side.get(i)
        need = b is not None and b not in self.rect.corners and self.g.degree(b) == 3
        if e is None:
            if need:
                raise Rejected("unplaced-remainder", f"bottom vertex {b} is never reached")
            return
        if e[1] != b:
            raise Rejected("z-position-invalid", f"vertical edge from {e[0]} leaves column {i} at the bottom")
        state.up[i] = None

    def _finish(self, state: _State) -> GridDrawing:
        for j in range(1, self.h):
            e = state.left[j]
            r = self.right_side.get(j)
            need = r is not None and self.g.degree(r) == 3
            if e is None:
                if need:
                    raise Rejected("unplaced-remainder", f"right vertex {r} is never reached")
            elif e[1] != r:
                raise Rejected("z-position-invalid", f"horizontal edge from {e[0]} leaves row {j}")
        if self.w < 2 or self.h < 2:
            for i in range(1, self.w):
                self._close_column(state, i)
        missing = [v for v in self.g.vertices() if v not in state.pos]
        if missing:
            raise Rejected("unplaced-remainder", f"{len(missing)} vertices not placed")
        d = GridDrawing(self.g, tuple(state.pos[v] for v in self.g.vertices()), Model.RF)
        report = validate(d)
        if not report.valid:
            raise Rejected("invalid-result", ", ".join(report.codes))
        if self.debug:
            self._check_invariants(d, state)
        return d

    # -- debug checks -------------------------------------------------------

    def _check_invariants(self, d: GridDrawing, state: _State) -> None:
        bad = self.stats.invariant_violations
        pos = d.positions
        for kind, idx, at in state.decisions:
            # a null array entry means nothing crosses that point along the line
            if kind == "row":
                for v in self.g.vertices():
                    for u in self.g.neighbors(v):
                        (x1, y1), (x2, y2) = pos[v], pos[u]
                        if y1 == y2 == idx and min(x1, x2) < at < max(x1, x2):
                            bad.append(f"I2: row {idx} crossed at column {at}")
            else:
                for v in self.g.vertices():
                    for u in self.g.neighbors(v):
                        (x1, y1), (x2, y2) = pos[v], pos[u]
                        if x1 == x2 == idx and min(y1, y2) < at < max(y1, y2):
                            bad.append(f"I3: column {idx} crossed at row {at}")
        if self.stats.max_visits > 4:
            bad.append(f"traversal visited a vertex {self.stats.max_visits} times")
        pd = planarize(d)
        interior = [(i, j) for i in range(1, self.w) for j in range(self.h - 1, 0, -1)]
        done = {p for p in pd.links if p[0] in (0, self.w) or p[1] in (0, self.h)}
        for p in interior:
            done.add(p)
            if p in pd.links and p in pd.real_at and not frontier_faces_ok(pd, done):
                bad.append(f"I1: more than one open face after placing {pd.real_at[p]}")


def frontier_faces_ok(pd: PlanarizedDrawing, done: set[Point]) -> bool:
    """At most one internal face of the part of ``pd`` spanned by ``done`` is not a rectangle."""
    links = {p: {k: q for k, q in nb.items() if q in done} for p, nb in pd.links.items() if p in done}
    part = PlanarizedDrawing({p: v for p, v in pd.real_at.items() if p in done}, pd.crossings & done, links)
    bad = 0
    for f in trace_grid_faces(part):
        if _walk_area2(f) > 0 and not _is_rectangle_walk(f, 1):
            bad += 1
    return bad <= 1


def sweep_rectangle(
    g: Graph,
    rect: RectangleCandidate,
    angles: Mapping[int, Sequence[int]] | None = None,
    debug: bool = False,
    stats: SweepStats | None = None,
) -> GridDrawing:
    sweep = GridSweep(g, rect, angles, debug)
    try:
        return sweep.run()
    finally:
        if stats is not None:
            _merge(stats, sweep.stats)


def _merge(into: SweepStats, other: SweepStats) -> None:
    into.points += other.points
    into.placements += other.placements
    into.crossings += other.crossings
    into.branches += other.branches
    into.backtracks += other.backtracks
    into.max_visits = max(into.max_visits, other.max_visits)
    into.invariant_violations.extend(other.invariant_violations)
