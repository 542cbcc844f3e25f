"""Linear-time UER-USF recognition: external-cycle selection and the top-down path sweep."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .drawing import GridDrawing, Model, rotation_of, validate
from .graph import (
    Graph,
    GraphError,
    edge_key,
    is_biconnected,
    is_planar,
    is_triconnected,
    planar_embedding,
    smooth_degree2,
)
from .outcome import (
    Constraints,
    ConstraintError,
    RecognitionOutcome,
    RectangleCandidate,
    Rejected,
    check_cycle,
    normalize_cycle,
)

CORNER_ORDERS = ((0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3))


# ---------------------------------------------------------------------------
# External cycle
# ---------------------------------------------------------------------------


def corner_orders(corners: Sequence[int], adjacent) -> list[tuple[int, ...]]:
    """The (at most three) circular corner orders compatible with corner adjacencies."""
    out = []
    for perm in CORNER_ORDERS:
        order = tuple(corners[i] for i in perm)
        consecutive = {edge_key(order[i], order[(i + 1) % 4]) for i in range(4)}
        ok = all(edge_key(a, b) in consecutive for a in order for b in order if a < b and adjacent(a, b))
        if ok:
            out.append(order)
    return out


def _face_paths(faces: list[list[int]], a: int, b: int) -> list[tuple[int, ...]]:
    """For each face holding the edge a-b, the rest of its boundary as a path from a to b."""
    out = []
    for f in faces:
        k = len(f)
        for i in range(k):
            x, y = f[i], f[(i + 1) % k]
            if {x, y} == {a, b}:
                # walk the face the long way round, from the edge's end back to its start
                rest = [f[(i + 1 + t) % k] for t in range(k)]
                path = tuple(rest)  # from y around to x
                if y == a:
                    out.append(path)
                else:
                    out.append(tuple(reversed(path)))
    return out


def _cycle_from_paths(paths: Sequence[Sequence[int]]) -> list[int] | None:
    cyc: list[int] = []
    for p in paths:
        cyc.extend(p[:-1])
    if len(set(cyc)) != len(cyc):
        return None
    return cyc


def candidate_cycles_for_order(g2: Graph, order: Sequence[int]) -> tuple[list[list[int]], str | None]:
    """Cycles of ``g2`` through the corners in ``order`` read off the embedding faces.

    Returns the cycles (in ``g2`` ids) and a rejection code when the guess
    fails the planarity/triconnectivity test.
    """
    corner_edges = [edge_key(order[i], order[(i + 1) % 4]) for i in range(4)]
    added = [e for e in corner_edges if not g2.has_edge(*e)]
    aug = g2.with_edges(added)
    if not is_planar(aug):
        return [], "not-planar"
    if not is_triconnected(aug):
        return [], "not-triconnected"
    faces = planar_embedding(aug).faces()
    added_set = set(added)
    per_side: list[list[tuple[int, ...]]] = []
    for i in range(4):
        a, b = order[i], order[(i + 1) % 4]
        if edge_key(a, b) not in added_set:
            per_side.append([(a, b)])
        else:
            per_side.append(_face_paths(faces, a, b))
    out = []
    for choice in product(*per_side):
        if any(edge_key(p[t], p[t + 1]) in added_set for p in choice for t in range(len(p) - 1)):
            continue
        cyc = _cycle_from_paths(choice)
        if cyc is None or len(cyc) != g2.n:
            continue
        if cyc not in out:
            out.append(cyc)
    return out, None


def usf_external_candidates(g: Graph, stats: dict | None = None) -> list[RectangleCandidate]:
    """Rectangles that can be the boundary of a UER-USF drawing of ``g`` (at most six)."""
    stats = stats if stats is not None else {}
    deg = g.degrees()
    corners = [v for v in g.vertices() if deg[v] == 2]
    if len(corners) != 4:
        stats["reason"] = "corner-count"
        return []
    keep = [v for v in g.vertices() if deg[v] != 4]
    g1, ids1 = g.induced(keep)
    if not is_biconnected(g1):
        stats["reason"] = "reduced-not-biconnected"
        return []
    local_corners = [ids1.index(c) for c in corners]
    cycles: list[list[int]] = []
    if all(g1.degree(v) == 2 for v in g1.vertices()):
        cycles.append(_walk_cycle(g1))
    else:
        try:
            g2, smap = smooth_degree2(g1, keep=local_corners)
        except GraphError as exc:
            stats["reason"] = exc.code
            return []
        c2 = sorted(smap.original_ids.index(c) for c in local_corners)
        for order in corner_orders(c2, g2.has_edge):
            found, why = candidate_cycles_for_order(g2, order)
            if why:
                stats.setdefault("order_failures", []).append(why)
            for cyc in found:
                full = smap.expand_cycle(cyc)
                if len(full) == g1.n and full not in cycles:
                    cycles.append(full)
    out = []
    seen = set()
    for cyc in cycles:
        orig = normalize_cycle([ids1[v] for v in cyc])
        try:
            rect = RectangleCandidate.build(orig, corners)
        except Rejected:
            continue
        if orig not in seen:
            seen.add(orig)
            out.append(rect)
    out.sort(key=lambda r: normalize_cycle(r.cycle))
    assert len(out) <= 6
    return out


def _walk_cycle(g: Graph) -> list[int]:
    cyc = [0]
    prev, cur = -1, 0
    while True:
        a, b = g.neighbors(cur)
        prev, cur = cur, (b if a == prev else a)
        if cur == 0:
            return cyc
        cyc.append(cur)


# ---------------------------------------------------------------------------
# Internal placement
# ---------------------------------------------------------------------------


@dataclass
class DirectionAssignment:
    top: dict[int, int] = field(default_factory=dict)
    bottom: dict[int, int] = field(default_factory=dict)
    left: dict[int, int] = field(default_factory=dict)
    right: dict[int, int] = field(default_factory=dict)

    def set_vertical(self, upper: int, lower: int) -> None:
        self.bottom[upper] = lower
        self.top[lower] = upper

    def set_horizontal(self, left: int, right: int) -> None:
        self.right[left] = right
        self.left[right] = left


@dataclass
class SweepCounter:
    steps: int = 0


def _place_paths(
    g: Graph,
    rect: RectangleCandidate,
    counter: SweepCounter,
    require_degree4: bool = True,
    partial_sides: bool = False,
) -> tuple[dict[int, tuple[int, int]], DirectionAssignment]:
    """Assign interior vertices to the crossings of full vertical and horizontal paths.

    With ``partial_sides`` a boundary vertex of degree 2 starts no path.
    Raises ``Rejected`` at the first inconsistency.
    """
    pos = rect.positions()
    on_c = set(rect.cycle)
    w_, h_ = rect.width, rect.height
    left_side = {y: v for v, (x, y) in pos.items() if x == 0}
    right_side = {y: v for v, (x, y) in pos.items() if x == w_}
    top_side = {x: v for v, (x, y) in pos.items() if y == h_}
    bottom_side = {x: v for v, (x, y) in pos.items() if y == 0}
    n_c = len(rect.cycle)
    nxt = {rect.cycle[i]: (rect.cycle[i - 1], rect.cycle[(i + 1) % n_c]) for i in range(n_c)}
    da = DirectionAssignment()

    def extra(v: int, used: Sequence[int]) -> list[int]:
        return [u for u in g.neighbors(v) if u not in used]

    # left side: the only free neighbor is the right neighbor
    for y in range(1, h_):
        counter.steps += 1
        v = left_side[y]
        free = extra(v, nxt[v])
        if partial_sides and not free:
            continue
        if len(free) != 1:
            raise Rejected("right-neighbor-on-wrong-row", f"left-side vertex {v} needs exactly one inner edge")
        w = free[0]
        if w in on_c and right_side.get(y) != w:
            raise Rejected("right-neighbor-on-wrong-row", f"{v} joins boundary vertex {w} off its row")
        if w in da.left:
            raise Rejected("ambiguous-or-no-left-assignment", f"{w} would get two left neighbors")
        da.set_horizontal(v, w)

    for x in range(1, w_):
        u = top_side[x]
        counter.steps += 1
        free = extra(u, nxt[u])
        if partial_sides and not free:
            continue
        if len(free) != 1:
            raise Rejected("bottom-on-wrong-column", f"top-side vertex {u} needs exactly one inner edge")
        cur, w = u, free[0]
        last_y = h_
        while True:
            counter.steps += 1
            if w in da.top:
                raise Rejected("top-already-assigned", f"{w} already has a top neighbor")
            da.set_vertical(cur, w)
            if w in on_c:
                if bottom_side.get(x) != w:
                    raise Rejected("bottom-on-wrong-column", f"{w} is not the bottom vertex of column {x}")
                break
            lft = da.left.get(w)
            if lft is None or lft not in pos:
                raise Rejected("left-neighbor-missing", f"{w} has no placed left neighbor")
            y = pos[lft][1]
            if not 0 < y < last_y:
                raise Rejected("left-neighbor-missing", f"{w} would leave its column order")
            pos[w] = (x, y)
            last_y = y
            rest = extra(w, (cur, lft))
            if require_degree4 and len(rest) != 2:
                raise Rejected("leftover-unplaced-vertices", f"interior vertex {w} does not have degree 4")
            placed = [r for r in rest if r in pos]
            bottom = right = None
            for r in placed:
                if bottom_side.get(x) == r:
                    bottom = r
                elif right_side.get(y) == r:
                    right = r
                else:
                    raise Rejected("bottom-on-wrong-column", f"placed neighbor {r} of {w} is misaligned")
            free_rest = [r for r in rest if r not in pos]
            if bottom is None and right is None:
                with_left = [r for r in free_rest if r in da.left]
                if len(with_left) != 1 or len(free_rest) != 2:
                    raise Rejected("ambiguous-or-no-left-assignment", f"cannot tell the bottom neighbor of {w}")
                bottom = with_left[0]
                right = next(r for r in free_rest if r != bottom)
            elif bottom is None:
                if len(free_rest) != 1:
                    raise Rejected("ambiguous-or-no-left-assignment", f"no bottom candidate for {w}")
                bottom = free_rest[0]
            elif right is None:
                if len(free_rest) != 1:
                    raise Rejected("ambiguous-or-no-left-assignment", f"no right candidate for {w}")
                right = free_rest[0]
            if right in da.left:
                raise Rejected("ambiguous-or-no-left-assignment", f"{right} already has a left neighbor")
            da.set_horizontal(w, right)
            cur, w = w, bottom
    missing = [v for v in g.vertices() if v not in pos]
    if missing:
        raise Rejected("leftover-unplaced-vertices", f"{len(missing)} vertices never reached")
    return pos, da


def usf_place_internal(g: Graph, rect: RectangleCandidate, counter: SweepCounter | None = None) -> GridDrawing:
    """UER-USF drawing with ``rect`` as boundary, or ``Rejected``."""
    counter = counter or SweepCounter()
    rect.check_corners(g)
    for v in rect.cycle:
        if v not in rect.corners and g.degree(v) != 3:
            raise Rejected("leftover-unplaced-vertices", f"boundary vertex {v} must have degree 3")
    pos, _ = _place_paths(g, rect, counter)
    d = GridDrawing(g, tuple(pos[v] for v in g.vertices()), Model.USF)
    report = validate(d)
    if not report.valid:
        raise Rejected(report.codes[0], "sweep output failed validation")
    return d


# ---------------------------------------------------------------------------
# Recognition
# ---------------------------------------------------------------------------


def _prescribed_rectangle(g: Graph, cycle: Sequence[int]) -> RectangleCandidate:
    check_cycle(g, cycle)
    corners = [v for v in g.vertices() if g.degree(v) == 2]
    if len(corners) != 4 or not set(corners) <= set(cycle):
        raise Rejected("corner-count", "the four degree-2 vertices must lie on the cycle")
    return RectangleCandidate.build(normalize_cycle(cycle), corners)


def recognize_usf(g: Graph, constraints: Constraints | None = None) -> RecognitionOutcome:
    """Decide whether ``g`` has a UER-USF drawing respecting ``constraints``."""
    cons = constraints or Constraints()
    cons.check(g)
    if cons.corners is not None or cons.angles is not None:
        raise ConstraintError("unsupported-constraint", "the square-face recognizer takes a cycle and/or rotation only")
    stats: dict = {"steps": 0, "candidates": 0}
    if g.n == 0:
        return RecognitionOutcome.reject("empty", **stats)
    if g.is_cycle():
        if g.n != 4:
            return RecognitionOutcome.reject("cycle-not-c4", f"C{g.n} has no square-face drawing", **stats)
        return _finish_cycle(g, cons, stats)
    if not is_biconnected(g):
        return RecognitionOutcome.reject("not-biconnected", **stats)
    try:
        if cons.external_cycle is not None:
            rects = [_prescribed_rectangle(g, cons.external_cycle)]
        else:
            rects = usf_external_candidates(g, stats)
    except Rejected as exc:
        return RecognitionOutcome.reject(exc.code, exc.detail, **stats)
    stats["candidates"] = len(rects)
    if not rects:
        return RecognitionOutcome.reject("no-external-candidate", stats.pop("reason", ""), **stats)
    failures = []
    counter = SweepCounter()
    for rect in rects:
        for r in ([rect, rect.mirrored()] if cons.rotation is not None else [rect]):
            try:
                d = usf_place_internal(g, r, counter)
            except Rejected as exc:
                failures.append(exc.code)
                continue
            if cons.rotation is not None and rotation_of(d) != cons.rotation:
                failures.append("rotation-mismatch")
                continue
            stats["steps"] = counter.steps
            return RecognitionOutcome.accept(d, **stats)
    stats["steps"] = counter.steps
    return RecognitionOutcome.reject(failures[0], ", ".join(failures), **stats)


def _finish_cycle(g: Graph, cons: Constraints, stats: dict) -> RecognitionOutcome:
    cycle = normalize_cycle(cons.external_cycle or _walk_cycle(g))
    rect = RectangleCandidate.build(cycle, cycle)
    for r in (rect, rect.mirrored()):
        pos = r.positions()
        d = GridDrawing(g, tuple(pos[v] for v in g.vertices()), Model.USF)
        if cons.rotation is None or rotation_of(d) == cons.rotation:
            return RecognitionOutcome.accept(d, **stats)
    return RecognitionOutcome.reject("rotation-mismatch", **stats)

