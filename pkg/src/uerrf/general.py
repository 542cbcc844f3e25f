"""UER-RF recognition with fixed large angles, the search over angle assignments, and the dispatcher."""

from __future__ import annotations

import math
from itertools import combinations, product
from typing import Mapping

from .drawing import GridDrawing, Model
from .graph import Graph, is_biconnected
from .outcome import (
    Constraints,
    ConstraintError,
    RecognitionOutcome,
    RectangleCandidate,
    Rejected,
    check_angles,
    normalize_cycle,
    rectangles_for_cycle,
    satisfies,
)
from .restricted import (
    CORNER_TUPLE_LIMIT,
    corner_tuple_count,
    cycle_case,
    is_inner2,
    recognize_inner2,
    recognize_rf_no_internal_deg3,
)
from .sweep import SweepStats, sweep_rectangle
from .usf import recognize_usf

Angles = Mapping[int, tuple[int, int]]

VARIANTS = ("auto", "usf", "no-internal-deg3", "inner2", "fixed-angles", "fpt")


# ---------------------------------------------------------------------------
# External cycle from angles
# ---------------------------------------------------------------------------


def trace_external_with_angles(g: Graph, angles: Angles, start: int, first: int) -> list[int]:
    """Cycle traced from edge start-first, leaving each degree-3 vertex through its large angle."""
    for v, nb in ((start, first),):
        if g.degree(v) == 3 and nb not in angles[v]:
            raise Rejected("angle-mismatch", f"edge {v}-{nb} is outside the large angle at {v}")
    cycle = [start]
    prev, cur = start, first
    while cur != start:
        if cur in cycle:
            raise Rejected("non-simple-closure", f"trace revisits {cur}")
        d = g.degree(cur)
        if d == 4:
            raise Rejected("hits-degree-4", f"trace enters degree-4 vertex {cur}")
        cycle.append(cur)
        if d == 2:
            a, b = g.neighbors(cur)
            nxt = b if a == prev else a
        else:
            pair = angles[cur]
            if prev not in pair:
                raise Rejected("angle-mismatch", f"trace enters {cur} outside its large angle")
            nxt = pair[1] if pair[0] == prev else pair[0]
        prev, cur = cur, nxt
    if g.degree(start) == 3 and set(angles[start]) != {first, prev}:
        raise Rejected("angle-mismatch", f"trace closes at {start} outside its large angle")
    return cycle


def _capacity(length: int) -> int:
    """Most interior grid points of a rectangle with ``length`` boundary points."""
    half = length // 2
    return max(((w - 1) * (half - w - 1) for w in range(1, half)), default=0)


def rf_angle_candidates(
    g: Graph, angles: Angles, constraints: Constraints | None = None, stats: dict | None = None
) -> list[RectangleCandidate]:
    """Rectangles compatible with the fixed angles."""
    cons = constraints or Constraints()
    stats = stats if stats is not None else {}
    failures = stats.setdefault("trace_failures", [])
    cycles: list[tuple[int, ...]] = []
    if cons.external_cycle is not None:
        cyc = normalize_cycle(cons.external_cycle)
        n_c = len(cyc)
        for i, v in enumerate(cyc):
            d = g.degree(v)
            if d == 4 or (d == 3 and set(angles[v]) != {cyc[i - 1], cyc[(i + 1) % n_c]}):
                failures.append("angle-mismatch")
                return []
        cycles.append(cyc)
    elif cons.corners is not None:
        c1 = min(cons.corners)
        try:
            cycles.append(normalize_cycle(trace_external_with_angles(g, angles, c1, g.neighbors(c1)[0])))
        except Rejected as exc:
            failures.append(exc.code)
    else:
        deg3 = [v for v in g.vertices() if g.degree(v) == 3]
        for v in deg3:
            try:
                cyc = normalize_cycle(trace_external_with_angles(g, angles, v, min(angles[v])))
            except Rejected as exc:
                failures.append(exc.code)
                continue
            if _capacity(len(cyc)) < g.n - len(cyc):
                failures.append("cycle-too-short")
                continue
            assert len(cyc) > math.sqrt(g.n)
            if cyc not in cycles:
                cycles.append(cyc)
        assert len(cycles) <= len(deg3)
    out = []
    for cyc in cycles:
        if cons.corners is not None and not set(cons.corners) <= set(cyc):
            continue
        for r in rectangles_for_cycle(g, cyc, cons.corners):
            if r.interior_points >= g.n - len(cyc):
                out.append(r)
    return out


def rf_angle_place_internal(g: Graph, angles: Angles, rect: RectangleCandidate, stats: SweepStats | None = None) -> GridDrawing:
    return sweep_rectangle(g, rect, angles, stats=stats)


def _place_first(g: Graph, angles: Angles | None, rects, cons: Constraints, stats: SweepStats, failures: list) -> GridDrawing | None:
    for rect in rects:
        for r in (rect, rect.mirrored()) if cons.rotation is not None else (rect,):
            try:
                d = sweep_rectangle(g, r, angles, stats=stats)
            except Rejected as exc:
                failures.append(exc.code)
                continue
            if not satisfies(d, cons):
                failures.append("constraint-mismatch")
                continue
            return d
    return None


def recognize_rf_fixed_angles(g: Graph, angles: Angles, constraints: Constraints | None = None) -> RecognitionOutcome:
    """UER-RF drawing in which each degree-3 vertex has its large angle between the given neighbors."""
    cons = constraints or Constraints()
    cons.check(g)
    check_angles(g, angles)
    cons = Constraints(cons.external_cycle, cons.rotation, cons.corners, angles)
    if g.n == 0:
        return RecognitionOutcome.reject("empty")
    if g.is_cycle():
        return cycle_case(g, cons)
    if not is_biconnected(g):
        return RecognitionOutcome.reject("not-biconnected")
    info: dict = {}
    rects = rf_angle_candidates(g, angles, cons, info)
    sweep = SweepStats()
    failures: list = []
    d = _place_first(g, angles, rects, cons, sweep, failures)
    if d is not None:
        return RecognitionOutcome.accept(d, candidates=len(rects), sweep=sweep)
    reason = failures[0] if failures else (info["trace_failures"][0] if info["trace_failures"] else "no-external-candidate")
    return RecognitionOutcome.reject(reason, ", ".join(sorted(set(failures))), candidates=len(rects), sweep=sweep)


# ---------------------------------------------------------------------------
# Search over angle assignments
# ---------------------------------------------------------------------------


def angle_choices(g: Graph) -> list[tuple[int, list[tuple[int, int]]]]:
    """Per degree-3 vertex (ascending id), the three neighbor pairs in lexicographic order."""
    return [(v, list(combinations(sorted(g.neighbors(v)), 2))) for v in g.vertices() if g.degree(v) == 3]


def recognize_rf_fpt(g: Graph, constraints: Constraints | None = None, limit: int | None = None) -> RecognitionOutcome:
    """Try every large-angle assignment in odometer order (first vertex most significant).

    An assignment is pruned when no external cycle can be traced from it.
    With ``limit`` set, more than ``limit`` assignments yield ``unknown``.
    """
    cons = constraints or Constraints()
    cons.check(g)
    if cons.angles is not None:
        return recognize_rf_fixed_angles(g, cons.angles, cons)
    if g.n == 0:
        return RecognitionOutcome.reject("empty")
    if g.is_cycle():
        return cycle_case(g, cons)
    if not is_biconnected(g):
        return RecognitionOutcome.reject("not-biconnected")
    choices = angle_choices(g)
    total = 3 ** len(choices)
    if limit is not None and total > limit:
        return RecognitionOutcome.unknown(f"{total} angle assignments exceed the limit of {limit}", assignments=total)
    verts = [v for v, _ in choices]
    tried = pruned = 0
    sweep = SweepStats()
    for pick in product(*(opts for _, opts in choices)):
        tried += 1
        angles = dict(zip(verts, pick))
        rects = rf_angle_candidates(g, angles, cons)
        if not rects:
            pruned += 1
            continue
        d = _place_first(g, angles, rects, Constraints(cons.external_cycle, cons.rotation, cons.corners), sweep, [])
        if d is not None:
            return RecognitionOutcome.accept(d, assignments=total, tried=tried, pruned=pruned, angles=angles, sweep=sweep)
    return RecognitionOutcome.reject("no-assignment", f"{total} assignments exhausted", assignments=total, tried=tried, pruned=pruned, sweep=sweep)


# ---------------------------------------------------------------------------
# Dispatcher
# ---------------------------------------------------------------------------


def _with_model(out: RecognitionOutcome, model: Model, via: str) -> RecognitionOutcome:
    out.stats.setdefault("variant", via)
    if out.drawing is not None and out.drawing.model is not model:
        out.drawing = GridDrawing(out.drawing.graph, out.drawing.positions, model)
    return out


def _usf(g: Graph, cons: Constraints) -> RecognitionOutcome:
    inner = Constraints(cons.external_cycle, cons.rotation)
    out = recognize_usf(g, inner)
    if out.accepted and not satisfies(out.drawing, cons):
        return RecognitionOutcome.reject("constraint-mismatch", **out.stats)
    return out


def recognize(g: Graph, model: Model | str = Model.RF, variant: str = "auto", constraints: Constraints | None = None) -> RecognitionOutcome:
    """Recognize ``g`` in ``model`` with the chosen algorithm.

    ``auto`` for RF tries the cheap sufficient tests first (square faces,
    no interior degree-3 vertex) and falls back to the complete search.
    """
    model = Model.parse(model) if isinstance(model, str) else model
    cons = constraints or Constraints()
    if variant not in VARIANTS:
        raise ConstraintError("bad-variant", f"unknown variant {variant!r}")
    cons.check(g)
    if model is Model.USF:
        if variant not in ("auto", "usf"):
            raise ConstraintError("bad-variant", f"variant {variant!r} is for the rectangular-face model")
        return _with_model(_usf(g, cons), Model.USF, "usf")
    if variant == "usf":
        return _with_model(_usf(g, cons), Model.RF, "usf")
    if variant == "no-internal-deg3":
        if cons.angles is not None:
            raise ConstraintError("unsupported-constraint", "angle constraints need the fixed-angle variant")
        return _with_model(recognize_rf_no_internal_deg3(g, cons), Model.RF, variant)
    if variant == "inner2":
        if cons.external_cycle is None:
            raise ConstraintError("missing-constraint", "the inner-2 variant needs an external cycle")
        return _with_model(recognize_inner2(g, cons.external_cycle, cons), Model.RF, variant)
    if variant == "fixed-angles":
        if cons.angles is None:
            raise ConstraintError("missing-constraint", "the fixed-angle variant needs angles")
        return _with_model(recognize_rf_fixed_angles(g, cons.angles, cons), Model.RF, variant)
    if variant == "fpt":
        return _with_model(recognize_rf_fpt(g, cons), Model.RF, variant)
    return _auto_rf(g, cons)


def _auto_rf(g: Graph, cons: Constraints) -> RecognitionOutcome:
    if g.n == 0:
        return RecognitionOutcome.reject("empty")
    if g.is_cycle():
        return _with_model(cycle_case(g, cons), Model.RF, "cycle")
    if not is_biconnected(g):
        return RecognitionOutcome.reject("not-biconnected", variant="auto")
    if cons.angles is not None:
        return _with_model(recognize_rf_fixed_angles(g, cons.angles, cons), Model.RF, "fixed-angles")
    if cons.external_cycle is not None and is_inner2(g, cons.external_cycle):
        return _with_model(recognize_inner2(g, cons.external_cycle, cons), Model.RF, "inner2")
    degs = g.degrees()
    if degs.count(2) == 4:
        out = _usf(g, cons)
        if out.accepted:
            return _with_model(out, Model.RF, "usf")
    narrowed = cons.corners is not None or cons.rotation is not None or cons.external_cycle is not None
    if narrowed or corner_tuple_count(g) <= CORNER_TUPLE_LIMIT:
        out = recognize_rf_no_internal_deg3(g, Constraints(cons.external_cycle, cons.rotation, cons.corners))
        if out.accepted:
            return _with_model(out, Model.RF, "no-internal-deg3")
    return _with_model(recognize_rf_fpt(g, cons), Model.RF, "fpt")

