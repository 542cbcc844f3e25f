"""UER-RF recognition without internal degree-3 vertices, and for inner-2-graphs."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .drawing import GridDrawing, Model, rotation_of, validate
from .graph import Graph, GraphError, RotationSystem, is_biconnected, smooth_degree2
from .outcome import (
    Constraints,
    ConstraintError,
    RecognitionOutcome,
    RectangleCandidate,
    Rejected,
    check_cycle,
    normalize_cycle,
    rectangles_for_cycle,
    satisfies,
)
from .sweep import SweepStats, sweep_rectangle
from .usf import SweepCounter, _place_paths, _walk_cycle, candidate_cycles_for_order, corner_orders

# above this many corner guesses the unconstrained variant is left to the general recognizer
CORNER_TUPLE_LIMIT = 2000
# longer cycles skip the row-major preference and just take the thinnest rectangle
INVERSION_LIMIT = 64


# ---------------------------------------------------------------------------
# External cycle: corners given
# ---------------------------------------------------------------------------


def _prune_low_degree(g: Graph, keep: set[int]) -> set[int]:
    keep = set(keep)
    changed = True
    while changed:
        changed = False
        for v in sorted(keep):
            if sum(1 for u in g.neighbors(v) if u in keep) <= 1:
                keep.discard(v)
                changed = True
    return keep


def rf3_candidates_corners_given(g: Graph, corners: Sequence[int]) -> list[RectangleCandidate]:
    """Rectangles with the prescribed corners, read from the embedding of the reduced graph."""
    cs = list(corners)
    if len(set(cs)) != 4 or any(g.degree(c) != 2 for c in cs):
        return []
    keep = _prune_low_degree(g, {v for v in g.vertices() if g.degree(v) != 4})
    if not set(cs) <= keep:
        return []
    g1, ids1 = g.induced(sorted(keep))
    if not is_biconnected(g1):
        return []
    local = [ids1.index(c) for c in cs]
    cycles: list[list[int]] = []
    if all(g1.degree(v) == 2 for v in g1.vertices()):
        cycles.append(_walk_cycle(g1))
    else:
        try:
            g2, smap = smooth_degree2(g1, keep=local)
        except GraphError:
            return []
        c2 = sorted(smap.original_ids.index(c) for c in local)
        for order in corner_orders(c2, g2.has_edge):
            found, _ = candidate_cycles_for_order(g2, order)
            for cyc in found:
                full = smap.expand_cycle(cyc)
                if full not in cycles:
                    cycles.append(full)
    out = []
    for cyc in cycles:
        orig = normalize_cycle([ids1[v] for v in cyc])
        out.extend(r for r in rectangles_for_cycle(g, orig, cs) if r not in out)
    return out


# ---------------------------------------------------------------------------
# External cycle: chords and the corner-distance count
# ---------------------------------------------------------------------------


def chord_paths(g: Graph, cycle: Sequence[int], rotation: RotationSystem | None = None) -> list[tuple[int, ...]]:
    """Paths leaving the cycle at a degree-3 vertex and returning to it.

    Degree-2 vertices are passed straight through; at a degree-4 vertex
    the path takes the edge opposite in ``rotation``.  Each path is listed
    once, from its smaller endpoint.
    """
    on_c = set(cycle)
    n_c = len(cycle)
    cyc_nbrs = {cycle[i]: {cycle[i - 1], cycle[(i + 1) % n_c]} for i in range(n_c)}
    paths = []
    seen_ends = set()
    for s in cycle:
        if g.degree(s) != 3:
            continue
        first = next(u for u in g.neighbors(s) if u not in cyc_nbrs[s])
        path = [s]
        prev, cur = s, first
        while cur not in on_c:
            path.append(cur)
            d = g.degree(cur)
            if d == 2:
                a, b = g.neighbors(cur)
                nxt = b if a == prev else a
            elif d == 4 and rotation is not None:
                o = rotation[cur]
                nxt = o[(o.index(prev) + 2) % 4]
            else:
                raise Rejected("cycle-missing-deg3-vertex", f"chord from {s} meets degree-{d} vertex {cur}")
            prev, cur = cur, nxt
            if len(path) > g.n:
                raise Rejected("non-simple-closure", "chord path does not return to the cycle")
        path.append(cur)
        key = (min(s, cur), max(s, cur))
        if key in seen_ends:
            continue
        seen_ends.add(key)
        paths.append(tuple(path) if s < cur else tuple(reversed(path)))
    return paths


def _arc(cycle: Sequence[int], a: int, b: int) -> list[int]:
    """Vertices of the cycle from ``a`` forwards to ``b``, both included."""
    n = len(cycle)
    i = cycle.index(a)
    out = [a]
    while out[-1] != b:
        i = (i + 1) % n
        out.append(cycle[i])
    return out


def _chord_free_side(cycle: Sequence[int], paths: Sequence[tuple[int, ...]]):
    """First chord (in cycle order) with an arc that holds no other chord entirely."""
    pos = {v: i for i, v in enumerate(cycle)}
    ordered = sorted(paths, key=lambda p: min(pos[p[0]], pos[p[-1]]))
    for p in ordered:
        u, v = p[0], p[-1]
        if pos[u] > pos[v]:
            u, v = v, u
            p = tuple(reversed(p))
        for a, b in ((u, v), (v, u)):
            arc = _arc(cycle, a, b)
            inner = set(arc[1:-1])
            if not any(q is not p and q[0] in inner and q[-1] in inner for q in paths):
                return p, arc
    raise Rejected("non-integral-corner-distance", "every side of every chord holds another chord")


def _corners_from_distance(g: Graph, cycle: Sequence[int], arc: Sequence[int], side: int) -> list[int]:
    """Corners on ``arc`` and on the complementary arc, given the vertex count of a side."""
    n = len(cycle)
    out = []
    u, v = arc[0], arc[-1]
    other = _arc(cycle, v, u)
    for part in (arc, other):
        twice = len(part) - side
        if twice < 0 or twice % 2:
            raise Rejected("non-integral-corner-distance", f"side of {side} vertices does not fit an arc of {len(part)}")
        dist = twice // 2
        if dist < 1:
            raise Rejected("non-integral-corner-distance", "corner would coincide with a chord endpoint")
        out.extend([part[dist], part[len(part) - 1 - dist]])
    for c in out:
        if g.degree(c) != 2:
            raise Rejected("corner-degree-3", f"computed corner {c} has degree {g.degree(c)}")
    if len(set(out)) != 4 or n % 2:
        raise Rejected("non-integral-corner-distance", "corners are not four distinct vertices")
    return out


def rf3_candidate_cycle_given_3graph(g: Graph, cycle: Sequence[int]) -> RectangleCandidate:
    """The rectangle forced by one chord path of a 3-graph with a known external cycle."""
    if any(d > 3 for d in g.degrees()):
        raise Rejected("cycle-missing-deg3-vertex", "graph has a degree-4 vertex")
    on_c = set(cycle)
    missing = [v for v in g.vertices() if g.degree(v) == 3 and v not in on_c]
    if missing:
        raise Rejected("cycle-missing-deg3-vertex", f"degree-3 vertices {missing} are off the cycle")
    cyc = normalize_cycle(cycle)
    paths = chord_paths(g, cyc)
    if not paths:
        raise Rejected("non-integral-corner-distance", "no chord path: the cycle case applies")
    p, arc = _chord_free_side(cyc, paths)
    inside = set(arc[1:-1])
    k = sum(1 for v in inside if g.degree(v) == 3)
    corners = _corners_from_distance(g, cyc, arc, len(p) + k)
    return RectangleCandidate.build(cyc, corners)


def trace_with_rotation(g: Graph, rotation: RotationSystem, v: int, z: int, w: int) -> list[int]:
    """External cycle through edges v-z and v-w (w after z clockwise at v)."""
    cycle = [v]
    prev, cur = v, w
    while cur != v:
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
            nxt = rotation.successor(cur, prev)
        prev, cur = cur, nxt
    if prev != z:
        raise Rejected("non-simple-closure", "trace returns through the wrong edge")
    return cycle


def rf3_candidates_rotation_given(g: Graph, rotation: RotationSystem) -> list[RectangleCandidate]:
    """Up to three rectangles, one per face at the first degree-3 vertex."""
    deg3 = [v for v in g.vertices() if g.degree(v) == 3]
    if not deg3:
        return []
    v = deg3[0]
    o = rotation[v]
    out = []
    for t in range(3):
        z, w = o[t], o[(t + 1) % 3]
        try:
            cyc = trace_with_rotation(g, rotation, v, z, w)
            on_c = set(cyc)
            if any(g.degree(x) == 3 and x not in on_c for x in g.vertices()):
                raise Rejected("cycle-missing-deg3-vertex", "degree-3 vertex left inside")
            cyc = list(normalize_cycle(cyc))
            paths = chord_paths(g, cyc, rotation)
            if not paths:
                continue
            p, arc = _chord_free_side(cyc, paths)
            p4 = sum(1 for x in p[1:-1] if g.degree(x) == 4)
            inside = set(arc[1:-1])
            k = sum(1 for x in inside if g.degree(x) == 3)
            if k < p4:
                raise Rejected("too-many-degree4", f"{p4} degree-4 vertices on a chord crossing {k} lines")
            corners = _corners_from_distance(g, cyc, arc, len(p) - p4 + k)
            rect = RectangleCandidate.build(cyc, corners)
        except Rejected:
            continue
        if rect not in out:
            out.append(rect)
    return out


# ---------------------------------------------------------------------------
# Internal placement
# ---------------------------------------------------------------------------


def _full_lines(rect: RectangleCandidate, g: Graph) -> tuple[set[int], set[int]]:
    pos = rect.positions()
    rows = {y for v, (x, y) in pos.items() if x == 0 and 0 < y < rect.height and g.degree(v) == 3}
    cols = {x for v, (x, y) in pos.items() if y == rect.height and 0 < x < rect.width and g.degree(v) == 3}
    return rows, cols


def rf3_place_internal(g: Graph, rect: RectangleCandidate, counter: SweepCounter | None = None) -> GridDrawing:
    """Drawing with boundary ``rect`` when no interior vertex has degree 3."""
    counter = counter or SweepCounter()
    rect.check_corners(g)
    on_c = set(rect.cycle)
    for v in g.vertices():
        if v not in on_c and g.degree(v) == 3:
            raise Rejected("internal-degree-3", f"vertex {v} is internal with degree 3")
        if v in on_c and g.degree(v) > 3:
            raise Rejected("bad-corner-degree", f"boundary vertex {v} has degree {g.degree(v)}")
    inner2 = [v for v in g.vertices() if v not in on_c and g.degree(v) == 2]
    keep = [v for v in g.vertices() if v not in set(inner2)]
    try:
        g2, smap = smooth_degree2(g, keep=keep)
    except GraphError as exc:
        raise Rejected("degree2-alignment-mismatch", str(exc)) from None
    new = {old: i for i, old in enumerate(smap.original_ids)}
    rect2 = RectangleCandidate(tuple(new[v] for v in rect.cycle), tuple(new[c] for c in rect.corners), rect.width, rect.height)  # type: ignore[arg-type]
    # the full-path sweep on the smoothed graph; boundary degree-2 vertices simply start no path
    pos2, _ = _place_restricted(g2, rect2, counter)
    pos = {smap.original_ids[i]: p for i, p in pos2.items()}
    rows, cols = _full_lines(rect, g)
    for (a, b), path in smap.paths.items():
        if len(path) <= 2:
            continue
        (xa, ya), (xb, yb) = pos2[a], pos2[b]
        if xa == xb:
            step = 1 if yb > ya else -1
            free = [(xa, y) for y in range(ya + step, yb, step) if y not in rows]
        elif ya == yb:
            step = 1 if xb > xa else -1
            free = [(x, ya) for x in range(xa + step, xb, step) if x not in cols]
        else:
            raise Rejected("degree2-alignment-mismatch", f"smoothed edge {path[0]}-{path[-1]} is bent")
        inner = path[1:-1]
        if len(free) != len(inner):
            raise Rejected("degree2-alignment-mismatch", f"{len(inner)} degree-2 vertices for {len(free)} free points")
        for v, p in zip(inner, free):
            pos[v] = p
    d = GridDrawing(g, tuple(pos[v] for v in g.vertices()), Model.RF)
    report = validate(d)
    if not report.valid:
        raise Rejected("degree2-alignment-mismatch", ", ".join(report.codes))
    return d


def _place_restricted(g: Graph, rect: RectangleCandidate, counter: SweepCounter):
    """Full-path sweep where boundary degree-2 vertices start no path."""
    return _place_paths(g, rect, counter, require_degree4=True, partial_sides=True)


# ---------------------------------------------------------------------------
# Recognition
# ---------------------------------------------------------------------------


def _inversions(d: GridDrawing) -> int:
    keys = [(y, x) for x, y in d.positions]
    return sum(1 for i in range(len(keys)) for j in range(i + 1, len(keys)) if keys[i] > keys[j])


def _cycle_outcome(g: Graph, cons: Constraints, stats: dict) -> RecognitionOutcome:
    """Even cycles: the rectangle closest to listing ids in row-major order, then the thinnest."""
    if g.n % 2:
        return RecognitionOutcome.reject("odd-cycle", f"C{g.n} has odd length", **stats)
    cycle = normalize_cycle(cons.external_cycle or _walk_cycle(g))
    half = g.n // 2
    if g.n > INVERSION_LIMIT and cons.is_empty():
        w = half - 1
        pos = RectangleCandidate.build(cycle, {cycle[0], cycle[w], cycle[half], cycle[half + w]}).positions()
        return RecognitionOutcome.accept(GridDrawing(g, tuple(pos[v] for v in g.vertices()), Model.RF), **stats)
    best = None
    for w in range(1, half):
        for start in range(g.n):
            cs = {cycle[start], cycle[(start + w) % g.n], cycle[(start + half) % g.n], cycle[(start + half + w) % g.n]}
            if cons.corners is not None and cs != set(cons.corners):
                continue
            rect = RectangleCandidate.build(cycle, cs)
            for r in (rect, rect.mirrored()):
                pos = r.positions()
                d = GridDrawing(g, tuple(pos[v] for v in g.vertices()), Model.RF)
                if satisfies(d, cons):
                    key = (_inversions(d) if g.n <= INVERSION_LIMIT else 0, -abs(d.width - d.height), -d.width)
                    if best is None or key < best[0]:
                        best = (key, d)
    if best is None:
        return RecognitionOutcome.reject("constraint-mismatch", **stats)
    return RecognitionOutcome.accept(best[1], **stats)


def cycle_case(g: Graph, cons: Constraints | None = None, stats: dict | None = None) -> RecognitionOutcome:
    """Even cycles are drawn as a k x 1 rectangle; odd cycles have no drawing."""
    return _cycle_outcome(g, cons or Constraints(), stats or {})


def restricted_candidates(g: Graph, cons: Constraints, stats: dict) -> list[RectangleCandidate]:
    """Candidate rectangles following the variant the constraints select."""
    if cons.corners is not None:
        stats["cycle_source"] = "corners"
        rects = rf3_candidates_corners_given(g, cons.corners)
        if cons.external_cycle is not None:
            rects = [r for r in rects if set(r.cycle) == set(cons.external_cycle)]
        return rects
    if cons.rotation is not None:
        stats["cycle_source"] = "rotation"
        return rf3_candidates_rotation_given(g, cons.rotation)
    if cons.external_cycle is not None:
        if max(g.degrees()) <= 3:
            stats["cycle_source"] = "cycle-3graph"
            try:
                return [rf3_candidate_cycle_given_3graph(g, cons.external_cycle)]
            except Rejected as exc:
                stats["reason"] = exc.code
                return []
        stats["cycle_source"] = "cycle"
        return rectangles_for_cycle(g, normalize_cycle(cons.external_cycle))
    stats["cycle_source"] = "general"
    deg2 = [v for v in g.vertices() if g.degree(v) == 2]
    out: list[RectangleCandidate] = []
    for cs in combinations(deg2, 4):
        for r in rf3_candidates_corners_given(g, cs):
            if r not in out:
                out.append(r)
    return out


def corner_tuple_count(g: Graph) -> int:
    k = sum(1 for d in g.degrees() if d == 2)
    return k * (k - 1) * (k - 2) * (k - 3) // 24


def recognize_rf_no_internal_deg3(g: Graph, constraints: Constraints | None = None) -> RecognitionOutcome:
    """UER-RF drawing in which every degree-3 vertex lies on the external cycle."""
    cons = constraints or Constraints()
    cons.check(g)
    if cons.angles is not None:
        raise ConstraintError("unsupported-constraint", "use the fixed-angle recognizer for angle constraints")
    stats: dict = {"candidates": 0}
    if g.n == 0:
        return RecognitionOutcome.reject("empty", **stats)
    if g.is_cycle():
        return _cycle_outcome(g, cons, stats)
    if not is_biconnected(g):
        return RecognitionOutcome.reject("not-biconnected", **stats)
    rects = restricted_candidates(g, cons, stats)
    stats["candidates"] = len(rects)
    if not rects:
        return RecognitionOutcome.reject("no-external-candidate", stats.pop("reason", ""), **stats)
    counter = SweepCounter()
    failures = []
    for rect in rects:
        for r in (rect, rect.mirrored()) if cons.rotation is not None else (rect,):
            try:
                d = rf3_place_internal(g, r, counter)
            except Rejected as exc:
                failures.append(exc.code)
                continue
            if not satisfies(d, cons):
                failures.append("constraint-mismatch")
                continue
            stats["steps"] = counter.steps
            return RecognitionOutcome.accept(d, **stats)
    stats["steps"] = counter.steps
    return RecognitionOutcome.reject(failures[0], ", ".join(sorted(set(failures))), **stats)


# ---------------------------------------------------------------------------
# Inner-2-graphs
# ---------------------------------------------------------------------------


def is_inner2(g: Graph, cycle: Sequence[int]) -> bool:
    on_c = set(cycle)
    return all(sum(1 for u in g.neighbors(v) if u not in on_c) <= 2 for v in g.vertices() if v not in on_c)


def inner2_sweep(g: Graph, cycle: Sequence[int], rect: RectangleCandidate, debug: bool = False, stats: SweepStats | None = None) -> GridDrawing:
    if set(rect.cycle) != set(cycle):
        raise ConstraintError("bad-cycle", "rectangle is not drawn on the given cycle")
    return sweep_rectangle(g, rect, None, debug=debug, stats=stats)


def recognize_inner2(g: Graph, cycle: Sequence[int], constraints: Constraints | None = None, debug: bool = False) -> RecognitionOutcome:
    """UER-RF drawing of an inner-2-graph whose external cycle is ``cycle``."""
    cons = constraints or Constraints()
    check_cycle(g, cycle)
    cons.check(g)
    if not is_inner2(g, cycle):
        raise ConstraintError("not-inner-2", "removing the cycle leaves a vertex of degree above two")
    stats = SweepStats()
    if g.is_cycle():
        return _cycle_outcome(g, Constraints(tuple(cycle), cons.rotation, cons.corners), {})
    rects = rectangles_for_cycle(g, normalize_cycle(cycle), cons.corners)
    failures = []
    for rect in rects:
        for r in (rect, rect.mirrored()) if cons.rotation is not None else (rect,):
            try:
                d = inner2_sweep(g, cycle, r, debug=debug, stats=stats)
            except Rejected as exc:
                failures.append(exc.code)
                continue
            if cons.rotation is not None and rotation_of(d) != cons.rotation:
                failures.append("rotation-mismatch")
                continue
            return RecognitionOutcome.accept(d, candidates=len(rects), sweep=stats)
    reason = failures[0] if failures else "no-external-candidate"
    return RecognitionOutcome.reject(reason, ", ".join(sorted(set(failures))), candidates=len(rects), sweep=stats)
