"""Acceptance criteria.  Each test prints one PASS/FAIL line; run this file directly to get all eight."""

from __future__ import annotations

import math
import time
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from brute_validator import brute_valid
from conftest import c12_chord, cycle, linear_fit_within
from uerrf.corpus import constraint_sets
from uerrf.drawing import (
    GridDrawing,
    Model,
    angles_of,
    canonicalize,
    check_properties,
    external_walk,
    extract_graph,
    internal_degree3_vertices,
    planarize,
    validate,
)
from uerrf.general import angle_choices, recognize, recognize_rf_fpt, rf_angle_candidates
from uerrf.graph import smooth_degree2
from uerrf.oracle import EnumerationBudget, brute_recognize, crossing_graph, enumerate_drawings, grid_graph, ladder_graph, random_biconnected_graphs
from uerrf.outcome import RecognitionOutcome, RectangleCandidate, satisfies
from uerrf.restricted import is_inner2, recognize_inner2
from uerrf.svg import render_svg
from uerrf.sweep import SweepStats, sweep_rectangle
from uerrf.usf import SweepCounter, usf_external_candidates, usf_place_internal

CORPUS_BUDGET = EnumerationBudget(3, 3)
ORACLE_BUDGET = EnumerationBudget(4, 4)
MODELS = (Model.USF, Model.RF)
# verdict lines, echoed again in the terminal summary so captured runs show them
REPORT: list[str] = []


@dataclass
class Run:
    source: GridDrawing
    auto: RecognitionOutcome
    fpt: RecognitionOutcome | None


@lru_cache(maxsize=None)
def corpus_runs() -> tuple[Run, ...]:
    runs = []
    for model in MODELS:
        enum = enumerate_drawings(CORPUS_BUDGET, model)
        assert enum.complete
        for d in enum:
            g = extract_graph(d).graph
            fpt = recognize(g, Model.RF, "fpt") if model is Model.RF else None
            runs.append(Run(d, recognize(g, model, "auto"), fpt))
    return tuple(runs)


def _good(out: RecognitionOutcome | None, model: Model) -> bool:
    return out is not None and out.accepted and out.drawing.model is model and validate(out.drawing).valid and brute_valid(out.drawing)


def _emit(number: int, failures: list[str], summary: str) -> None:
    head = "PASS" if not failures else "FAIL"
    tail = "" if not failures else f" [{len(failures)} failures, first: {failures[0]}]"
    line = f"{head} criterion {number}: {summary}{tail}"
    REPORT.append(line)
    print("\n" + line)


# -- 1 ------------------------------------------------------------------------


def criterion_1():
    failures = []
    runs = corpus_runs()
    for r in runs:
        model = r.source.model
        if not _good(r.auto, model):
            failures.append(f"auto {model.value} {r.source.positions}")
        if model is Model.RF and not _good(r.fpt, Model.RF):
            failures.append(f"fpt {r.source.positions}")
    negatives = {m: 0 for m in MODELS}
    for g in random_biconnected_graphs(400, 9, seed=2024):
        assert max(g.degrees()) <= 4
        for model in MODELS:
            oracle = brute_recognize(g, ORACLE_BUDGET, model)
            if oracle.verdict != "reject":
                continue
            negatives[model] += 1
            verdicts = [recognize(g, model, "auto").verdict]
            if model is Model.RF:
                verdicts.append(recognize(g, model, "fpt").verdict)
            if any(v != "reject" for v in verdicts):
                failures.append(f"{model.value} accepts an oracle reject: {g.edges()}")
    for model, count in negatives.items():
        if count < 200:
            failures.append(f"only {count} {model.value} oracle rejects sampled")
    return failures, (
        f"{len(runs)} corpus drawings accepted by auto (and fpt for RF); "
        f"oracle rejects matched: USF {negatives[Model.USF]}, RF {negatives[Model.RF]}"
    )


def test_criterion_1_oracle_equivalence():
    failures, summary = criterion_1()
    _emit(1, failures, summary)
    assert not failures


# -- 2 ------------------------------------------------------------------------


def criterion_2():
    failures = []
    for r in corpus_runs():
        want = canonicalize(r.source).dimensions
        for out in (r.auto, r.fpt):
            if out is not None and (not out.accepted or canonicalize(out.drawing).dimensions != want):
                failures.append(f"{r.source.positions}: want {want}")
    return failures, f"{len(corpus_runs())} round trips keep the canonical width x height"


def test_criterion_2_round_trip_dimensions():
    failures, summary = criterion_2()
    _emit(2, failures, summary)
    assert not failures


# -- 3 ------------------------------------------------------------------------


def criterion_3():
    # a w x 1 rectangle has 2(w + 1) boundary points, so C_2k draws as (k - 1) x 1
    failures = []
    for k in range(2, 11):
        g = cycle(2 * k)
        rf = recognize(g, Model.RF)
        if not _good(rf, Model.RF) or canonicalize(rf.drawing).dimensions != (k - 1, 1):
            failures.append(f"C{2 * k} RF")
        usf = recognize(g, Model.USF)
        if k == 2 and not _good(usf, Model.USF):
            failures.append("C4 USF")
        if k >= 3 and usf.verdict != "reject":
            failures.append(f"C{2 * k} USF")
    for k in range(1, 11):
        g = cycle(2 * k + 1)
        for model in MODELS:
            if recognize(g, model).verdict != "reject":
                failures.append(f"C{2 * k + 1} {model.value}")
    return failures, "C4..C20 RF as (k-1)x1, only C4 USF, C3..C21 odd rejected"


def test_criterion_3_cycles():
    failures, summary = criterion_3()
    _emit(3, failures, summary)
    assert not failures


# -- 4 ------------------------------------------------------------------------


def criterion_4():
    failures = []
    for m in range(2, 7):
        for n in range(2, 7):
            out = recognize(grid_graph(m, n).graph, Model.USF)
            if not _good(out, Model.USF) or sorted(canonicalize(out.drawing).dimensions) != sorted((m - 1, n - 1)):
                failures.append(f"grid {m}x{n}")
    sizes, steps = [], []
    for k in (4, 8, 16, 24, 32):
        counter = SweepCounter()
        g = grid_graph(k, k + 3).graph
        (rect,) = usf_external_candidates(g)
        usf_place_internal(g, rect, counter)
        sizes.append(g.n)
        steps.append(counter.steps)
    if not linear_fit_within(sizes, steps, 0.2):
        failures.append(f"counter not linear: {list(zip(sizes, steps))}")
    pairs = ", ".join(f"{n}:{s}" for n, s in zip(sizes, steps))
    return failures, f"25 grids 2..6 drawn USF at (m-1)x(n-1); placement steps per n {pairs} within 20% of a line"


def test_criterion_4_grids():
    failures, summary = criterion_4()
    _emit(4, failures, summary)
    assert not failures


# -- 5 ------------------------------------------------------------------------


def criterion_5():
    failures = []
    checked = 0
    for r in corpus_runs():
        d = r.source
        g = extract_graph(d).graph
        for name, cons in constraint_sets(d):
            out = recognize(g, d.model, "auto", cons)
            checked += 1
            if not (_good(out, d.model) and satisfies(out.drawing, cons)):
                failures.append(f"{name} on {d.positions}")
    return failures, f"{checked} constrained re-runs (rotation, cycle, corners, all) accepted and preserved"


def test_criterion_5_constraint_preservation():
    failures, summary = criterion_5()
    _emit(5, failures, summary)
    assert not failures


# -- 6 ------------------------------------------------------------------------


def fpt_family(rungs: int):
    """A 19 x 1 ladder (n = 40, k = 2 * rungs) and an odd twin missing one top-path vertex."""
    inst = ladder_graph(19, rungs)
    g = inst.graph
    gap = inst.drawing.positions.index((1, 1))
    odd, _ = smooth_degree2(g, keep=[v for v in g.vertices() if v != gap])
    return g, odd


def criterion_6():
    failures = []
    notes = []
    for rungs in (1, 2, 3, 4):
        for label, g in zip(("ladder", "odd"), fpt_family(rungs)):
            k = sum(1 for v in g.vertices() if g.degree(v) == 3)
            start = time.perf_counter()
            out = recognize_rf_fpt(g)
            secs = time.perf_counter() - start
            tried, pruned = out.stats["tried"], out.stats["pruned"]
            if g.n > 40 or k != 2 * rungs or tried > 3**k or out.stats["assignments"] != 3**k:
                failures.append(f"{label} k={k}: tried {tried}")
            if label == "ladder" and not _good(out, Model.RF):
                failures.append(f"ladder k={k} not drawn")
            if k == 8 and secs >= 60:
                failures.append(f"{label} k=8 took {secs:.1f}s")
            notes.append(f"{label} k={k} n={g.n} {out.verdict} tried {tried}/{3**k} pruned {pruned / tried:.1%} {secs:.2f}s")
    return failures, "; ".join(notes)


def test_criterion_6_fpt():
    failures, summary = criterion_6()
    _emit(6, failures, summary)
    assert not failures


# -- 7 ------------------------------------------------------------------------


def criterion_7():
    failures = []
    drawings = [out.drawing for r in corpus_runs() for out in (r.auto, r.fpt) if out is not None and out.accepted]
    drawings += [recognize(grid_graph(m, n).graph, Model.USF).drawing for m in range(2, 7) for n in range(2, 7)]
    drawings += [recognize(c12_chord().graph).drawing, recognize(crossing_graph(4).graph).drawing]
    for d in drawings:
        if check_properties(d):
            failures.append(f"properties {check_properties(d)[0].code}")

    stats = SweepStats()
    sweeps = 0
    for r in corpus_runs():
        d = r.source
        cyc, corners = external_walk(d)
        g = d.graph
        if g.is_cycle():
            continue
        out = sweep_rectangle(g, RectangleCandidate.build(cyc, corners), angles_of(d), debug=True, stats=stats)
        sweeps += 1
        if not validate(out).valid:
            failures.append(f"sweep output invalid on {d.positions}")
        if is_inner2(g, cyc):
            inner = recognize_inner2(g, cyc, debug=True)
            sweeps += 1
            if not inner.accepted:
                failures.append(f"inner-2 rejected {d.positions}")
            elif inner.stats.get("sweep") is not None:
                stats.invariant_violations.extend(inner.stats["sweep"].invariant_violations)
    failures += stats.invariant_violations
    if stats.max_visits > 4:
        failures.append(f"max visits {stats.max_visits}")

    candidates = 0
    seen = set()
    for r in corpus_runs():
        g = r.source.graph
        key = (g.n, g.edges())
        if g.is_cycle() or key in seen:
            continue
        seen.add(key)
        choices = angle_choices(g)
        for pick in product(*(opts for _, opts in choices)):
            for rect in rf_angle_candidates(g, dict(zip([v for v, _ in choices], pick))):
                candidates += 1
                if not len(rect.cycle) > math.sqrt(g.n):
                    failures.append(f"|C| = {len(rect.cycle)} on n = {g.n}")
    return failures, (
        f"Properties 1-4 on {len(drawings)} drawings; {sweeps} debug sweeps with "
        f"{len(stats.invariant_violations)} I1-I3 violations, max visits {stats.max_visits}; "
        f"|C| > sqrt(n) on {candidates} unconstrained candidates"
    )


def test_criterion_7_invariants():
    failures, summary = criterion_7()
    _emit(7, failures, summary)
    assert not failures


# -- 8 ------------------------------------------------------------------------


def criterion_8():
    failures = []
    picks = {
        "USF": (grid_graph(4, 4).graph, Model.USF),
        "RF without internal degree 3": (c12_chord().graph, Model.RF),
        "RF with a crossing": (crossing_graph(4).graph, Model.RF),
    }
    notes = []
    for label, (g, model) in picks.items():
        out = recognize(g, model)
        if not _good(out, model):
            failures.append(f"{label} rejected")
            continue
        d = canonicalize(out.drawing)
        crossings = planarize(d).crossings
        inner3 = internal_degree3_vertices(d)
        if d.width > 5 or d.height > 5:
            failures.append(f"{label} is {d.width}x{d.height}")
        if label == "RF without internal degree 3" and inner3:
            failures.append(f"{label} has internal degree-3 vertices")
        if label == "RF with a crossing" and not (crossings and inner3):
            failures.append(f"{label} lacks a crossing or an internal T")
        ET.fromstring(render_svg(d))
        notes.append(f"{label} {d.width}x{d.height}")
    classes = {"usf": False, "rf3": False, "crossing": False}
    for r in corpus_runs():
        d = r.auto.drawing
        ET.fromstring(render_svg(d))
        classes["usf"] |= d.model is Model.USF
        classes["rf3"] |= d.model is Model.RF and not internal_degree3_vertices(d)
        classes["crossing"] |= d.model is Model.RF and bool(planarize(d).crossings)
    failures += [f"corpus lacks {c}" for c, hit in classes.items() if not hit]
    return failures, "; ".join(notes) + "; all corpus outputs render to SVG"


def test_criterion_8_figure_parity():
    failures, summary = criterion_8()
    _emit(8, failures, summary)
    assert not failures


if __name__ == "__main__":
    for number, fn in enumerate((criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8), 1):
        _emit(number, *fn())
