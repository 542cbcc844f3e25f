from __future__ import annotations

import pytest

from conftest import cycle, linear_fit_within, rect_drawing
from uerrf.drawing import Model, canonicalize, external_walk, rotation_of, validate
from uerrf.graph import Graph, RotationSystem
from uerrf.oracle import EnumerationBudget, box_drawings, brute_recognize, grid_graph, random_biconnected_graphs
from uerrf.outcome import ConstraintError, Constraints, same_cycle
from uerrf.usf import SweepCounter, recognize_usf, usf_external_candidates, usf_place_internal


def usf_corpus():
    return [d for w in range(1, 5) for h in range(1, w + 1) for d in box_drawings(w, h, Model.USF)]


def rewired_grid() -> Graph:
    """3x3 grid whose center takes the top-right corner instead of the bottom midpoint."""
    g = grid_graph(3, 3).graph
    edges = [e for e in g.edges() if e not in [(1, 4), (7, 8)]] + [(4, 8), (1, 7)]
    return Graph(9, edges)


def twin_boundary() -> Graph:
    """3x3 box whose interior points are all crossings; two boundaries share one rotation."""
    chords = [((1, 0), (1, 3)), ((2, 0), (2, 3)), ((0, 1), (3, 1)), ((0, 2), (3, 2))]
    return rect_drawing(3, 3, chords, Model.USF).graph


# -- external candidates ------------------------------------------------------


def test_grid3_single_candidate():
    rects = usf_external_candidates(grid_graph(3, 3).graph)
    assert len(rects) == 1
    r = rects[0]
    assert (r.width, r.height) == (2, 2) and len(r.cycle) == 8
    assert set(r.corners) == {0, 2, 6, 8}


def test_five_degree2_vertices_no_candidate():
    # K4 with five of its six edges subdivided once
    g = Graph(9, [(0, 4), (4, 1), (0, 5), (5, 2), (0, 6), (6, 3), (1, 7), (7, 2), (1, 8), (8, 3), (2, 3)])
    assert sum(1 for v in g.vertices() if g.degree(v) == 2) == 5
    stats = {}
    assert usf_external_candidates(g, stats) == []
    assert stats["reason"] == "corner-count"


def test_twin_boundaries_share_rotation():
    g = twin_boundary()
    rects = usf_external_candidates(g)
    assert len(rects) == 2
    assert not same_cycle(rects[0].cycle, rects[1].cycle)
    first, second = (usf_place_internal(g, r) for r in rects)
    assert validate(first).valid and validate(second).valid
    assert rotation_of(second.mirrored()) == rotation_of(first)
    rot = rotation_of(first)
    for r in rects:
        out = recognize_usf(g, Constraints(external_cycle=r.cycle, rotation=rot))
        assert out.accepted and rotation_of(out.drawing) == rot
        assert same_cycle(external_walk(out.drawing)[0], r.cycle)


def test_candidate_bound_and_success_on_corpus():
    for d in usf_corpus():
        rects = usf_external_candidates(d.graph)
        assert 1 <= len(rects) <= 6
        for r in rects:
            assert validate(usf_place_internal(d.graph, r)).valid


# -- placement ---------------------------------------------------------------


def test_place_grid3_natural():
    inst = grid_graph(3, 3)
    (rect,) = usf_external_candidates(inst.graph)
    d = usf_place_internal(inst.graph, rect)
    assert canonicalize(d) == canonicalize(inst.drawing)


def test_place_rewired_grid_rejects():
    g = rewired_grid()
    assert recognize_usf(g).verdict == "reject"
    assert brute_recognize(g, EnumerationBudget(4, 4), Model.USF).verdict == "reject"


def test_place_grid4():
    g = grid_graph(4, 4).graph
    (rect,) = usf_external_candidates(g)
    d = usf_place_internal(g, rect)
    assert (d.width, d.height) == (3, 3)
    cyc, _ = external_walk(d)
    assert all(g.degree(v) == 4 for v in g.vertices() if v not in cyc)


# -- recognition -------------------------------------------------------------


def test_c4_accept():
    out = recognize_usf(cycle(4))
    assert out.accepted and out.drawing.dimensions == (1, 1)


def test_c6_reject():
    out = recognize_usf(cycle(6))
    assert out.verdict == "reject" and out.reason == "cycle-not-c4"


@pytest.mark.parametrize("m", range(2, 7))
@pytest.mark.parametrize("n", range(2, 7))
def test_grids(m, n):
    out = recognize_usf(grid_graph(m, n).graph)
    assert out.accepted and validate(out.drawing).valid
    assert sorted(out.drawing.dimensions) == sorted((m - 1, n - 1))


def test_unsupported_constraints():
    with pytest.raises(ConstraintError):
        recognize_usf(cycle(4), Constraints(corners=(0, 1, 2, 3)))


def test_completeness_and_constraints_on_corpus():
    for d in usf_corpus():
        g = d.graph
        out = recognize_usf(g)
        assert out.accepted and out.drawing.model is Model.USF and validate(out.drawing).valid
        rot = rotation_of(d)
        cyc, _ = external_walk(d)
        for cons in (Constraints(rotation=rot), Constraints(external_cycle=cyc), Constraints(cyc, rot)):
            again = recognize_usf(g, cons)
            assert again.accepted
            if cons.rotation is not None:
                assert rotation_of(again.drawing) == rot
            if cons.external_cycle is not None:
                assert same_cycle(external_walk(again.drawing)[0], cyc)


def test_swapped_rotation_rejects():
    d = grid_graph(3, 3).drawing
    order = list(rotation_of(d).order)
    a, b, c, e = order[4]
    order[4] = (a, c, b, e)
    out = recognize_usf(d.graph, Constraints(rotation=RotationSystem(tuple(order))))
    assert out.verdict == "reject"


def test_negative_completeness_random():
    budget = EnumerationBudget(4, 4)
    checked = 0
    for g in random_biconnected_graphs(250, 9, seed=3):
        oracle = brute_recognize(g, budget, Model.USF)
        if oracle.verdict == "unknown":
            continue
        assert recognize_usf(g).verdict == oracle.verdict
        checked += 1
    assert checked >= 200


def test_counter_grows_linearly():
    sizes, steps = [], []
    for k in (4, 8, 16, 24, 32):
        c = SweepCounter()
        g = grid_graph(k, k + 3).graph
        (rect,) = usf_external_candidates(g)
        usf_place_internal(g, rect, c)
        sizes.append(g.n)
        steps.append(c.steps)
    assert linear_fit_within(sizes, steps, 0.2)
