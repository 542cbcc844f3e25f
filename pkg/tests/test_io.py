from __future__ import annotations

import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import crossed_c8
from uerrf.drawing import Model, angles_of, extract_graph
from uerrf.graph import GraphError
from uerrf.io import (
    ParseError,
    dumps_drawing,
    emit_instance,
    loads_drawing,
    parse_instance,
    read_corpus,
    write_corpus,
)
from uerrf.oracle import box_drawings
from uerrf.outcome import Constraints

C8 = "8 8\n" + "".join(f"{i} {(i + 1) % 8}\n" for i in range(8))


def test_one_line_c4():
    inst = parse_instance("4 4 / 0 1 / 1 2 / 2 3 / 3 0")
    assert inst.graph.is_cycle() and inst.graph.n == 4
    assert inst.constraints.is_empty() and inst.model is None


def test_corners_carried():
    inst = parse_instance(C8 + "corners: 0 2 4 6\n")
    assert inst.constraints.corners == (0, 2, 4, 6)


def test_angle_on_degree2_rejected():
    with pytest.raises(ParseError) as exc:
        parse_instance(C8 + "angle: 0 1 7\n")
    assert exc.value.code == "bad-angle" and exc.value.line == 10


def test_comments_and_model():
    inst = parse_instance("# a square\n4 4\n0 1\n1 2 # top\n2 3\n3 0\nmodel: usf\n")
    assert inst.model is Model.USF


@pytest.mark.parametrize(
    "text, code, line",
    [
        ("", "empty-input", 1),
        ("4\n", "bad-header", 1),
        ("3 2\n0 1\n1 5\n", "dangling-id", 3),
        ("3 3\n0 1\n1 2\n", "missing-edges", 4),
        ("3 2\n0 1\n1 x\n", "bad-token", 3),
        ("4 4 / 0 1 / 1 2 / 2 3 / 3 0\nfoo: 1\n", "bad-section", 2),
        ("4 4 / 0 1 / 1 2 / 2 3 / 3 0\ncorners: 0 1 2\n", "bad-corners", 2),
        ("4 4 / 0 1 / 1 2 / 2 3 / 3 0\nmodel: xyz\n", "bad-model", 2),
        ("4 4 / 0 1 / 1 2 / 2 3 / 3 0\nrotation: 0 1 3\n", "bad-rotation", 2),
        ("4 4 / 0 1 / 1 2 / 2 3 / 3 0\nrotation: 0 1 2\n", "bad-rotation", 2),
        ("4 4 / 0 1 / 1 2 / 2 3 / 3 0\nexternal: 0 1\nexternal: 0 1 2 3\n", "duplicate-section", 3),
    ],
)
def test_parse_errors(text, code, line):
    with pytest.raises(ParseError) as exc:
        parse_instance(text)
    assert exc.value.code == code and exc.value.line == line


def test_graph_errors_surface():
    with pytest.raises(GraphError) as exc:
        parse_instance("2 2\n0 1\n1 0\n")
    assert exc.value.code == "duplicate-edge"


def test_bad_external_cycle():
    with pytest.raises(GraphError):
        parse_instance(C8 + "external: 0 1 2 4\n")


def test_emit_normal_form():
    inst = parse_instance("4 4\n3 0\n2 3\n1 2\n0 1\ncorners: 0 1 2 3\nmodel: rf\n")
    assert emit_instance(inst.graph, inst.constraints, inst.model) == "4 4\n0 1\n0 3\n1 2\n2 3\nmodel: rf\ncorners: 0 1 2 3\n"


_DRAWINGS = [d for w, h in ((2, 2), (3, 2), (3, 3)) for d in box_drawings(w, h, Model.RF)]


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(_DRAWINGS), st.booleans(), st.booleans(), st.booleans(), st.booleans())
def test_instance_round_trip(d, use_rot, use_cyc, use_corners, use_angles):
    ex = extract_graph(d)
    angles = angles_of(d) or None
    cons = Constraints(
        ex.external_cycle if use_cyc else None,
        ex.rotation if use_rot else None,
        ex.corners if use_corners else None,
        angles if use_angles else None,
    )
    text = emit_instance(ex.graph, cons, Model.RF)
    back = parse_instance(text)
    assert back.graph == ex.graph and back.model is Model.RF
    assert back.constraints.external_cycle == cons.external_cycle
    assert back.constraints.corners == cons.corners
    assert back.constraints.rotation == cons.rotation
    assert (back.constraints.angles or None) == (dict(cons.angles) if cons.angles else None)
    assert emit_instance(back.graph, back.constraints, back.model) == text


# -- drawings --------------------------------------------------------------------


def test_drawing_round_trip():
    d = crossed_c8()
    text = dumps_drawing(d)
    assert text.endswith("\n") and text.startswith('{\n  "model": "RF"')
    assert loads_drawing(text) == d


def test_drawing_compact_single_line():
    assert "\n" not in dumps_drawing(crossed_c8(), compact=True)


def test_corpus_round_trip():
    buf = io.StringIO()
    ds = list(box_drawings(3, 3, Model.USF))
    assert write_corpus(ds, buf) == len(ds)
    buf.seek(0)
    assert list(read_corpus(buf)) == ds


@pytest.mark.parametrize(
    "text, code",
    [
        ("{", "bad-json"),
        ("[]", "bad-drawing"),
        ('{"vertices": [{"id": 1, "x": 0, "y": 0}], "edges": []}', "bad-drawing"),
        ('{"vertices": [{"id": 0, "x": 0}], "edges": []}', "bad-drawing"),
        ('{"model": "XX", "vertices": [], "edges": []}', "bad-drawing"),
    ],
)
def test_drawing_errors(text, code):
    with pytest.raises(ParseError) as exc:
        loads_drawing(text)
    assert exc.value.code == code
