"""Shared drawing builders for the test suite."""

from __future__ import annotations

import os
import sys

import pytest

from uerrf.drawing import GridDrawing, Model, drawing_from_points
from uerrf.graph import Graph


def boundary(w: int, h: int) -> list:
    pts = [(x, 0) for x in range(w)] + [(w, y) for y in range(h)]
    pts += [(x, h) for x in range(w, 0, -1)] + [(0, y) for y in range(h, 0, -1)]
    return [(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))]


def rect_drawing(w: int, h: int, extra=(), model=Model.RF) -> GridDrawing:
    return drawing_from_points(boundary(w, h) + list(extra), model)


def crossed_c8() -> GridDrawing:
    """2x2 box with two length-2 chords meeting at (1, 1)."""
    return rect_drawing(2, 2, [((1, 0), (1, 2)), ((0, 1), (2, 1))])


def c12_chord() -> GridDrawing:
    """3x3 box with a vertical chord at x = 1 through two interior vertices."""
    return rect_drawing(3, 3, [((1, 0), (1, 1)), ((1, 1), (1, 2)), ((1, 2), (1, 3))])


def c12_crossing_chords() -> GridDrawing:
    """3x3 box with a vertical and a horizontal chord crossing once, at (1, 2)."""
    return rect_drawing(3, 3, [((1, 0), (1, 1)), ((1, 1), (1, 3)), ((0, 2), (2, 2)), ((2, 2), (3, 2))])


def grid_drawing(m: int, n: int, model=Model.USF) -> GridDrawing:
    segs = [((x, y), (x + 1, y)) for y in range(n) for x in range(m - 1)]
    segs += [((x, y), (x, y + 1)) for x in range(m) for y in range(n - 1)]
    return drawing_from_points(segs, model)


def cycle(k: int) -> Graph:
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def complete(k: int) -> Graph:
    return Graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


@pytest.fixture
def xc8() -> GridDrawing:
    return crossed_c8()


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", help="run multi-minute enumerations")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: multi-minute enumeration, needs --runslow or UERRF_SLOW=1")


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is not None and acceptance.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in acceptance.REPORT:
            terminalreporter.write_line(line)


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow") or os.environ.get("UERRF_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="slow: pass --runslow or set UERRF_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def linear_fit_within(xs, ys, tolerance):
    """Least-squares line through the points; every point within ``tolerance`` of it."""
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
    icept = my - slope * mx
    return slope > 0 and all(abs(y - (slope * x + icept)) <= tolerance * (slope * x + icept) for x, y in zip(xs, ys))
