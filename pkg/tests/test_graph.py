from __future__ import annotations

import itertools
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete, cycle
from uerrf.graph import (
    Graph,
    GraphError,
    NotTriconnectedError,
    RotationSystem,
    is_biconnected,
    is_planar,
    is_triconnected,
    planar_embedding,
    smooth_degree2,
)
from uerrf.oracle import grid_graph


def k33() -> Graph:
    return Graph(6, [(a, b) for a in range(3) for b in range(3, 6)])


def cube() -> Graph:
    return Graph(8, [(a, b) for a in range(8) for b in range(a + 1, 8) if bin(a ^ b).count("1") == 1])


# -- basic structure ---------------------------------------------------------


def test_degree_examples():
    assert complete(4).degree(0) == 3
    assert cycle(6).degree(2) == 2
    assert grid_graph(3, 3).graph.degree(4) == 4


@pytest.mark.parametrize(
    "edges, code",
    [([(0, 0)], "self-loop"), ([(0, 1), (1, 0)], "duplicate-edge"), ([(0, 7)], "dangling-id")],
)
def test_constructor_rejects(edges, code):
    with pytest.raises(GraphError) as exc:
        Graph(3, edges)
    assert exc.value.code == code


def test_degree_bound():
    with pytest.raises(GraphError) as exc:
        Graph(6, [(0, i) for i in range(1, 6)])
    assert exc.value.code == "degree-too-large"


def test_adjacency_symmetric():
    g = grid_graph(4, 3).graph
    for v in g.vertices():
        for u in g.neighbors(v):
            assert v in g.neighbors(u)


def test_biconnected_examples():
    assert is_biconnected(cycle(4))
    assert not is_biconnected(Graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]))
    assert not is_biconnected(Graph(3, [(0, 1), (1, 2)]))


def test_planar_examples():
    assert is_planar(complete(4))
    assert not is_planar(complete(5))
    assert not is_planar(k33())


def test_triconnected_examples():
    assert is_triconnected(complete(4))
    assert not is_triconnected(cycle(8))
    assert is_triconnected(cube())


def _face_sizes(rot: RotationSystem) -> list[int]:
    return sorted(len(f) for f in rot.faces())


def test_embedding_examples():
    assert _face_sizes(planar_embedding(complete(4))) == [3, 3, 3, 3]
    assert _face_sizes(planar_embedding(cube())) == [4] * 6
    with pytest.raises(NotTriconnectedError):
        planar_embedding(cycle(8))


def test_rotation_check():
    g = cycle(4)
    RotationSystem(((1, 3), (0, 2), (1, 3), (0, 2))).check(g)
    with pytest.raises(GraphError):
        RotationSystem(((1, 2), (0, 2), (1, 3), (0, 2))).check(g)


def test_rotation_equality_is_cyclic():
    a = RotationSystem(((1, 2, 3),) + ((0,),) * 3)
    b = RotationSystem(((3, 1, 2),) + ((0,),) * 3)
    assert a == b
    assert a != a.reversed()


# -- smoothing ---------------------------------------------------------------


def test_smooth_c8_alternating():
    h, m = smooth_degree2(cycle(8), keep={0, 2, 4, 6})
    assert h.n == 4 and h.is_cycle()
    assert sorted(len(m.interior(a, b)) for a, b in h.edges()) == [1, 1, 1, 1]


def test_smooth_identity():
    g = complete(4)
    h, m = smooth_degree2(g)
    assert h == g
    assert all(not m.interior(a, b) for a, b in h.edges())


def test_smooth_grid_minus_center():
    g, _ = grid_graph(3, 3).graph.induced([0, 1, 2, 3, 5, 6, 7, 8])
    corners = {0, 2, 5, 7}
    h, m = smooth_degree2(g, keep=corners)
    assert h.is_cycle() and h.n == 4
    assert set(m.original_ids) == corners
    assert sorted(len(m.interior(a, b)) for a, b in h.edges()) == [1, 1, 1, 1]


def test_smooth_degenerate_cycle():
    with pytest.raises(GraphError) as exc:
        smooth_degree2(cycle(6), keep={0})
    assert exc.value.code == "degenerate-cycle"


@st.composite
def subdivided(draw):
    """A biconnected core with random edge subdivisions, plus the relabelled core ids."""
    core = draw(st.sampled_from([complete(4), cube(), k33(), grid_graph(3, 3).graph, grid_graph(3, 2).graph]))
    edges, n = [], core.n
    for u, v in core.edges():
        k = draw(st.integers(0, 3))
        chain = [u] + list(range(n, n + k)) + [v]
        n += k
        edges += list(zip(chain, chain[1:]))
    perm = draw(st.permutations(range(n)))
    return Graph(n, [(perm[a], perm[b]) for a, b in edges]), {perm[v] for v in core.vertices()}


def _check_round_trip(g, keep):
    h, m = smooth_degree2(g, keep)
    assert m.unsmooth(g.n) == g
    covered = list(m.original_ids) + [v for a, b in h.edges() for v in m.interior(a, b)]
    assert sorted(covered) == list(g.vertices())


@settings(max_examples=80, deadline=None)
@given(subdivided())
def test_unsmooth_round_trip(case):
    g, core = case
    _check_round_trip(g, core)
    try:
        _check_round_trip(g, ())
    except GraphError as exc:
        # full smoothing of a degree-2 core vertex may merge two paths
        assert exc.code == "multi-edge"


# -- random graph properties -------------------------------------------------


@st.composite
def small_graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    deg = [0] * n
    edges = []
    for u, v in chosen:
        if deg[u] < 4 and deg[v] < 4:
            deg[u] += 1
            deg[v] += 1
            edges.append((u, v))
    return Graph(n, edges)


def _canon(edges: frozenset) -> frozenset:
    verts = sorted({v for e in edges for v in e})
    index = {v: i for i, v in enumerate(verts)}
    return frozenset(tuple(sorted((index[a], index[b]))) for a, b in edges)


def _degrees(edges) -> dict:
    deg: dict = {}
    for a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    return deg


def _reduce(edges: frozenset) -> frozenset:
    """Drop degree-1 vertices and smooth degree-2 ones; both keep the minor set."""
    edges = set(edges)
    while True:
        deg = _degrees(edges)
        low = next((v for v, k in deg.items() if k <= 2), None)
        if low is None:
            return frozenset(edges)
        inc = [e for e in edges if low in e]
        edges -= set(inc)
        if len(inc) == 2:
            a, b = (e[0] if e[1] == low else e[1] for e in inc)
            edges.add((min(a, b), max(a, b)))


def _has_kuratowski_subgraph(edges: frozenset) -> bool:
    verts = sorted({v for e in edges for v in e})
    adj = {v: set() for v in verts}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    for five in itertools.combinations(verts, 5):
        if all(b in adj[a] for a, b in itertools.combinations(five, 2)):
            return True
    for six in itertools.combinations(verts, 6):
        for left in itertools.combinations(six, 3):
            right = [v for v in six if v not in left]
            if all(b in adj[a] for a in left for b in right):
                return True
    return False


@lru_cache(maxsize=None)
def _has_kuratowski_minor(edges: frozenset) -> bool:
    edges = _canon(_reduce(edges))
    if len(edges) < 9:
        return False
    if _has_kuratowski_subgraph(edges):
        return True
    for e in edges:
        if _has_kuratowski_minor(edges - {e}):
            return True
        a, b = e
        merged = set()
        for x, y in edges - {e}:
            x, y = (a if x == b else x), (a if y == b else y)
            if x != y:
                merged.add((min(x, y), max(x, y)))
        if _has_kuratowski_minor(frozenset(merged)):
            return True
    return False


@settings(max_examples=150, deadline=None)
@given(small_graphs())
def test_planarity_matches_kuratowski_search(g):
    assert is_planar(g) == (not _has_kuratowski_minor(frozenset(g.edges())))


@settings(max_examples=150, deadline=None)
@given(small_graphs())
def test_triconnected_implies_biconnected(g):
    if is_triconnected(g):
        assert is_biconnected(g)


@settings(max_examples=100, deadline=None)
@given(small_graphs())
def test_embedding_euler(g):
    if not (is_planar(g) and is_triconnected(g)):
        return
    rot = planar_embedding(g)
    rot.check(g)
    assert g.n - g.edge_count + len(rot.faces()) == 2


def test_kuratowski_search_sanity():
    assert _has_kuratowski_minor(frozenset(complete(5).edges()))
    assert _has_kuratowski_minor(frozenset(k33().edges()))
    assert not _has_kuratowski_minor(frozenset(cube().edges()))
    # K3,3 with one subdivided edge stays non-planar
    sub = Graph(7, [e for e in k33().edges() if e != (0, 3)] + [(0, 6), (6, 3)])
    assert _has_kuratowski_minor(frozenset(sub.edges())) and not is_planar(sub)
