"""Brute-force ground truth: every valid drawing on small boxes, and recognition by lookup.

A drawing is enumerated as a *skeleton* (the set of unit segments inside a
``w`` x ``h`` box whose boundary is fully drawn) together with a choice,
at every four-way point, of real vertex or crossing.  The local rule that
makes all faces rectangles is simple: an interior point is empty, straight,
a T or a cross; boundary points are straight or T; the four box corners
are the only bends.  Add connectivity and every face is a rectangle.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterator, Mapping, Sequence

from .drawing import GridDrawing, Model, Point, canonicalize, direction, drawing_from_points
from .graph import Graph, edge_key
from .outcome import Constraints, RecognitionOutcome, satisfies

# (west, east, south, north) edge presence
_SHAPES = (
    (0, 0, 0, 0),
    (1, 1, 0, 0),
    (0, 0, 1, 1),
    (1, 1, 1, 0),
    (1, 1, 0, 1),
    (1, 0, 1, 1),
    (0, 1, 1, 1),
    (1, 1, 1, 1),
)


@dataclass(frozen=True)
class EnumerationBudget:
    max_width: int
    max_height: int
    max_vertices: int | None = None
    time_limit: float | None = None

    def __post_init__(self) -> None:
        if self.max_width < 1 or self.max_height < 1:
            raise ValueError("box sides must be positive")
        if self.max_vertices is not None and self.max_vertices < 1:
            raise ValueError("max_vertices must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")

    def boxes(self) -> list[tuple[int, int]]:
        return [(w, h) for w in range(1, self.max_width + 1) for h in range(1, self.max_height + 1)]

    def covers(self, n: int) -> bool:
        """True when every box whose boundary fits ``n`` real vertices is inside the budget."""
        for w in range(1, n):
            for h in range(1, n):
                if 2 * (w + h) <= n and (w > self.max_width or h > self.max_height):
                    return False
        return self.max_vertices is None or n <= self.max_vertices


@dataclass
class Enumeration:
    drawings: list[GridDrawing] = field(default_factory=list)
    complete: bool = True

    def __iter__(self) -> Iterator[GridDrawing]:
        return iter(self.drawings)

    def __len__(self) -> int:
        return len(self.drawings)


def skeletons(w: int, h: int, model: Model | str = Model.RF) -> Iterator[dict[Point, tuple[int, int, int, int]]]:
    """Shapes of all interior points of a ``w`` x ``h`` box satisfying the local rule.

    In a box of height (width) one there are no interior points; the
    optional unit chords between the long sides are then reported as
    the shape of their lower (left) endpoint.
    """
    model = Model.parse(model)
    shapes = [_SHAPES[-1]] if model is Model.USF else list(_SHAPES)
    if h == 1 or w == 1:
        ends = [(x, 0) for x in range(1, w)] if h == 1 else [(0, y) for y in range(1, h)]
        chord = (0, 0, 0, 1) if h == 1 else (0, 1, 0, 0)
        options = [chord] if model is Model.USF else [(0, 0, 0, 0), chord]
        for pick in product(options, repeat=len(ends)):
            yield {p: s for p, s in zip(ends, pick) if s != (0, 0, 0, 0)}
        return
    pts = [(x, y) for y in range(1, h) for x in range(1, w)]
    chosen: dict[Point, tuple[int, int, int, int]] = {}

    def rec(k: int) -> Iterator[dict[Point, tuple[int, int, int, int]]]:
        if k == len(pts):
            yield dict(chosen)
            return
        x, y = pts[k]
        for s in shapes:
            if x > 1 and chosen[(x - 1, y)][1] != s[0]:
                continue
            if y > 1 and chosen[(x, y - 1)][3] != s[2]:
                continue
            chosen[(x, y)] = s
            yield from rec(k + 1)
        chosen.pop((x, y), None)

    yield from rec(0)


def _segments(w: int, h: int, shape: Mapping[Point, tuple[int, int, int, int]]) -> dict[Point, set[Point]]:
    links: dict[Point, set[Point]] = {}

    def link(a: Point, b: Point) -> None:
        links.setdefault(a, set()).add(b)
        links.setdefault(b, set()).add(a)

    for x in range(w):
        link((x, 0), (x + 1, 0))
        link((x, h), (x + 1, h))
    for y in range(h):
        link((0, y), (0, y + 1))
        link((w, y), (w, y + 1))
    for (x, y), (we, ea, so, no) in shape.items():
        if we:
            link((x - 1, y), (x, y))
        if ea:
            link((x, y), (x + 1, y))
        if so:
            link((x, y - 1), (x, y))
        if no:
            link((x, y), (x, y + 1))
    return links


def _connected(links: Mapping[Point, set[Point]]) -> bool:
    start = next(iter(links))
    seen = {start}
    stack = [start]
    while stack:
        p = stack.pop()
        for q in links[p]:
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return len(seen) == len(links)


def _drawing_from(links: Mapping[Point, set[Point]], crossings: set[Point], model: Model) -> GridDrawing:
    real = sorted((p for p in links if p not in crossings), key=lambda p: (p[1], p[0]))
    index = {p: i for i, p in enumerate(real)}
    edges = set()
    for p in real:
        for q in links[p]:
            dx, dy = q[0] - p[0], q[1] - p[1]
            cur = q
            while cur in crossings:
                cur = (cur[0] + dx, cur[1] + dy)
            edges.add(edge_key(index[p], index[cur]))
    return GridDrawing(Graph(len(real), sorted(edges)), tuple(real), model)


def _geometry_key(d: GridDrawing) -> tuple:
    best = None
    for k in range(8):
        t = d.transformed(k)
        pts = tuple(sorted(t.positions))
        segs = tuple(sorted(tuple(sorted((t.positions[u], t.positions[v]))) for u, v in d.graph.edges()))
        key = (pts, segs)
        if best is None or key < best:
            best = key
    return best


def _relabel(d: GridDrawing) -> GridDrawing:
    """Same drawing with vertex ids in (y, x) order of the canonical image."""
    c = canonicalize(d)
    order = sorted(range(c.graph.n), key=lambda v: (c.positions[v][1], c.positions[v][0]))
    new = {old: i for i, old in enumerate(order)}
    g = Graph(c.graph.n, [(new[u], new[v]) for u, v in c.graph.edges()])
    return GridDrawing(g, tuple(c.positions[old] for old in order), c.model)


def _box_drawings(w: int, h: int, model: Model, deadline: float | None) -> tuple[list[GridDrawing], bool]:
    out = []
    for shape in skeletons(w, h, model):
        if deadline is not None and time.monotonic() > deadline:
            return out, False
        links = _segments(w, h, shape)
        if not _connected(links):
            continue
        plus = sorted(p for p, s in shape.items() if s == _SHAPES[-1])
        for bits in product((0, 1), repeat=len(plus)):
            crossings = {p for p, b in zip(plus, bits) if b}
            out.append(_drawing_from(links, crossings, model))
    return out, True


@lru_cache(maxsize=None)
def _box_cached(w: int, h: int, model: Model) -> tuple[GridDrawing, ...]:
    seen = set()
    out = []
    for d in _box_drawings(w, h, model, None)[0]:
        key = _geometry_key(d)
        if key not in seen:
            seen.add(key)
            out.append(_relabel(d))
    return tuple(out)


def box_drawings(w: int, h: int, model: Model | str = Model.RF) -> tuple[GridDrawing, ...]:
    """Drawings filling exactly a ``w`` x ``h`` box, one per symmetry class."""
    return _box_cached(w, h, Model.parse(model))


@lru_cache(maxsize=None)
def _enumerate_cached(max_w: int, max_h: int, model: Model) -> tuple[tuple[GridDrawing, ...], bool]:
    seen = set()
    out = []
    for w in range(1, max_w + 1):
        for h in range(1, max_h + 1):
            for d in _box_cached(w, h, model):
                key = _geometry_key(d)
                if key not in seen:
                    seen.add(key)
                    out.append(d)
    return tuple(out), True


def enumerate_drawings(budget: EnumerationBudget, model: Model | str = Model.RF) -> Enumeration:
    """Every valid drawing inside the budget, once per symmetry class, in a fixed order."""
    model = Model.parse(model)
    if budget.time_limit is None:
        ds, complete = _enumerate_cached(budget.max_width, budget.max_height, model)
        ds_list = list(ds)
    else:
        deadline = time.monotonic() + budget.time_limit
        seen = set()
        ds_list = []
        complete = True
        for w, h in budget.boxes():
            part, ok = _box_drawings(w, h, model, deadline)
            for d in part:
                key = _geometry_key(d)
                if key not in seen:
                    seen.add(key)
                    ds_list.append(_relabel(d))
            if not ok:
                complete = False
                break
    if budget.max_vertices is not None:
        ds_list = [d for d in ds_list if d.graph.n <= budget.max_vertices]
    return Enumeration(ds_list, complete)


# ---------------------------------------------------------------------------
# Isomorphism and canonical forms
# ---------------------------------------------------------------------------


def refine_colours(g: Graph, colours: Sequence[int] | None = None) -> list[int]:
    """Stable colour refinement starting from ``colours`` (degrees by default)."""
    col = list(colours) if colours is not None else [g.degree(v) for v in g.vertices()]
    while True:
        sig = [(col[v], tuple(sorted(col[u] for u in g.neighbors(v)))) for v in g.vertices()]
        palette = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [palette[s] for s in sig]
        if len(set(new)) == len(set(col)):
            return new
        col = new


def canonical_form(g: Graph) -> tuple:
    """Isomorphism-invariant certificate: least relabelled edge list over an individualisation search."""
    best: list[tuple] = []

    def search(col: list[int]) -> None:
        col = refine_colours(g, col)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(col):
            cells.setdefault(c, []).append(v)
        target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            order = sorted(g.vertices(), key=lambda v: col[v])
            rank = {v: i for i, v in enumerate(order)}
            cert = (g.n, tuple(sorted(edge_key(rank[u], rank[v]) for u, v in g.edges())))
            if not best or cert < best[0]:
                best[:] = [cert]
            return
        for v in cells[target]:
            nxt = [2 * c for c in col]
            nxt[v] = 2 * target + 1
            search(nxt)

    if g.n == 0:
        return (0, ())
    search([g.degree(v) for v in g.vertices()])
    return best[0]


def isomorphisms(g: Graph, h: Graph) -> Iterator[list[int]]:
    """All bijections ``phi`` with ``phi[v]`` in ``h`` preserving adjacency."""
    if g.n != h.n or g.edge_count != h.edge_count:
        return
    cg = refine_colours_joint(g, h)
    if cg is None:
        return
    col_g, col_h = cg
    order = _search_order(g)
    phi = [-1] * g.n
    used = [False] * h.n

    def rec(k: int) -> Iterator[list[int]]:
        if k == g.n:
            yield list(phi)
            return
        v = order[k]
        for u in h.vertices():
            if used[u] or col_h[u] != col_g[v]:
                continue
            ok = True
            for w in g.neighbors(v):
                if phi[w] >= 0 and not h.has_edge(u, phi[w]):
                    ok = False
                    break
            if ok:
                mapped_nbrs = sum(1 for w in g.neighbors(v) if phi[w] >= 0)
                if sum(1 for x in h.neighbors(u) if used[x]) != mapped_nbrs:
                    ok = False
            if not ok:
                continue
            phi[v] = u
            used[u] = True
            yield from rec(k + 1)
            phi[v] = -1
            used[u] = False

    yield from rec(0)


def refine_colours_joint(g: Graph, h: Graph) -> tuple[list[int], list[int]] | None:
    """Colour refinement on the disjoint union; ``None`` if the colour histograms differ."""
    n = g.n
    union = Graph(n + h.n, list(g.edges()) + [(u + n, v + n) for u, v in h.edges()])
    col = refine_colours(union)
    a, b = col[:n], col[n:]
    if sorted(a) != sorted(b):
        return None
    return a, b


def _search_order(g: Graph) -> list[int]:
    order: list[int] = []
    seen: set[int] = set()
    for s in sorted(g.vertices(), key=lambda v: -g.degree(v)):
        if s in seen:
            continue
        queue = [s]
        seen.add(s)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in g.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return order


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return next(isomorphisms(g, h), None) is not None


# ---------------------------------------------------------------------------
# Brute-force recognition
# ---------------------------------------------------------------------------


def _pullback(d: GridDrawing, g: Graph, phi: Sequence[int]) -> GridDrawing:
    return GridDrawing(g, tuple(d.positions[phi[v]] for v in g.vertices()), d.model)


def _invariant(g: Graph) -> tuple:
    return (g.n, g.edge_count, tuple(sorted(g.degrees())))


@lru_cache(maxsize=None)
def _index(w: int, h: int, model: Model) -> dict[tuple, list[GridDrawing]]:
    idx: dict[tuple, list[GridDrawing]] = {}
    for d in _box_cached(w, h, model):
        idx.setdefault(_invariant(d.graph), []).append(d)
    return idx


def brute_recognize(
    g: Graph, budget: EnumerationBudget, model: Model | str = Model.RF, constraints: Constraints | None = None
) -> RecognitionOutcome:
    """Accept iff some enumerated drawing is a drawing of ``g`` meeting ``constraints``."""
    model = Model.parse(model)
    cons = constraints or Constraints()
    cons.check(g)
    if g.n == 0:
        return RecognitionOutcome.reject("empty")
    # a box needs at least its perimeter in real vertices
    bucket = []
    for w, h in budget.boxes():
        if 2 * (w + h) <= g.n:
            bucket.extend(_index(w, h, model).get(_invariant(g), []))
    tried = 0
    for d in bucket:
        if budget.max_vertices is not None and d.graph.n > budget.max_vertices:
            continue
        for phi in isomorphisms(g, d.graph):
            tried += 1
            base = _pullback(d, g, phi)
            for cand in (base, base.mirrored()) if cons.rotation is not None else (base,):
                if satisfies(cand, cons):
                    return RecognitionOutcome.accept(cand, checked=tried)
    if not budget.covers(g.n):
        return RecognitionOutcome.unknown(f"boxes larger than {budget.max_width}x{budget.max_height} not searched")
    return RecognitionOutcome.reject("no-drawing", f"{len(bucket)} drawings with matching degrees", checked=tried)


# ---------------------------------------------------------------------------
# Instance generation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    graph: Graph
    drawing: GridDrawing | None = None
    name: str = ""


def grid_graph(m: int, n: int) -> Instance:
    """``m`` rows by ``n`` columns, drawn at its natural coordinates."""
    if m < 1 or n < 1:
        raise ValueError("grid sides must be positive")
    vid = lambda r, c: r * n + c  # noqa: E731
    edges = []
    for r in range(m):
        for c in range(n):
            if c + 1 < n:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < m:
                edges.append((vid(r, c), vid(r + 1, c)))
    g = Graph(m * n, edges)
    pos = tuple((c, r) for r in range(m) for c in range(n))
    return Instance(g, GridDrawing(g, pos, Model.USF), f"grid{m}x{n}")


def cycle_graph(k: int) -> Instance:
    if k < 3:
        raise ValueError("cycles need at least 3 vertices")
    g = Graph(k, [(i, (i + 1) % k) for i in range(k)])
    d = None
    if k % 2 == 0:
        w = k // 2 - 1
        pos = [(i, 0) for i in range(w + 1)] + [(w - i, 1) for i in range(w + 1)]
        d = GridDrawing(g, tuple(pos), Model.RF if k != 4 else Model.USF)
    return Instance(g, d, f"C{k}")


def ladder_graph(width: int, rungs: int) -> Instance:
    """A ``width`` x 1 rectangle with evenly spaced rungs: ``2 * rungs`` degree-3 vertices."""
    if not 0 <= rungs < width:
        raise ValueError("need 0 <= rungs < width")
    segs = [((x, y), (x + 1, y)) for y in (0, 1) for x in range(width)]
    segs += [((0, 0), (0, 1)), ((width, 0), (width, 1))]
    for i in range(rungs):
        x = (i + 1) * width // (rungs + 1)
        segs.append(((x, 0), (x, 1)))
    d = drawing_from_points(segs, Model.RF)
    return Instance(d.graph, d, f"ladder-{width}-{rungs}")


def crossing_graph(size: int = 4) -> Instance:
    """A square split by a full cross whose centre is a crossing, plus one T-junction stub."""
    if size < 4:
        raise ValueError("size must be at least 4")
    mid = size // 2
    segs = [((x, y), (x + 1, y)) for y in (0, size) for x in range(size)]
    segs += [((x, y), (x, y + 1)) for x in (0, size) for y in range(size)]
    segs += [((mid, y), (mid, y + 1)) for y in range(size)]
    segs += [((x, mid), (x + 1, mid)) for x in range(size)]
    segs += [((1, y), (1, y + 1)) for y in range(mid, size)]
    d = drawing_from_points(segs, Model.RF)
    # replace the centre vertex by a crossing: join its opposite neighbors directly
    pos = list(d.positions)
    k = pos.index((mid, mid))
    by_dir = {direction(pos[k], pos[j]): j for j in d.graph.neighbors(k)}
    keep = [i for i in range(len(pos)) if i != k]
    new = {old: i for i, old in enumerate(keep)}
    edges = [(new[a], new[b]) for a, b in d.graph.edges() if k not in (a, b)]
    edges += [(new[by_dir[0]], new[by_dir[2]]), (new[by_dir[1]], new[by_dir[3]])]
    g = Graph(len(keep), edges)
    return Instance(g, GridDrawing(g, tuple(pos[i] for i in keep), Model.RF), f"crossing-{size}")


def gen_instance(kind: str, *args, seed: int = 0, budget: EnumerationBudget | None = None, model: Model | str = Model.RF) -> Instance:
    """``grid`` (m, n), ``cycle`` (k), ``ladder`` (width, rungs), ``crossing`` (size)
    or ``sampled`` (one enumerated drawing chosen by ``seed``)."""
    if kind == "grid":
        return grid_graph(*args)
    if kind == "ladder":
        return ladder_graph(*args)
    if kind == "crossing":
        return crossing_graph(*args)
    if kind == "cycle":
        return cycle_graph(*args)
    if kind == "sampled":
        budget = budget or EnumerationBudget(3, 3)
        ds = enumerate_drawings(budget, model).drawings
        if not ds:
            raise ValueError("budget admits no drawing")
        d = random.Random(seed).choice(ds)
        return Instance(d.graph, d, f"sampled-{seed}")
    raise ValueError(f"unknown instance kind {kind!r}")


def random_biconnected_graphs(count: int, max_n: int, seed: int = 0) -> Iterator[Graph]:
    """Random biconnected 4-graphs on at most ``max_n`` vertices, pairwise non-isomorphic."""
    from .graph import is_biconnected

    rng = random.Random(seed)
    seen = set()
    produced = 0
    attempts = 0
    while produced < count and attempts < 200 * count:
        attempts += 1
        n = rng.randint(4, max_n)
        m = rng.randint(n, min(2 * n, n * (n - 1) // 2))
        edges: set[tuple[int, int]] = set()
        deg = [0] * n
        # start from a Hamiltonian cycle so biconnectivity is likely
        perm = list(range(n))
        rng.shuffle(perm)
        for i in range(n):
            a, b = perm[i], perm[(i + 1) % n]
            edges.add(edge_key(a, b))
            deg[a] += 1
            deg[b] += 1
        tries = 0
        while len(edges) < m and tries < 50:
            tries += 1
            a, b = rng.sample(range(n), 2)
            e = edge_key(a, b)
            if e in edges or deg[a] >= 4 or deg[b] >= 4:
                continue
            edges.add(e)
            deg[a] += 1
            deg[b] += 1
        g = Graph(n, sorted(edges))
        if not is_biconnected(g):
            continue
        cf = canonical_form(g)
        if cf in seen:
            continue
        seen.add(cf)
        produced += 1
        yield g

