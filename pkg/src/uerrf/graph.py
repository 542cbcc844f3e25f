"""Simple undirected 4-graphs and the structural predicates the recognizers need.

Vertices are dense integers ``0..n-1``; optional external names live in a
side table.  Graphs are immutable once built, so candidate branches can
share one base graph freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx

MAX_DEGREE = 4


class GraphError(ValueError):
    """Raised when a graph is malformed or an operation's precondition fails."""

    def __init__(self, code: str, message: str = "") -> None:
        super().__init__(f"{code}: {message}" if message else code)
        self.code = code


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph with maximum degree 4."""

    __slots__ = ("_adj", "_labels", "_edges")

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable[Sequence[int]] = (),
        labels: Sequence[str | None] | Mapping[int, str] | None = None,
    ) -> None:
        if vertex_count < 0:
            raise GraphError("bad-vertex-count", str(vertex_count))
        adj: list[set[int]] = [set() for _ in range(vertex_count)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphError("dangling-id", f"edge ({u}, {v})")
            if u == v:
                raise GraphError("self-loop", f"vertex {u}")
            if v in adj[u]:
                raise GraphError("duplicate-edge", f"({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        for v, nbrs in enumerate(adj):
            if len(nbrs) > MAX_DEGREE:
                raise GraphError("degree-too-large", f"vertex {v} has degree {len(nbrs)}")
        self._adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in adj)
        self._edges = tuple(sorted(edge_key(u, v) for u in range(vertex_count) for v in adj[u] if u < v))
        if labels is None:
            self._labels: tuple[str | None, ...] = (None,) * vertex_count
        elif isinstance(labels, Mapping):
            self._labels = tuple(labels.get(v) for v in range(vertex_count))
        else:
            if len(labels) != vertex_count:
                raise GraphError("bad-labels", "label count differs from vertex count")
            self._labels = tuple(labels)

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    @property
    def labels(self) -> tuple[str | None, ...]:
        return self._labels

    def vertices(self) -> range:
        return range(len(self._adj))

    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def degree(self, v: int) -> int:
        return degree(self, v)

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def label(self, v: int) -> str:
        name = self._labels[v]
        return str(v) if name is None else name

    def is_cycle(self) -> bool:
        return self.n >= 3 and all(len(a) == 2 for a in self._adj) and is_connected(self)

    def induced(self, keep: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``keep``; returns it with the new-id -> old-id list."""
        old = sorted(set(keep))
        index = {v: i for i, v in enumerate(old)}
        edges = [(index[u], index[v]) for u, v in self._edges if u in index and v in index]
        return Graph(len(old), edges, [self._labels[v] for v in old]), old

    def with_edges(self, extra: Iterable[Sequence[int]]) -> "Graph":
        return Graph(self.n, list(self._edges) + [tuple(e) for e in extra], self._labels)

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(self.vertices())
        h.add_edges_from(self._edges)
        return h

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def degree(g: Graph, v: int) -> int:
    if not 0 <= v < g.n:
        raise GraphError("vertex-out-of-range", str(v))
    return len(g.adjacency[v])


# ---------------------------------------------------------------------------
# Rotation systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RotationSystem:
    """Clockwise cyclic neighbor order around every vertex.

    Orders are stored rotated so the smallest neighbor comes first; two
    rotation systems compare equal iff they agree cyclically everywhere.
    """

    order: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", tuple(_min_rotation(tuple(o)) for o in self.order))

    @classmethod
    def from_mapping(cls, order: Mapping[int, Sequence[int]] | Sequence[Sequence[int]], n: int | None = None) -> "RotationSystem":
        if isinstance(order, Mapping):
            size = n if n is not None else (max(order) + 1 if order else 0)
            return cls(tuple(tuple(order.get(v, ())) for v in range(size)))
        return cls(tuple(tuple(o) for o in order))

    def __getitem__(self, v: int) -> tuple[int, ...]:
        return self.order[v]

    def __len__(self) -> int:
        return len(self.order)

    def reversed(self) -> "RotationSystem":
        return RotationSystem(tuple(tuple(reversed(o)) for o in self.order))

    def successor(self, v: int, u: int) -> int:
        """Neighbor following ``u`` clockwise around ``v``."""
        o = self.order[v]
        return o[(o.index(u) + 1) % len(o)]

    def predecessor(self, v: int, u: int) -> int:
        o = self.order[v]
        return o[(o.index(u) - 1) % len(o)]

    def check(self, g: Graph) -> None:
        if len(self.order) != g.n:
            raise GraphError("bad-rotation", "rotation size differs from vertex count")
        for v in g.vertices():
            if sorted(self.order[v]) != list(g.neighbors(v)):
                raise GraphError("bad-rotation", f"vertex {v}: {self.order[v]} is not a permutation of its neighbors")

    def faces(self) -> list[list[int]]:
        return trace_faces(self)


def _min_rotation(seq: tuple[int, ...]) -> tuple[int, ...]:
    if not seq:
        return seq
    k = seq.index(min(seq))
    return seq[k:] + seq[:k]


def trace_faces(rotation: RotationSystem) -> list[list[int]]:
    """Faces of an embedded graph as vertex cycles.

    The dart ``(u, v)`` is followed by ``(v, w)`` with ``w`` the
    counterclockwise predecessor of ``u`` around ``v``; every dart lies on
    exactly one face.
    """
    seen: set[tuple[int, int]] = set()
    faces = []
    for u in range(len(rotation)):
        for v in rotation[u]:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append(a)
                a, b = b, rotation.predecessor(b, a)
            faces.append(face)
    return faces


# ---------------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------------


def is_connected(g: Graph, removed: frozenset[int] | set[int] = frozenset()) -> bool:
    alive = [v for v in g.vertices() if v not in removed]
    if not alive:
        return True
    seen = {alive[0]}
    stack = [alive[0]]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w not in seen and w not in removed:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(alive)


def articulation_points(g: Graph, removed: frozenset[int] | set[int] = frozenset()) -> set[int]:
    """Cut vertices of ``g`` minus ``removed`` (iterative lowpoint DFS)."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    cuts: set[int] = set()
    counter = 0
    for root in g.vertices():
        if root in removed or root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w in removed:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if p == root:
                    root_children += 1
                elif low[v] >= disc[p]:
                    cuts.add(p)
        if root_children > 1:
            cuts.add(root)
    return cuts


def is_biconnected(g: Graph, removed: frozenset[int] | set[int] = frozenset()) -> bool:
    alive = g.n - len([v for v in removed if 0 <= v < g.n])
    if alive < 3:
        return False
    return is_connected(g, removed) and not articulation_points(g, removed)


def is_triconnected(g: Graph) -> bool:
    """3-connectivity by deleting each vertex and testing biconnectivity, O(n*m)."""
    if g.n < 4 or not is_biconnected(g):
        return False
    return all(is_biconnected(g, {v}) for v in g.vertices())


# ---------------------------------------------------------------------------
# Planarity
# ---------------------------------------------------------------------------


class NotPlanarError(GraphError):
    def __init__(self, message: str = "") -> None:
        super().__init__("not-planar", message)


class NotTriconnectedError(GraphError):
    def __init__(self, message: str = "") -> None:
        super().__init__("not-triconnected", message)


def is_planar(g: Graph) -> bool:
    """Left-right planarity test (networkx), linear time."""
    return nx.check_planarity(g.to_networkx())[0]


def planar_embedding(g: Graph) -> RotationSystem:
    """One flip of the unique planar rotation system of a triconnected planar graph."""
    if not is_triconnected(g):
        raise NotTriconnectedError()
    planar, emb = nx.check_planarity(g.to_networkx())
    if not planar:
        raise NotPlanarError()
    return RotationSystem(tuple(tuple(emb.neighbors_cw_order(v)) for v in g.vertices()))


# ---------------------------------------------------------------------------
# Smoothing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmoothingMap:
    """Bookkeeping for :func:`smooth_degree2`.

    ``original_ids[i]`` is the input id of smoothed-graph vertex ``i``;
    ``paths[(a, b)]`` is the input-id path that smoothed edge ``(a, b)``
    (``a < b``, smoothed ids) stands for, endpoints included and oriented
    from ``a`` to ``b``.
    """

    original_ids: tuple[int, ...]
    paths: Mapping[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    def path(self, a: int, b: int) -> tuple[int, ...]:
        """Original path from smoothed vertex ``a`` to ``b``."""
        if a < b:
            return self.paths[(a, b)]
        return tuple(reversed(self.paths[(b, a)]))

    def interior(self, a: int, b: int) -> tuple[int, ...]:
        return self.path(a, b)[1:-1]

    def expand_cycle(self, cycle: Sequence[int]) -> list[int]:
        """Translate a smoothed-graph cycle back into original ids."""
        out: list[int] = []
        for i, a in enumerate(cycle):
            b = cycle[(i + 1) % len(cycle)]
            out.extend(self.path(a, b)[:-1])
        return out

    def unsmooth(self, n: int) -> Graph:
        edges = set()
        for p in self.paths.values():
            for x, y in zip(p, p[1:]):
                edges.add(edge_key(x, y))
        return Graph(n, sorted(edges))


def smooth_degree2(g: Graph, keep: Iterable[int] = ()) -> tuple[Graph, SmoothingMap]:
    """Replace every degree-2 vertex outside ``keep`` by an edge between its neighbors.

    Raises ``GraphError`` with code ``degenerate-cycle`` when ``g`` is a
    cycle that would collapse, and ``multi-edge`` / ``self-loop`` when the
    result would not be simple.
    """
    keep = set(keep)
    for v in keep:
        if not 0 <= v < g.n:
            raise GraphError("vertex-out-of-range", str(v))
    removed = {v for v in g.vertices() if len(g.neighbors(v)) == 2 and v not in keep}
    survivors = [v for v in g.vertices() if v not in removed]
    if g.is_cycle() and len(survivors) < 3:
        raise GraphError("degenerate-cycle", f"cycle keeps only {len(survivors)} vertices")
    index = {v: i for i, v in enumerate(survivors)}
    paths: dict[tuple[int, int], tuple[int, ...]] = {}
    covered: set[int] = set()
    for s in survivors:
        for first in g.neighbors(s):
            path = [s, first]
            prev, cur = s, first
            while cur in removed:
                a, b = g.neighbors(cur)
                prev, cur = cur, (b if a == prev else a)
                path.append(cur)
            covered.update(path[1:-1])
            a, b = index[s], index[cur]
            if a == b:
                raise GraphError("self-loop", f"smoothing closes a loop at {s}")
            key = edge_key(a, b)
            oriented = tuple(path) if a < b else tuple(reversed(path))
            if key in paths:
                if paths[key] != oriented:
                    raise GraphError("multi-edge", f"two paths join {s} and {cur}")
                continue
            paths[key] = oriented
    if covered != removed:
        raise GraphError("degenerate-cycle", "a component of smoothable vertices has no surviving vertex")
    labels = [g.labels[v] for v in survivors]
    return Graph(len(survivors), sorted(paths), labels), SmoothingMap(tuple(survivors), paths)
