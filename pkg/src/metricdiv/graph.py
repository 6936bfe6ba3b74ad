"""Metric graphs with exact rational edge lengths, models and distances."""
from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, total_ordering
from typing import Iterable, Mapping

from .errors import (
    DegenerateGraph,
    DisconnectedGraph,
    DuplicateID,
    EmptySet,
    EmptyTargets,
    InputError,
    NonpositiveLength,
    OffsetOutOfRange,
    PointOffGraph,
    UnknownID,
)

Rational = Fraction


def as_rational(value) -> Fraction:
    """Parse ``"p/q"`` strings, ints and Fractions. Floats are refused."""
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not an exact rational: {value!r}")


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@total_ordering
@dataclass(frozen=True, eq=True)
class PointRef:
    """A point of the graph: a vertex, or an interior point of an edge.

    ``offset`` is measured from the edge's first end and is strictly
    between 0 and the edge length; use :func:`normalize_point` to build one
    from a raw offset.
    """

    vertex: str | None = None
    edge: str | None = None
    offset: Fraction | None = None

    @classmethod
    def at(cls, vertex: str) -> "PointRef":
        return cls(vertex=vertex)

    @classmethod
    def on(cls, edge: str, offset) -> "PointRef":
        return cls(edge=edge, offset=as_rational(offset))

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None

    @property
    def sort_key(self):
        if self.vertex is not None:
            return (0, self.vertex, Fraction(0))
        return (1, self.edge, self.offset)

    def __lt__(self, other):
        if not isinstance(other, PointRef):
            return NotImplemented
        return self.sort_key < other.sort_key

    @property
    def label(self) -> str:
        if self.vertex is not None:
            return self.vertex
        return f"{self.edge}@{format_rational(self.offset)}"

    def __repr__(self):
        return f"PointRef({self.label})"


@dataclass(frozen=True)
class Edge:
    id: str
    ends: tuple[str, str]
    length: Fraction

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True, eq=False)
class MetricGraph:
    """A connected rational-length multigraph standing for a metric graph.

    Input vertices of valency 2 are kept (they act as a chosen model), but
    :attr:`branch_points` only lists the vertices of valency different
    from 2.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    @cached_property
    def edge_by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def valency(self) -> dict[str, int]:
        val = dict.fromkeys(self.vertices, 0)
        for e in self.edges:
            val[e.ends[0]] += 1
            val[e.ends[1]] += 1
        return val

    @cached_property
    def branch_points(self) -> tuple[str, ...]:
        return tuple(sorted(v for v in self.vertices if self.valency[v] != 2))

    @property
    def genus(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    @cached_property
    def base_point(self) -> str:
        """Smallest-ID branch point."""
        return self.branch_points[0]

    @cached_property
    def trivial_model(self) -> "Model":
        return Model(self, ())

    def has_integer_lengths(self) -> bool:
        return all(e.length.denominator == 1 for e in self.edges)

    def __repr__(self):
        return f"MetricGraph(|V|={len(self.vertices)}, |E|={len(self.edges)}, g={self.genus})"


def _edge_records(description) -> tuple[list, list]:
    if isinstance(description, Mapping):
        vertices = list(description.get("vertices", []))
        raw_edges = list(description.get("edges", []))
    else:
        vertices, raw_edges = description
        vertices, raw_edges = list(vertices), list(raw_edges)
    edges = []
    for rec in raw_edges:
        if isinstance(rec, Mapping):
            try:
                eid, (a, b), length = rec["id"], rec["ends"], rec["length"]
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"malformed edge record {rec!r}") from exc
        else:
            eid, a, b, length = rec
        edges.append((str(eid), str(a), str(b), as_rational(length)))
    return [str(v) for v in vertices], edges


def build_graph(description) -> MetricGraph:
    """Validate a graph description and build a :class:`MetricGraph`.

    ``description`` is either the graph JSON mapping
    (``{"vertices": [...], "edges": [{"id", "ends", "length"}]}``) or a pair
    ``(vertices, [(id, end0, end1, length), ...])``.
    """
    vertices, records = _edge_records(description)
    if len(set(vertices)) != len(vertices):
        raise DuplicateID("duplicate vertex id")
    ids = [r[0] for r in records]
    if len(set(ids)) != len(ids):
        raise DuplicateID("duplicate edge id")
    clash = set(ids) & set(vertices)
    if clash:
        raise DuplicateID(f"ids used for both a vertex and an edge: {sorted(clash)}")
    for name in ids + vertices:
        if "@" in name or "#" in name:
            raise InputError(f"ids may not contain '@' or '#': {name!r}")
    known = set(vertices)
    edges = []
    for eid, a, b, length in records:
        if a not in known or b not in known:
            raise UnknownID(f"edge {eid} references an unknown vertex")
        if length <= 0:
            raise NonpositiveLength(f"edge {eid} has length {length}")
        edges.append(Edge(eid, (a, b), length))
    if not vertices:
        raise DegenerateGraph("graph has no vertices")
    graph = MetricGraph(tuple(vertices), tuple(edges))

    adj = defaultdict(set)
    for e in edges:
        adj[e.ends[0]].add(e.ends[1])
        adj[e.ends[1]].add(e.ends[0])
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(vertices):
        raise DisconnectedGraph("graph is not connected")
    if not edges:
        raise DegenerateGraph("a single point is not allowed")
    if not graph.branch_points:
        raise DegenerateGraph("the graph is a circle")
    return graph


def normalize_point(graph: MetricGraph, edge: str, offset) -> PointRef:
    """Turn ``(edge, offset)`` with ``0 <= offset <= length`` into a PointRef."""
    try:
        e = graph.edge_by_id[edge]
    except KeyError:
        raise PointOffGraph(f"unknown edge {edge!r}") from None
    offset = as_rational(offset)
    if offset < 0 or offset > e.length:
        raise OffsetOutOfRange(f"offset {offset} outside [0, {e.length}] on {edge}")
    if offset == 0:
        return PointRef.at(e.ends[0])
    if offset == e.length:
        return PointRef.at(e.ends[1])
    return PointRef(edge=edge, offset=offset)


def renormalize(graph: MetricGraph, p: PointRef) -> PointRef:
    """Check a PointRef against ``graph``; boundary offsets become vertices."""
    if p.is_vertex:
        if p.vertex not in graph.valency:
            raise PointOffGraph(f"unknown vertex {p.vertex!r}")
        return p
    return normalize_point(graph, p.edge, p.offset)


@dataclass(frozen=True, eq=False)
class ModelEdge:
    """Sub-edge ``base#index`` covering offsets ``[lo, hi]`` of a base edge."""

    id: str
    base: str
    index: int
    tail: PointRef
    head: PointRef
    lo: Fraction
    hi: Fraction

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def end(self, slot: int) -> PointRef:
        return self.tail if slot == 0 else self.head

    def point_at(self, graph: MetricGraph, slot: int, t: Fraction) -> PointRef:
        """Point at distance ``t`` from end ``slot`` along this sub-edge."""
        off = self.lo + t if slot == 0 else self.hi - t
        return normalize_point(graph, self.base, off)

    def __repr__(self):
        return f"ModelEdge({self.id}: {self.tail.label}-{self.head.label})"


class Model:
    """A model of ``graph`` whose vertices are the graph's vertices plus
    a finite set of interior points.

    Immutable; two models are equal when they have the same graph object and
    the same interior points.
    """

    def __init__(self, graph: MetricGraph, points: Iterable[PointRef] = ()):
        self.graph = graph
        interior = set()
        for p in points:
            p = renormalize(graph, p)
            if not p.is_vertex:
                interior.add(p)
        self.points: tuple[PointRef, ...] = tuple(sorted(interior))
        self._key = (id(graph), self.points)

        by_edge = defaultdict(list)
        for p in self.points:
            by_edge[p.edge].append(p)
        verts = [PointRef.at(v) for v in graph.vertices]
        edges = []
        for e in graph.edges:
            cuts = [PointRef.at(e.ends[0])] + by_edge.get(e.id, []) + [PointRef.at(e.ends[1])]
            offs = [Fraction(0)] + [p.offset for p in by_edge.get(e.id, [])] + [e.length]
            for k in range(len(cuts) - 1):
                edges.append(ModelEdge(f"{e.id}#{k}", e.id, k, cuts[k], cuts[k + 1], offs[k], offs[k + 1]))
        self.vertices: tuple[PointRef, ...] = tuple(sorted(verts + list(self.points)))
        self.edges: tuple[ModelEdge, ...] = tuple(edges)
        self.edge_by_id = {me.id: me for me in edges}
        inc = {v: [] for v in self.vertices}
        for me in edges:
            inc[me.tail].append((me, 0))
            inc[me.head].append((me, 1))
        self.incidence: dict[PointRef, list[tuple[ModelEdge, int]]] = inc
        self.branch = frozenset(PointRef.at(v) for v in graph.branch_points)
        self._sub_edges = {e.id: [me for me in edges if me.base == e.id] for e in graph.edges}

    def __eq__(self, other):
        return isinstance(other, Model) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Model(points={[p.label for p in self.points]})"

    @property
    def genus(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def vertex_set(self) -> frozenset[PointRef]:
        return frozenset(self.vertices)

    def sub_edges(self, base: str) -> list[ModelEdge]:
        return self._sub_edges[base]

    def locate(self, p: PointRef):
        """Return ``("vertex", p)`` or ``("edge", model_edge)`` for the cell holding ``p``."""
        p = renormalize(self.graph, p)
        if p in self.incidence:
            return ("vertex", p)
        for me in self._sub_edges[p.edge]:
            if me.lo < p.offset < me.hi:
                return ("edge", me)
        raise PointOffGraph(f"{p} not found in model")  # pragma: no cover

    def refine(self, points: Iterable[PointRef]) -> "Model":
        extra = [renormalize(self.graph, p) for p in points]
        extra = [p for p in extra if not p.is_vertex and p not in self.incidence]
        if not extra:
            return self
        return Model(self.graph, self.points + tuple(extra))

    def is_branch(self, v: PointRef) -> bool:
        return v in self.branch

    def step(self, me: ModelEdge, slot: int) -> tuple[PointRef, list[tuple[ModelEdge, int]]]:
        """Cross ``me`` from end ``slot``; return the far vertex and its other edge-ends."""
        other = 1 - slot
        far = me.end(other)
        rest = [(e2, s2) for (e2, s2) in self.incidence[far] if not (e2 is me and s2 == other)]
        return far, rest

    @cached_property
    def chains(self) -> tuple[tuple, ...]:
        """Edges of the underlying metric graph as cell sequences.

        Each chain is ``(v0, (e1, s1), v1, ..., (ek, sk), vk)`` where ``v0`` and
        ``vk`` are branch points, the middle vertices are not, and ``si`` is
        the end of ``ei`` we enter from.
        """
        seen = set()
        out = []
        for b in sorted(self.branch):
            for me, slot in self.incidence[b]:
                if (me.id, slot) in seen:
                    continue
                cells = [b]
                cur, s = me, slot
                while True:
                    seen.add((cur.id, s))
                    far, rest = self.step(cur, s)
                    seen.add((cur.id, 1 - s))
                    cells.append((cur, s))
                    cells.append(far)
                    if far in self.branch:
                        break
                    (cur, s), = rest
                out.append(tuple(cells))
        return tuple(out)


def refine_model(graph: MetricGraph, points: Iterable[PointRef]) -> Model:
    """Model with vertex set ``V(graph) | points``."""
    return graph.trivial_model.refine(points)


def common_refinement(*models: Model) -> Model:
    graph = models[0].graph
    if any(m.graph is not graph for m in models):
        raise InputError("models belong to different graphs")
    pts = set()
    for m in models:
        pts.update(m.points)
    return Model(graph, pts) if len(models) > 1 else models[0]


def vertex_distances(model: Model, sources: Iterable[PointRef]) -> dict[PointRef, Fraction]:
    """Multi-source Dijkstra over model vertices, in exact arithmetic."""
    dist: dict[PointRef, Fraction] = {}
    heap = [(Fraction(0), s.sort_key, s) for s in sources]
    heapq.heapify(heap)
    while heap:
        d, _, v = heapq.heappop(heap)
        if v in dist:
            continue
        dist[v] = d
        for me, slot in model.incidence[v]:
            w = me.end(1 - slot)
            if w not in dist:
                heapq.heappush(heap, (d + me.length, w.sort_key, w))
    return dist


def _as_vertex(model: Model, t) -> PointRef:
    p = t if isinstance(t, PointRef) else PointRef.at(str(t))
    p = renormalize(model.graph, p)
    if p not in model.incidence:
        raise PointOffGraph(f"{p} is not a vertex of the model")
    return p


def distance_from_set(model: Model, S, targets) -> Fraction:
    """Shortest distance from the closed set ``S`` to the nearest target vertex."""
    targets = list(targets)
    if not targets:
        raise EmptyTargets("no target vertices")
    if not S.I:
        raise EmptySet("distance from the empty set")
    if S.model != model:
        model = common_refinement(model, S.model)
        S = S.lift(model)
    goal = {_as_vertex(model, t) for t in targets}
    if goal & S.I:
        raise InputError("targets must be disjoint from the set")
    dist = vertex_distances(model, S.I)
    return min(dist[t] for t in goal)
