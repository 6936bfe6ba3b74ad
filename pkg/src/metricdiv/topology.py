"""Closed admissible sets in model form and their topological invariants."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import EmptySet, InputError, MalformedSet, NotProper
from .graph import MetricGraph, Model, PointRef, common_refinement, vertex_distances


class AdmissibleSet:
    """The closed set ``I ∪ ⋃_{e∈J} ē`` inside ``model``.

    ``I`` is a set of model vertices and ``J`` a set of model-edge ids whose
    endpoints all lie in ``I``. Equality is equality of point sets, so two
    sets carried in different models of the same graph can compare equal.
    """

    __slots__ = ("model", "I", "J", "_canon")

    def __init__(self, model: Model, I: Iterable[PointRef] = (), J: Iterable[str] = ()):
        self.model = model
        self.I = frozenset(I)
        self.J = frozenset(J)
        self._canon = None
        for v in self.I:
            if v not in model.incidence:
                raise MalformedSet(f"{v} is not a vertex of the model")
        for eid in self.J:
            me = model.edge_by_id.get(eid)
            if me is None:
                raise MalformedSet(f"{eid} is not an edge of the model")
            if me.tail not in self.I or me.head not in self.I:
                raise MalformedSet(f"edge {eid} in J but an endpoint is missing from I")

    @classmethod
    def empty(cls, model: Model) -> "AdmissibleSet":
        return cls(model)

    @classmethod
    def full(cls, model: Model) -> "AdmissibleSet":
        return cls(model, model.vertices, (me.id for me in model.edges))

    @property
    def graph(self) -> MetricGraph:
        return self.model.graph

    @property
    def is_empty(self) -> bool:
        return not self.I

    @property
    def is_full(self) -> bool:
        return len(self.I) == len(self.model.vertices) and len(self.J) == len(self.model.edges)

    def contains(self, p: PointRef) -> bool:
        kind, cell = self.model.locate(p)
        if kind == "vertex":
            return cell in self.I
        return cell.id in self.J

    __contains__ = contains

    def lift(self, finer: Model) -> "AdmissibleSet":
        """The same point set described in a refinement of this set's model."""
        if finer == self.model:
            return self
        if finer.graph is not self.graph:
            raise InputError("cannot lift a set to another graph")
        old = self.model
        I = []
        for v in finer.vertices:
            kind, cell = old.locate(v)
            if (kind == "vertex" and cell in self.I) or (kind == "edge" and cell.id in self.J):
                I.append(v)
        J = []
        for me in finer.edges:
            sub = old.sub_edges(me.base)
            mid = (me.lo + me.hi) / 2
            owner = next(o for o in sub if o.lo <= mid <= o.hi)
            if owner.id in self.J:
                J.append(me.id)
        return AdmissibleSet(finer, I, J)

    def canonical(self) -> "AdmissibleSet":
        """The same set in the coarsest model able to carry it."""
        if self._canon is None:
            keep = []
            for p in self.model.points:
                (e1, _), (e2, _) = self.model.incidence[p]
                a, b = e1.id in self.J, e2.id in self.J
                if a != b or (not a and p in self.I):
                    keep.append(p)
            coarse = Model(self.graph, keep)
            if coarse == self.model:
                self._canon = self
            else:
                I = [v for v in coarse.vertices if v in self.I]
                J = []
                for me in coarse.edges:
                    first = next(o for o in self.model.sub_edges(me.base) if o.lo == me.lo)
                    if first.id in self.J:
                        J.append(me.id)
                self._canon = AdmissibleSet(coarse, I, J)
        return self._canon

    def _pair(self, other: "AdmissibleSet"):
        model = common_refinement(self.model, other.model)
        return model, self.lift(model), other.lift(model)

    def union(self, other: "AdmissibleSet") -> "AdmissibleSet":
        model, a, b = self._pair(other)
        return AdmissibleSet(model, a.I | b.I, a.J | b.J)

    def intersection(self, other: "AdmissibleSet") -> "AdmissibleSet":
        model, a, b = self._pair(other)
        return AdmissibleSet(model, a.I & b.I, a.J & b.J)

    __or__ = union
    __and__ = intersection

    def issubset(self, other: "AdmissibleSet") -> bool:
        _, a, b = self._pair(other)
        return a.I <= b.I and a.J <= b.J

    __le__ = issubset

    def __eq__(self, other):
        if not isinstance(other, AdmissibleSet):
            return NotImplemented
        if other.graph is not self.graph:
            return False
        a, b = self.canonical(), other.canonical()
        return a.model == b.model and a.I == b.I and a.J == b.J

    def __hash__(self):
        c = self.canonical()
        return hash((c.model, c.I, c.J))

    def __repr__(self):
        c = self.canonical()
        verts = ",".join(v.label for v in sorted(c.I))
        return f"AdmissibleSet(I={{{verts}}}, J={{{','.join(sorted(c.J))}}})"

    def branch_count(self) -> int:
        return sum(1 for v in self.I if v in self.model.branch)


@dataclass(frozen=True)
class TopologyProfile:
    chi_S: int
    chi_complement: int
    p_a: int
    psi: int
    components: int
    betti1: int


def _components(model: Model, I, J) -> int:
    parent = {v: v for v in I}

    def find(x):
        while parent[x] is not x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = len(parent)
    for eid in J:
        me = model.edge_by_id[eid]
        a, b = find(me.tail), find(me.head)
        if a is not b:
            parent[a] = b
            count -= 1
    return count


def chi_complement(S: AdmissibleSet) -> int:
    """Euler characteristic of the open complement of ``S``.

    The complement retracts onto the subgraph spanned by vertices outside
    ``I``; each edge outside ``J`` with both ends in ``I`` survives as a
    floating open segment contributing 1.
    """
    model = S.model
    outside = len(model.vertices) - len(S.I)
    for me in model.edges:
        if me.id in S.J:
            continue
        t, h = me.tail in S.I, me.head in S.I
        if not t and not h:
            outside -= 1
        elif t and h:
            outside += 1
    return outside


def psi(S: AdmissibleSet) -> int:
    """Genus contribution ``p_a(Γ) - p_a(Γ∖S)``."""
    chi_gamma = len(S.model.vertices) - len(S.model.edges)
    return chi_complement(S) - chi_gamma


def topology_profile(S: AdmissibleSet) -> TopologyProfile:
    chi_s = len(S.I) - len(S.J)
    comps = _components(S.model, S.I, S.J)
    chi_c = chi_complement(S)
    return TopologyProfile(
        chi_S=chi_s,
        chi_complement=chi_c,
        p_a=1 - chi_s,
        psi=chi_c - (len(S.model.vertices) - len(S.model.edges)),
        components=comps,
        betti1=comps - chi_s,
    )


def _chain_mask(S: AdmissibleSet, chain) -> list[bool]:
    return [
        (cell in S.I) if isinstance(cell, PointRef) else (cell[0].id in S.J)
        for cell in chain
    ]


def convex_hull(graph: MetricGraph | None, S: AdmissibleSet) -> AdmissibleSet:
    """Add every closed edge segment whose endpoints lie in ``S``.

    Works chain by chain: along each edge of the metric graph, everything
    between the first and last cell of ``S`` is filled in. A loop whose
    base vertex is in ``S`` is therefore filled entirely.
    """
    I, J = set(S.I), set(S.J)
    for chain in S.model.chains:
        mask = _chain_mask(S, chain)
        hits = [k for k, m in enumerate(mask) if m]
        if not hits:
            continue
        for k in range(hits[0], hits[-1] + 1):
            cell = chain[k]
            if isinstance(cell, PointRef):
                I.add(cell)
            else:
                J.add(cell[0].id)
    if len(I) == len(S.I) and len(J) == len(S.J):
        return S
    return AdmissibleSet(S.model, I, J)


def is_convex(S: AdmissibleSet) -> bool:
    return convex_hull(None, S) is S


def conv_model(model: Model, X: Iterable[PointRef]) -> AdmissibleSet:
    """Model convex hull: ``X`` plus every model edge with both ends in ``X``."""
    X = frozenset(X)
    J = [me.id for me in model.edges if me.tail in X and me.head in X]
    return AdmissibleSet(model, X, J)


def diff_count(graph: MetricGraph | None, S: AdmissibleSet) -> int:
    """Number of complement segments inside an edge with both endpoints in ``S``."""
    return psi(S) - psi(convex_hull(graph, S))


def diff_count_direct(S: AdmissibleSet) -> int:
    """Same as :func:`diff_count`, counted run by run along each chain."""
    total = 0
    for chain in S.model.chains:
        mask = _chain_mask(S, chain)
        hits = [k for k, m in enumerate(mask) if m]
        if len(hits) < 2:
            continue
        inside_gap = False
        for k in range(hits[0], hits[-1] + 1):
            if not mask[k] and not inside_gap:
                total += 1
                inside_gap = True
            elif mask[k]:
                inside_gap = False
    return total


def enclosed_gaps(S: AdmissibleSet) -> list[Fraction]:
    """Lengths of the complement segments counted by :func:`diff_count_direct`."""
    gaps = []
    for chain in S.model.chains:
        mask = _chain_mask(S, chain)
        hits = [k for k, m in enumerate(mask) if m]
        if len(hits) < 2:
            continue
        run = None
        for k in range(hits[0], hits[-1] + 1):
            if mask[k]:
                if run is not None:
                    gaps.append(run)
                run = None
            elif not isinstance(chain[k], PointRef):
                run = (run or 0) + chain[k][0].length
    return gaps


def boundary_valence(S: AdmissibleSet) -> dict[PointRef, int]:
    out = {}
    for v in sorted(S.I):
        n = sum(1 for me, _ in S.model.incidence[v] if me.id not in S.J)
        if n:
            out[v] = n
    return out


def leaving_ends(S: AdmissibleSet, v: PointRef):
    """Model edge-ends at ``v`` that leave ``S``, ordered by (base edge, offset direction)."""
    ends = [(me, slot) for me, slot in S.model.incidence[v] if me.id not in S.J]
    # slot 0 walks towards increasing offset
    return sorted(ends, key=lambda es: (es[0].base, es[1], es[0].index))


def cut_size(S: AdmissibleSet) -> int:
    if S.is_empty:
        raise EmptySet("cut of the empty set")
    if S.is_full:
        raise NotProper("cut of the whole graph")
    return sum(boundary_valence(S).values())


def spset(S: AdmissibleSet) -> list[PointRef]:
    """Boundary points of ``S`` along each edge; ``S`` is the convex hull of these
    whenever ``S`` is convex."""
    pts = set()
    for chain in S.model.chains:
        mask = _chain_mask(S, chain)
        k = 0
        while k < len(chain):
            if mask[k]:
                start = k
                while k + 1 < len(chain) and mask[k + 1]:
                    k += 1
                pts.add(chain[start])
                pts.add(chain[k])
            k += 1
    for v in S.I:
        if not any(me.id in S.J for me, _ in S.model.incidence[v]):
            pts.add(v)
    return sorted(pts)


def fatten(S: AdmissibleSet, eps) -> AdmissibleSet:
    """All points within distance ``eps`` of ``S``, in a suitably refined model."""
    eps = Fraction(eps)
    if S.is_empty:
        raise EmptySet("fattening of the empty set")
    if eps <= 0:
        raise InputError("eps must be positive")
    dist = vertex_distances(S.model, S.I)
    cuts = []
    for me in S.model.edges:
        if me.id in S.J:
            continue
        da, db = dist[me.tail], dist[me.head]
        ra, rb = eps - da, eps - db
        if ra + rb >= me.length:
            continue
        if ra > 0:
            cuts.append(me.point_at(S.graph, 0, ra))
        if rb > 0:
            cuts.append(me.point_at(S.graph, 1, rb))
    model = S.model.refine(cuts)
    T = S.lift(model)
    dist = vertex_distances(model, T.I)
    I = [v for v in model.vertices if dist[v] <= eps]
    J = [
        me.id
        for me in model.edges
        if me.id in T.J or (dist[me.tail] + dist[me.head] + me.length) / 2 <= eps
    ]
    return AdmissibleSet(model, I, J)
