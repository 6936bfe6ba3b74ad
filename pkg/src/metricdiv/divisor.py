"""Divisors, chip-firing moves and firing certificates."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    EmptySet,
    EpsTooLarge,
    InputError,
    InvariantViolation,
    NonIntegerLengths,
    NotConvex,
    NotProper,
)
from .graph import MetricGraph, Model, ModelEdge, PointRef, common_refinement, renormalize, vertex_distances
from .topology import AdmissibleSet, enclosed_gaps, is_convex, leaving_ends


class Divisor(Mapping):
    """Finite integer combination of points of a graph.

    Behaves as a read-only mapping ``PointRef -> int`` that only stores
    nonzero coefficients; missing points read as 0.
    """

    __slots__ = ("graph", "_entries", "_hash")

    def __init__(self, graph: MetricGraph, entries: Mapping[PointRef, int] | Iterable = ()):
        self.graph = graph
        acc: Counter = Counter()
        items = entries.items() if isinstance(entries, Mapping) else entries
        for p, c in items:
            if isinstance(c, bool) or not isinstance(c, int):
                raise InputError(f"coefficient must be an integer, got {c!r}")
            acc[renormalize(graph, p)] += c
        self._entries = {p: acc[p] for p in sorted(acc) if acc[p] != 0}
        self._hash = None

    @classmethod
    def of_points(cls, graph: MetricGraph, points: Iterable[PointRef]) -> "Divisor":
        return cls(graph, ((p, 1) for p in points))

    @classmethod
    def zero(cls, graph: MetricGraph) -> "Divisor":
        return cls(graph)

    def __getitem__(self, p):
        return self._entries.get(p, 0)

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def __contains__(self, p):
        return p in self._entries

    def __eq__(self, other):
        if isinstance(other, Divisor):
            return self.graph is other.graph and self._entries == other._entries
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._entries.items()))
        return self._hash

    def __repr__(self):
        terms = " + ".join(f"{c}({p.label})" for p, c in self._entries.items())
        return f"Divisor({terms or '0'})"

    @property
    def degree(self) -> int:
        return sum(self._entries.values())

    @property
    def support(self) -> tuple[PointRef, ...]:
        return tuple(self._entries)

    @property
    def is_effective(self) -> bool:
        return all(c > 0 for c in self._entries.values())

    def __add__(self, other: "Divisor") -> "Divisor":
        acc = Counter(self._entries)
        acc.update(other._entries)
        return Divisor(self.graph, acc)

    def __sub__(self, other: "Divisor") -> "Divisor":
        acc = Counter(self._entries)
        acc.subtract(other._entries)
        return Divisor(self.graph, acc)

    def __neg__(self) -> "Divisor":
        return Divisor(self.graph, {p: -c for p, c in self._entries.items()})

    def __le__(self, other: "Divisor") -> bool:
        return (other - self).is_effective

    def plus_point(self, p: PointRef, count: int = 1) -> "Divisor":
        return self + Divisor(self.graph, [(p, count)])


def degree_on(D: Divisor, S: AdmissibleSet) -> int:
    """Sum of the coefficients of ``D`` at points of the closed set ``S``."""
    if S.is_empty:
        return 0
    return sum(c for p, c in D.items() if S.contains(p))


@dataclass(frozen=True)
class FiringStep:
    """Fire ``S`` to distance ``eps``; ``sign=-1`` undoes such a fire."""

    S: AdmissibleSet
    eps: Fraction
    sign: int = 1


@dataclass(frozen=True)
class FiringCertificate:
    steps: tuple[FiringStep, ...] = ()

    def __add__(self, other: "FiringCertificate") -> "FiringCertificate":
        return FiringCertificate(self.steps + other.steps)

    def inverse(self) -> "FiringCertificate":
        return FiringCertificate(
            tuple(FiringStep(s.S, s.eps, -s.sign) for s in reversed(self.steps))
        )

    def __len__(self):
        return len(self.steps)


def walk(model: Model, me: ModelEdge, slot: int, t: Fraction) -> PointRef:
    """Point reached by travelling ``t`` from end ``slot`` of ``me``.

    The walk continues through non-branch vertices and must not pass a
    branch point before covering the full distance.
    """
    remaining = t
    while True:
        if remaining < me.length:
            return me.point_at(model.graph, slot, remaining)
        far, rest = model.step(me, slot)
        if remaining == me.length:
            return far
        if far in model.branch or len(rest) != 1:
            raise InvariantViolation(f"walk of length {t} passed branch point {far.label}")
        remaining -= me.length
        (me, slot), = rest


def firing_distance(S: AdmissibleSet) -> Fraction:
    """``dist(S, V_Γ ∖ S)`` for a nonempty proper closed set."""
    if S.is_empty:
        raise EmptySet("firing the empty set")
    targets = S.model.branch - S.I
    if not targets:
        raise NotProper("set contains every branch point")
    dist = vertex_distances(S.model, S.I)
    return min(dist[t] for t in targets)


def firing_moves(S: AdmissibleSet, eps: Fraction) -> list[tuple[PointRef, PointRef]]:
    """(boundary point, landing point) for every edge-end leaving ``S``."""
    moves = []
    for v in sorted(S.I):
        for me, slot in leaving_ends(S, v):
            moves.append((v, walk(S.model, me, slot, eps)))
    return moves


def check_firing(S: AdmissibleSet, eps) -> Fraction:
    eps = Fraction(eps)
    if S.is_empty:
        raise EmptySet("cannot fire the empty set")
    if S.is_full:
        raise NotProper("cannot fire the whole graph")
    if eps <= 0:
        raise InputError("eps must be positive")
    if not is_convex(S):
        short = min(enclosed_gaps(S), default=None)
        if short is not None and 2 * eps > short:
            raise NotConvex(f"fronts collide: enclosed gap of length {short} is shorter than 2*eps")
    limit = firing_distance(S)
    if eps > limit:
        raise EpsTooLarge(f"eps={eps} exceeds dist(S, V∖S)={limit}")
    return eps


def fire_set(model: Model | None, D: Divisor, S: AdmissibleSet, eps, sign: int = 1) -> Divisor:
    """``D + sign * div(min(eps, d(., S)))``: one chip leaves ``S`` along every outgoing
    direction and stops at distance ``eps``."""
    if model is not None and model != S.model:
        S = S.lift(common_refinement(model, S.model))
    eps = check_firing(S, eps)
    delta: Counter = Counter()
    for src, dst in firing_moves(S, eps):
        delta[src] -= sign
        delta[dst] += sign
    return D + Divisor(D.graph, delta)


def apply_certificate(graph: MetricGraph | None, D: Divisor, cert: FiringCertificate) -> Divisor:
    for step in cert.steps:
        D = fire_set(None, D, step.S, step.eps, step.sign)
    return D


def is_integral(graph: MetricGraph, D: Divisor) -> bool:
    if not graph.has_integer_lengths():
        raise NonIntegerLengths("integrality needs integer edge lengths")
    return all(p.is_vertex or p.offset.denominator == 1 for p in D.support)
