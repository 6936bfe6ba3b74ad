"""Reduction of an effective divisor to a semibreak representative."""
from __future__ import annotations

from dataclasses import dataclass

from .divisor import (
    Divisor,
    FiringCertificate,
    FiringStep,
    apply_certificate,
    fire_set,
    firing_distance,
)
from .errors import DegreeMismatch, DegreeOutOfRange, InvariantViolation, IterationBoundExceeded, NotEffective
from .graph import MetricGraph, PointRef
from .minmax import check_divisor, max_error_profile
from .topology import AdmissibleSet, boundary_valence, leaving_ends


@dataclass(frozen=True)
class TraceEntry:
    max_error: int
    minmax: AdmissibleSet
    case: int | None
    branch_count: int
    total: Divisor


@dataclass(frozen=True)
class ReductionResult:
    semibreak: Divisor
    break_divisor: Divisor
    certificate: FiringCertificate
    iterations: int
    trace: tuple[TraceEntry, ...] | None = None


def _far_branch_point(S: AdmissibleSet, start: PointRef) -> tuple[PointRef, object]:
    """Destination of a case-(1) move: walk out of ``S`` from ``start`` to the next branch point."""
    ends = leaving_ends(S, start)
    if not ends:
        raise InvariantViolation(f"{start.label} has no edge leaving the set")
    me, slot = ends[0]
    model = S.model
    if me.tail == me.head and me.tail in model.branch:
        raise InvariantViolation(f"loop at {start.label} leaves a convex set")
    while True:
        far, rest = model.step(me, slot)
        if far in model.branch:
            break
        (me, slot), = rest
    if S.contains(far):
        raise InvariantViolation(f"far branch point {far.label} lies in the set")
    return far, ends[0]


def semibreak_reduce(
    graph: MetricGraph, D: Divisor, strategy: str = "exhaustive", keep_trace: bool = False
) -> ReductionResult:
    """Find a semibreak divisor linearly equivalent to the effective divisor ``D``.

    Pads ``D`` with ``(g - d)`` chips at the smallest branch point and
    alternates between moving a padding chip off the boundary of the
    smallest max-error set (case 1) and firing that set on ``D`` (case 2)
    until the padded divisor is a break divisor.
    """
    check_divisor(graph, D)
    g = graph.genus
    q = PointRef.at(graph.base_point)
    E = Divisor(graph, [(q, g - D.degree)])
    steps = []
    trace = [] if keep_trace else None
    bound = g * len(graph.branch_points)
    updates = 0
    while True:
        total = D + E
        profile = max_error_profile(graph, total, strategy)
        S = profile.minmax
        if profile.max_error == 0:
            if trace is not None:
                trace.append(TraceEntry(0, S, None, S.branch_count(), total))
            if total.degree != g:
                raise InvariantViolation("max error reached 0 below the genus")
            break
        updates += 1
        if updates > bound:
            raise IterationBoundExceeded(
                f"more than g*|V| = {bound} updates",
                dump={"D": repr(D), "E": repr(E), "minmax": repr(S)},
            )
        boundary = boundary_valence(S)
        candidates = sorted(p for p in boundary if E[p] > 0)
        if candidates:
            start = candidates[0]
            far, _ = _far_branch_point(S, start)
            E = E - Divisor(graph, [(start, 1)]) + Divisor(graph, [(far, 1)])
            case = 1
        else:
            eps = firing_distance(S)
            D = fire_set(None, D, S, eps)
            steps.append(FiringStep(S, eps))
            case = 2
        if trace is not None:
            trace.append(TraceEntry(profile.max_error, S, case, S.branch_count(), total))
        if not (D.is_effective and E.is_effective):
            raise InvariantViolation("reduction produced a non-effective divisor", dump={"D": repr(D), "E": repr(E)})
    return ReductionResult(
        semibreak=D,
        break_divisor=D + E,
        certificate=FiringCertificate(tuple(steps)),
        iterations=updates + 1,
        trace=tuple(trace) if trace is not None else None,
    )


def is_break(graph: MetricGraph, D: Divisor, strategy: str = "exhaustive") -> bool:
    if not D.is_effective:
        raise NotEffective("divisor must be effective")
    if D.degree != graph.genus:
        return False
    return max_error_profile(graph, D, strategy).is_break_signal


def break_representative(graph: MetricGraph, D: Divisor, strategy: str = "exhaustive") -> Divisor:
    return break_reduction(graph, D, strategy).break_divisor


def break_reduction(graph: MetricGraph, D: Divisor, strategy: str = "exhaustive") -> ReductionResult:
    if not D.is_effective:
        raise NotEffective("divisor must be effective")
    if D.degree != graph.genus:
        raise DegreeOutOfRange(f"break representative needs degree {graph.genus}, got {D.degree}")
    return semibreak_reduce(graph, D, strategy)


def _padded(graph: MetricGraph, D: Divisor) -> Divisor:
    return D + Divisor(graph, [(PointRef.at(graph.base_point), graph.genus - D.degree)])


def equivalence_certificate(
    graph: MetricGraph, D1: Divisor, D2: Divisor, strategy: str = "exhaustive"
) -> FiringCertificate | None:
    """Certificate taking ``D1`` to ``D2``, or None when they are not equivalent.

    Both divisors are padded to degree g at the base point and reduced to
    their break representatives; the second reduction is then run backwards.
    """
    for D in (D1, D2):
        check_divisor(graph, D)
    if D1.degree != D2.degree:
        raise DegreeMismatch(f"degrees differ: {D1.degree} vs {D2.degree}")
    r1 = break_reduction(graph, _padded(graph, D1), strategy)
    r2 = break_reduction(graph, _padded(graph, D2), strategy)
    if r1.break_divisor != r2.break_divisor:
        return None
    cert = r1.certificate + r2.certificate.inverse()
    if apply_certificate(graph, D1, cert) != D2:
        raise InvariantViolation("composite certificate does not replay")
    return cert


def are_equivalent(graph: MetricGraph, D1: Divisor, D2: Divisor, strategy: str = "exhaustive") -> bool:
    return equivalence_certificate(graph, D1, D2, strategy) is not None
