"""Error function, max error and the smallest max-error set."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import kernels
from .divisor import Divisor, degree_on
from .errors import DegreeOutOfRange, GroundSetTooLarge, InputError, NotEffective, SolverNotAvailable
from .graph import MetricGraph, Model
from .minnorm import minimal_minimizer
from .topology import AdmissibleSet, conv_model, psi

EXHAUSTIVE_BOUND = 20
STRATEGIES = ("exhaustive", "min_norm")


def error_of_set(model: Model | None, D: Divisor, S: AdmissibleSet) -> int:
    """``deg(D|_S) - ψ(S)``."""
    return degree_on(D, S) - psi(S)


@dataclass(frozen=True)
class ErrorProfile:
    max_error: int
    minmax: AdmissibleSet
    is_break_signal: bool

    @property
    def is_break(self) -> bool:
        return self.is_break_signal


@dataclass
class SubmodularObjective:
    """A set function on an ordered ground set.

    ``evaluator`` takes a frozenset of ground elements and returns an exact
    number. ``scan`` optionally supplies a fast exhaustive search that
    returns the same answer as the generic enumeration.
    """

    ground: Sequence
    evaluator: Callable[[frozenset], Fraction]
    scan: Callable[[], frozenset] | None = field(default=None, repr=False)

    def __call__(self, X) -> Fraction:
        return self.evaluator(frozenset(X))

    def perturbed(self, X) -> Fraction:
        n = len(self.ground)
        X = frozenset(X)
        return Fraction(self.evaluator(X)) + Fraction(len(X), 2 * n)


def _exhaustive(obj: SubmodularObjective) -> frozenset:
    ground = list(obj.ground)
    n = len(ground)
    best, best_set = None, frozenset()
    for mask in range(1 << n):
        X = frozenset(ground[i] for i in range(n) if mask >> i & 1)
        value = obj.perturbed(X)
        if best is None or value < best:
            best, best_set = value, X
    return best_set


def smallest_submodular_minimizer(
    obj: SubmodularObjective, strategy: str = "exhaustive", bound: int = EXHAUSTIVE_BOUND
) -> frozenset:
    """Unique inclusion-smallest minimizer, found by minimizing ``f + |X|/(2n)``."""
    n = len(obj.ground)
    if n == 0:
        raise InputError("ground set is empty")
    if strategy == "exhaustive":
        if n > bound:
            raise GroundSetTooLarge(f"{n} elements exceed the exhaustive bound {bound}")
        if obj.scan is not None:
            return obj.scan()
        return _exhaustive(obj)
    if strategy in ("min_norm", "min-norm"):
        ground = list(obj.ground)
        idx = minimal_minimizer(n, lambda X: obj.perturbed(ground[i] for i in X))
        return frozenset(ground[i] for i in idx)
    raise SolverNotAvailable(f"unknown strategy {strategy!r}")


def check_divisor(graph: MetricGraph, D: Divisor):
    if not D.is_effective:
        raise NotEffective("divisor must be effective")
    if not 0 <= D.degree <= graph.genus:
        raise DegreeOutOfRange(f"degree {D.degree} outside [0, {graph.genus}]")


def error_objective(model: Model, D: Divisor) -> SubmodularObjective:
    """``X ↦ -Error(D, conv_G(X))`` over the vertices of ``model``.

    ``supp(D)`` must consist of model vertices.
    """
    ground = model.vertices
    index = {v: i for i, v in enumerate(ground)}
    weights = [D[v] for v in ground]
    tails = [index[me.tail] for me in model.edges]
    heads = [index[me.head] for me in model.edges]

    def evaluate(X):
        return Fraction(-error_of_set(model, D, conv_model(model, X)))

    def scan():
        mask, _ = kernels.scan_error_objective(len(ground), weights, tails, heads)
        return frozenset(v for i, v in enumerate(ground) if mask >> i & 1)

    return SubmodularObjective(ground, evaluate, scan)


def error_model(graph: MetricGraph, D: Divisor) -> Model:
    return graph.trivial_model.refine(D.support)


def max_error_profile(graph: MetricGraph, D: Divisor, strategy: str = "exhaustive") -> ErrorProfile:
    check_divisor(graph, D)
    model = error_model(graph, D)
    X = smallest_submodular_minimizer(error_objective(model, D), strategy)
    if len(X) == len(model.vertices):
        return ErrorProfile(0, AdmissibleSet.empty(model), True)
    S = conv_model(model, X)
    return ErrorProfile(error_of_set(model, D, S), S, False)
