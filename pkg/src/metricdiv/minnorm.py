"""Fujishige-Wolfe minimum-norm-point algorithm in exact rational arithmetic.

For a normalized submodular ``f`` (``f(∅) = 0``) the min-norm point ``x`` of
the base polytope gives the inclusion-minimal minimizer ``{i : x_i < 0}``.
All arithmetic is on Fractions, so the optimality test and the sign test at
the end are exact.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .errors import InvariantViolation

MAX_MAJOR = 10_000


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def greedy_vertex(n: int, f: Callable[[frozenset], Fraction], w) -> list[Fraction]:
    """Vertex of the base polytope minimizing ``<w, q>`` (Edmonds' greedy)."""
    order = sorted(range(n), key=lambda i: (w[i], i))
    q = [Fraction(0)] * n
    prefix = set()
    prev = Fraction(0)
    for i in order:
        prefix.add(i)
        val = Fraction(f(frozenset(prefix)))
        q[i] = val - prev
        prev = val
    return q


def _solve(a, b):
    """Gaussian elimination over Fractions; ``a`` is square and nonsingular."""
    size = len(a)
    m = [row[:] + [rhs] for row, rhs in zip(a, b)]
    for col in range(size):
        piv = next(r for r in range(col, size) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(size):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [v - factor * p for v, p in zip(m[r], m[col])]
    return [m[r][size] for r in range(size)]


def affine_minimizer(points):
    """Coefficients ``mu`` (summing to 1) of the min-norm point of ``aff(points)``."""
    k = len(points)
    gram = [[_dot(p, q) for q in points] for p in points]
    a = [[Fraction(1)] * k + [Fraction(0)]]
    for i in range(k):
        a.append(gram[i] + [Fraction(1)])
    # unknowns: mu_1..mu_k, -nu
    sol = _solve(a, [Fraction(1)] + [Fraction(0)] * k)
    mu = sol[:k]
    y = [sum(m * p[j] for m, p in zip(mu, points)) for j in range(len(points[0]))]
    return mu, y


def min_norm_point(n: int, f: Callable[[frozenset], Fraction]) -> list[Fraction]:
    x = greedy_vertex(n, f, [Fraction(0)] * n)
    corral = [x]
    lam = [Fraction(1)]
    for _ in range(MAX_MAJOR):
        q = greedy_vertex(n, f, x)
        if _dot(x, x) <= _dot(x, q) or q in corral:
            return x
        corral.append(q)
        lam.append(Fraction(0))
        while True:
            mu, y = affine_minimizer(corral)
            if all(m > 0 for m in mu):
                x, lam = y, mu
                break
            theta = min(l / (l - m) for l, m in zip(lam, mu) if m <= 0 and l != m)
            lam = [theta * m + (1 - theta) * l for l, m in zip(lam, mu)]
            keep = [i for i, l in enumerate(lam) if l > 0]
            corral = [corral[i] for i in keep]
            lam = [lam[i] for i in keep]
            x = [sum(l * p[j] for l, p in zip(lam, corral)) for j in range(n)]
    raise InvariantViolation("min-norm point did not converge")


def minimal_minimizer(n: int, f: Callable[[frozenset], Fraction]) -> frozenset:
    """Inclusion-minimal minimizer of a submodular ``f`` on ``range(n)``."""
    if n == 0:
        return frozenset()
    base = Fraction(f(frozenset()))
    x = min_norm_point(n, lambda X: Fraction(f(X)) - base)
    return frozenset(i for i in range(n) if x[i] < 0)
