"""Named example graphs and seeded random instance generators."""
from __future__ import annotations

import random
from fractions import Fraction

from .divisor import Divisor
from .errors import DegenerateGraph
from .graph import MetricGraph, PointRef, build_graph


def theta(length=1) -> MetricGraph:
    """Two vertices joined by three parallel edges ``e1, e2, e3``."""
    return build_graph((["u", "v"], [(f"e{i}", "u", "v", length) for i in (1, 2, 3)]))


def dumbbell(bridge=1, loops=1) -> MetricGraph:
    """Loops ``A`` at ``u`` and ``B`` at ``v`` joined by the bridge ``e``."""
    return build_graph((["u", "v"], [("A", "u", "u", loops), ("B", "v", "v", loops), ("e", "u", "v", bridge)]))


def banana(k: int, length=1) -> MetricGraph:
    """``k`` parallel edges between ``u`` and ``v`` (genus ``k - 1``)."""
    return build_graph((["u", "v"], [(f"e{i}", "u", "v", length) for i in range(1, k + 1)]))


def random_graph(
    rng: random.Random,
    max_vertices: int = 6,
    max_edges: int = 9,
    max_genus: int = 4,
    max_den: int = 8,
    integer: bool = False,
) -> MetricGraph:
    """Connected multigraph with loops; valency-2 vertices are allowed."""
    while True:
        n = rng.randint(1, max_vertices)
        names = [f"v{i}" for i in range(n)]
        edges = []
        for i in range(1, n):
            edges.append((names[rng.randrange(i)], names[i]))
        extra = rng.randint(0, min(max_genus, max_edges - len(edges)))
        for _ in range(extra):
            edges.append((rng.choice(names), rng.choice(names)))
        if not edges:
            continue
        records = []
        for k, (a, b) in enumerate(edges):
            if integer:
                length = Fraction(rng.randint(1, 3))
            else:
                length = Fraction(rng.randint(1, 2 * max_den), rng.randint(1, max_den))
            records.append((f"e{k}", a, b, length))
        try:
            return build_graph((names, records))
        except DegenerateGraph:
            continue


def random_point(rng: random.Random, graph: MetricGraph, integer: bool = False, max_den: int = 8) -> PointRef:
    if rng.random() < 0.4:
        return PointRef.at(rng.choice(graph.vertices))
    e = rng.choice(graph.edges)
    if integer:
        if e.length <= 1:
            return PointRef.at(rng.choice(e.ends))
        return PointRef.on(e.id, rng.randint(1, int(e.length) - 1))
    den = rng.randint(1, max_den)
    choices = [Fraction(k, den) for k in range(1, int(e.length * den) + 1) if Fraction(k, den) < e.length]
    if not choices:
        return PointRef.at(rng.choice(e.ends))
    return PointRef.on(e.id, rng.choice(choices))


def random_effective(
    rng: random.Random, graph: MetricGraph, degree: int | None = None, integer: bool = False
) -> Divisor:
    if degree is None:
        degree = rng.randint(0, graph.genus)
    return Divisor.of_points(graph, [random_point(rng, graph, integer) for _ in range(degree)])
