import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from metricdiv import fixtures
from metricdiv.divisor import Divisor
from metricdiv.graph import PointRef

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def P(name):
    return PointRef.at(name)


def Q(edge, offset):
    return PointRef.on(edge, offset)


def instance(seed, integer=False, **kw):
    rng = random.Random(seed)
    graph = fixtures.random_graph(rng, integer=integer, **kw)
    D = fixtures.random_effective(rng, graph, integer=integer)
    return rng, graph, D


@pytest.fixture
def theta():
    return fixtures.theta()


@pytest.fixture
def dumbbell():
    return fixtures.dumbbell()


@pytest.fixture
def div():
    def make(graph, *points):
        return Divisor.of_points(graph, points)

    return make


def random_model(rng, graph, extra=3):
    return graph.trivial_model.refine(fixtures.random_point(rng, graph) for _ in range(rng.randint(0, extra)))


def random_set(rng, model, p=0.5):
    from metricdiv.topology import AdmissibleSet

    I = [v for v in model.vertices if rng.random() < p]
    inside = set(I)
    J = [me.id for me in model.edges if me.tail in inside and me.head in inside and rng.random() < 0.7]
    return AdmissibleSet(model, I, J)


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[n])
