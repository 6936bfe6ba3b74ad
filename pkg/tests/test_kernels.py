import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from metricdiv import _kernels_py, kernels

compiled = pytest.importorskip("metricdiv._kernels")


@st.composite
def scan_inputs(draw):
    n = draw(st.integers(1, 10))
    weights = draw(st.lists(st.integers(0, 4), min_size=n, max_size=n))
    m = draw(st.integers(0, 14))
    tails = draw(st.lists(st.integers(0, n - 1), min_size=m, max_size=m))
    heads = draw(st.lists(st.integers(0, n - 1), min_size=m, max_size=m))
    return n, weights, tails, heads


@given(scan_inputs())
def test_compiled_matches_python(args):
    assert compiled.scan_error_objective(*args) == _kernels_py.scan_error_objective(*args)


def test_backend_is_compiled_by_default():
    if os.environ.get("METRICDIV_PURE"):
        pytest.skip("pure backend forced")
    assert kernels.BACKEND == "cython"


def test_pure_backend_can_be_forced():
    code = "from metricdiv import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, METRICDIV_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_scan_ties_prefer_smallest_mask():
    # f is constant zero on a single vertex with no edges: empty set wins
    assert _kernels_py.scan_error_objective(1, [0], [], []) == compiled.scan_error_objective(1, [0], [], [])
