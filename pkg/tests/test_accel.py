"""The compiled kernels and the pure fallback must agree bit for bit."""

from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest

from lbemap import _accel, kernels, mapcore
from lbemap.pipeline import PAPER_X0

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


def _orbit(fn, form, r, x0, n):
    out = np.empty(n + 1)
    out[0] = x0
    fault = fn(form, r, out, mapcore.RANGE_LO, mapcore.RANGE_HI)
    return out, fault


@needs_numba
@pytest.mark.parametrize("text", PAPER_X0)
@pytest.mark.parametrize("form", [kernels.FORM_A, kernels.FORM_B])
def test_single_orbit_bitwise(paper_params, text, form):
    # chaotic amplification turns any contracted/reordered op into a visible gap
    x0 = mapcore.parse_initial_condition(text, paper_params).x0_float
    jit, fj = _orbit(kernels._iterate_jit, form, paper_params.r, x0, 5000)
    py, fp = _orbit(kernels._iterate_py, form, paper_params.r, x0, 5000)
    assert fj == fp == -1
    assert jit.tobytes() == py.tobytes()


@needs_numba
def test_batch_bitwise():
    rng = np.random.default_rng(11)
    r = rng.uniform(3.5, 4.0, 64)
    x0 = rng.uniform(0.0, 1.0, 64)
    for form in (kernels.FORM_A, kernels.FORM_B):
        oj, fj = kernels._iterate_batch_jit(form, r, x0, 3000, mapcore.RANGE_LO, mapcore.RANGE_HI)
        op, fp = kernels._iterate_batch_py(form, r, x0, 3000, mapcore.RANGE_LO, mapcore.RANGE_HI)
        assert oj.tobytes() == op.tobytes()
        assert (fj == fp).all()


@needs_numba
def test_scalar_step_bitwise():
    rng = np.random.default_rng(5)
    for r, x in zip(rng.uniform(0, 4, 2000), rng.uniform(0, 1, 2000)):
        for form in (kernels.FORM_A, kernels.FORM_B):
            assert kernels._step_jit(form, r, x) == kernels._step_py(form, r, x)


@needs_numba
def test_fault_index_agrees():
    for fn in (kernels._iterate_jit, kernels._iterate_py):
        _, fault = _orbit(fn, kernels.FORM_B, 4.5, 0.5, 20)
        assert fault == 1
    for fn in (kernels._iterate_batch_jit, kernels._iterate_batch_py):
        _, faults = fn(kernels.FORM_B, np.array([4.5, 3.9]), np.array([0.5, 0.5]), 10,
                       mapcore.RANGE_LO, mapcore.RANGE_HI)
        assert faults.tolist() == [1, -1]


def test_env_flag_selects_fallback():
    code = (
        "from lbemap import _accel, kernels;"
        "print(_accel.USE_NUMBA, kernels.iterate_into is kernels._iterate_py)"
    )
    env = dict(os.environ, LBEMAP_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "True"]
