from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lbemap import (
    DomainError,
    FormA,
    FormB,
    MismatchError,
    SameFormError,
    iterate,
    lower_bound_error,
    make_params,
    max_reliable_iteration,
    parse_initial_condition,
    significant_digits,
)
from lbemap import lbe
from lbemap.mapcore import PseudoOrbit

deltas = arrays(np.float64, st.integers(1, 60), elements=st.floats(0.0, 0.5))


def _orbits(r="3.8283", x0="0.3", n=5000):
    p = make_params(r)
    x = parse_initial_condition(x0, p)
    return iterate(FormA, p, x, n), iterate(FormB, p, x, n)


def _fake(form, values, params, x0):
    return PseudoOrbit(form=form, params=params, x0=x0, values=np.asarray(values, dtype=np.float64))


class TestLowerBoundError:
    def test_identical_orbits(self):
        a, b = _orbits(x0="0", n=50)
        s = lower_bound_error(a, b, digit_floor=0)
        assert (s.delta == 0).all()
        assert np.isinf(s.digits).all()
        assert s.n_max is None

    def test_direct_formula(self, paper_params):
        x0 = parse_initial_condition("0.5", paper_params)
        a = _fake(FormA, [0.5, 0.5], paper_params, x0)
        b = _fake(FormB, [0.5, 0.3], paper_params, x0)
        s = lower_bound_error(a, b)
        assert s.delta[1] == abs(0.5 - 0.3) / 2
        assert s.delta[1] == pytest.approx(0.1, abs=1e-16)

    def test_paper_divergence(self):
        a, b = _orbits()
        s = lower_bound_error(a, b)
        assert s.delta[0] == 0
        # golden: first index where the half-gap reaches 0.1
        assert s.first_crossing(0.1) == 248

    def test_zero_iff_bitwise_equal(self):
        a, b = _orbits(x0="300/341", n=400)
        s = lower_bound_error(a, b)
        assert ((s.delta == 0) == (a.values == b.values)).all()

    def test_symmetry(self):
        a, b = _orbits(x0="1904/6365")
        assert lower_bound_error(a, b).delta.tobytes() == lower_bound_error(b, a).delta.tobytes()

    def test_scale_sanity(self):
        for x0 in ("0.3", "1/r", "300/341", "1904/6365"):
            s = lower_bound_error(*_orbits(x0=x0))
            assert s.delta.max() <= 0.5 + 2 * math.ulp(0.5)

    def test_mismatched_length(self):
        a, _ = _orbits(n=10)
        _, b = _orbits(n=11)
        with pytest.raises(MismatchError):
            lower_bound_error(a, b)

    def test_mismatched_params(self):
        a, _ = _orbits(r="3.8283", n=10)
        _, b = _orbits(r="3.9", n=10)
        with pytest.raises(MismatchError):
            lower_bound_error(a, b)

    def test_mismatched_x0(self):
        a, _ = _orbits(x0="0.3", n=10)
        _, b = _orbits(x0="0.31", n=10)
        with pytest.raises(MismatchError):
            lower_bound_error(a, b)

    def test_same_form(self):
        a, _ = _orbits(n=10)
        with pytest.raises(SameFormError):
            lower_bound_error(a, a)

    def test_negative_floor(self):
        a, b = _orbits(n=10)
        with pytest.raises(DomainError):
            lower_bound_error(a, b, digit_floor=-1)


class TestSignificantDigits:
    @pytest.mark.parametrize("delta,digits", [(0.05, 1.0), (0.5, 0.0), (0.005, 2.0)])
    def test_values(self, delta, digits):
        assert significant_digits(delta) == pytest.approx(digits, abs=1e-15)

    def test_zero(self):
        assert significant_digits(0.0) == math.inf

    def test_negative_allowed_output(self):
        assert significant_digits(1.0) < 0

    @pytest.mark.parametrize("bad", [-1e-300, -0.5, float("nan")])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            significant_digits(bad)

    @given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
    def test_antitone(self, d1, d2):
        lo, hi = sorted((d1, d2))
        assert significant_digits(hi) <= significant_digits(lo)

    @given(deltas)
    def test_array_matches_scalar(self, d):
        arr = lbe.digits_array(d)
        assert arr.tolist() == [significant_digits(v) for v in d]


class TestMaxReliableIteration:
    def test_no_divergence(self):
        assert max_reliable_iteration([0.0] * 10, 0) is None

    def test_small_example(self):
        assert max_reliable_iteration([0, 0.001, 0.3], 1) == 2
        assert significant_digits(0.3) == pytest.approx(-math.log10(0.6))

    def test_paper_floor_one(self):
        # golden regression constant
        s = lower_bound_error(*_orbits(), digit_floor=1)
        assert s.n_max == 247
        assert max_reliable_iteration(s.delta, 1) == 247

    def test_floor_zero_never_crossed_in_unit_interval(self):
        # digits < 0 needs |a - b| > 1, impossible while both orbits stay in [0, 1]
        s = lower_bound_error(*_orbits(), digit_floor=0)
        assert s.n_max is None
        assert s.digits.min() > 0

    def test_negative_floor(self):
        with pytest.raises(DomainError):
            max_reliable_iteration([0.1], -0.5)

    @given(deltas, st.floats(0, 20), st.floats(0, 20))
    def test_monotone_in_floor(self, d, f1, f2):
        lo, hi = sorted((f1, f2))
        n_lo = max_reliable_iteration(d, lo)
        n_hi = max_reliable_iteration(d, hi)
        if n_lo is not None:
            assert n_hi is not None and n_hi <= n_lo

    @given(deltas, st.floats(0, 20))
    def test_matches_brute_force(self, d, floor):
        expected = next((i for i, v in enumerate(d) if significant_digits(v) < floor), None)
        assert max_reliable_iteration(d, floor) == expected


def test_sweep_matches_per_orbit(paper_params):
    texts = ("0.3", "1/r", "300/341", "1904/6365")
    xs = [parse_initial_condition(t, paper_params) for t in texts]
    r = np.full(len(xs), paper_params.r)
    x0 = np.array([x.x0_float for x in xs])
    got = lbe.reliable_horizon_sweep(r, x0, 5000, digit_floor=2)
    for j, x in enumerate(xs):
        s = lower_bound_error(iterate(FormA, paper_params, x, 5000), iterate(FormB, paper_params, x, 5000), 2)
        assert got[j] == s.n_max


def test_sweep_sentinels():
    got = lbe.reliable_horizon_sweep(np.array([3.0, 4.5]), np.array([0.0, 0.5]), 20, digit_floor=1)
    assert got.tolist() == [-1, -2]
