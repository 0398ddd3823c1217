"""Exact rational orbits used as ground truth for short horizons.

Numerator and denominator sizes roughly double every iteration, so the
oracle is only practical for a couple of dozen steps. It runs on GMP
integers (gmpy2) and keeps each iterate in lowest terms without a full
big-integer gcd: if ``x = p/q`` is reduced, ``p*(q-p)`` and ``q*q`` are
coprime, so the only cancellation left is against the small numerator and
denominator of ``r``.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np
from gmpy2 import mpz

from .errors import BudgetExceeded, MismatchError
from .lbe import DivergenceSeries
from .mapcore import InitialCondition, MapParams, PseudoOrbit

DEFAULT_HORIZON = 20
# Denominator digits at index 20 reach ~7.2e6 for x0 = 1904/6365.
DEFAULT_DIGIT_BUDGET = 10_000_000


@dataclass(frozen=True, eq=False)
class ExactOrbit:
    """Exact iterates ``numerators[n] / denominators[n]`` in lowest terms."""

    params: MapParams
    x0_exact: Fraction
    numerators: tuple
    denominators: tuple

    @property
    def m(self) -> int:
        return len(self.numerators) - 1

    def __len__(self) -> int:
        return len(self.numerators)

    def fraction(self, n: int) -> Fraction:
        """Iterate ``n`` as a :class:`~fractions.Fraction` (slow for large n)."""
        return Fraction(int(self.numerators[n]), int(self.denominators[n]))

    def equals(self, n: int, value: Fraction) -> bool:
        # both sides are reduced, so equality is componentwise
        return self.numerators[n] == value.numerator and self.denominators[n] == value.denominator

    def to_float(self, n: int) -> float:
        return float(gmpy2.mpq(self.numerators[n], self.denominators[n]))


@dataclass(frozen=True, eq=False)
class TrueErrorSeries:
    err_a: np.ndarray
    err_b: np.ndarray
    horizon: int


@dataclass(frozen=True, eq=False)
class ValidationReport:
    """Per-index check of ``max(err_a, err_b) >= delta``."""

    passed: np.ndarray
    delta: np.ndarray
    max_error: np.ndarray

    @property
    def ok(self) -> bool:
        return bool(self.passed.all())

    @property
    def failures(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(~self.passed)]

    @property
    def horizon(self) -> int:
        return self.passed.shape[0] - 1


def _exact_step(rn, rd, p, q):
    if p == 0 or p == q:
        return mpz(0), mpz(1)
    a = p * (q - p)
    b = q * q
    g1 = gmpy2.gcd(rn, b % rn)
    g2 = gmpy2.gcd(rd, a % rd)
    return (rn // g1) * (a // g2), (rd // g2) * (b // g1)


def exact_orbit(
    params: MapParams,
    x0: InitialCondition,
    m: int = DEFAULT_HORIZON,
    digit_budget: int = DEFAULT_DIGIT_BUDGET,
) -> ExactOrbit:
    """Iterate ``r * x * (1 - x)`` exactly for ``m`` steps.

    Raises :class:`BudgetExceeded` (carrying the partial orbit) as soon as a
    denominator needs more than ``digit_budget`` decimal digits.
    """
    if m < 0:
        raise ValueError("horizon must be >= 0")
    rn, rd = mpz(params.r_exact.numerator), mpz(params.r_exact.denominator)
    p, q = mpz(x0.x0_exact.numerator), mpz(x0.x0_exact.denominator)
    nums, dens = [p], [q]
    for n in range(1, m + 1):
        p, q = _exact_step(rn, rd, p, q)
        # num_digits may overstate by one; that only makes the budget stricter
        if q.num_digits(10) > digit_budget:
            partial = ExactOrbit(params, x0.x0_exact, tuple(nums), tuple(dens))
            raise BudgetExceeded(n - 1, digit_budget, partial)
        nums.append(p)
        dens.append(q)
    return ExactOrbit(params, x0.x0_exact, tuple(nums), tuple(dens))


def ceil_ratio(num, den) -> float:
    """Smallest binary64 >= num/den for integers ``num >= 0``, ``den > 0``."""
    num, den = mpz(num), mpz(den)
    if num == 0:
        return 0.0
    shift = 60 - (num.bit_length() - den.bit_length())
    if shift >= 0:
        quo, rem = divmod(num << shift, den)
    else:
        quo, rem = divmod(num, den << -shift)
    drop = quo.bit_length() - 53
    hi = quo >> drop
    if rem or (quo & ((mpz(1) << drop) - 1)):
        hi += 1
    exp = drop - shift
    if exp + hi.bit_length() <= sys.float_info.min_exp:
        # subnormal result: ldexp rounds to nearest, so step up once more
        return math.nextafter(math.ldexp(int(hi), exp), math.inf)
    return math.ldexp(int(hi), exp)


def _abs_error_up(x: float, p, q) -> float:
    a, b = x.as_integer_ratio()
    return ceil_ratio(abs(mpz(a) * q - p * mpz(b)), mpz(b) * q)


def true_errors(orbit_a: PseudoOrbit, orbit_b: PseudoOrbit, exact: ExactOrbit) -> TrueErrorSeries:
    """Absolute error of each pseudo-orbit against the exact one, rounded up."""
    for orb in (orbit_a, orbit_b):
        if orb.params != exact.params:
            raise MismatchError("pseudo-orbit and exact orbit use different parameters")
        if orb.x0.x0_exact != exact.x0_exact:
            raise MismatchError("pseudo-orbit and exact orbit start from different x0")
    horizon = exact.m
    if horizon > min(orbit_a.n, orbit_b.n):
        raise MismatchError(f"oracle horizon {horizon} exceeds pseudo-orbit length")
    err_a = np.empty(horizon + 1)
    err_b = np.empty(horizon + 1)
    for n in range(horizon + 1):
        p, q = exact.numerators[n], exact.denominators[n]
        err_a[n] = _abs_error_up(float(orbit_a.values[n]), p, q)
        err_b[n] = _abs_error_up(float(orbit_b.values[n]), p, q)
    return TrueErrorSeries(err_a=err_a, err_b=err_b, horizon=horizon)


def validate_lbe(series: DivergenceSeries, errors: TrueErrorSeries) -> ValidationReport:
    h = errors.horizon
    if len(series) < h + 1:
        raise MismatchError("divergence series shorter than oracle horizon")
    delta = np.asarray(series.delta[: h + 1])
    worst = np.maximum(errors.err_a, errors.err_b)
    return ValidationReport(passed=worst >= delta, delta=delta, max_error=worst)
