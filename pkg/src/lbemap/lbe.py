"""Lower bound error between two pseudo-orbits and the reliable horizon.

For pseudo-orbits ``a`` and ``b`` of the same map from the same initial
value, ``delta[n] = |a[n] - b[n]| / 2``. By the triangle inequality at
least one of the two orbits is off from the true orbit by ``delta[n]`` or
more, so ``delta`` is a floor on the simulation error.

Significant digits are counted as ``-log10(2 * delta)``: the number of
decimal digits on which the two orbits still agree, for signals living in
the unit interval. Swap :func:`significant_digits` for a relative-error
variant if your observable is not O(1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import mapcore
from .errors import DomainError, MismatchError, SameFormError
from .mapcore import ExtensionForm, PseudoOrbit

# One decimal digit: below it even the leading digit of the state is lost.
DEFAULT_DIGIT_FLOOR = 1.0


@dataclass(frozen=True, eq=False)
class DivergenceSeries:
    delta: np.ndarray
    digits: np.ndarray
    n_max: Optional[int]
    digit_floor: float

    def __len__(self) -> int:
        return self.delta.shape[0]

    def first_crossing(self, threshold: float) -> Optional[int]:
        """First n with ``delta[n] >= threshold``, or None."""
        hits = np.flatnonzero(self.delta >= threshold)
        return int(hits[0]) if hits.size else None


def significant_digits(delta_n: float) -> float:
    delta_n = float(delta_n)
    if math.isnan(delta_n) or delta_n < 0:
        raise DomainError(f"lower bound error must be >= 0, got {delta_n!r}")
    if delta_n == 0:
        return math.inf
    return -math.log10(2 * delta_n)


_neg_log10 = np.frompyfunc(lambda v: -math.log10(v), 1, 1)


def digits_array(delta: np.ndarray) -> np.ndarray:
    """Vectorised :func:`significant_digits`."""
    delta = np.asarray(delta, dtype=np.float64)
    if np.isnan(delta).any() or (delta < 0).any():
        raise DomainError("lower bound error must be >= 0")
    out = np.full(delta.shape, np.inf)
    nz = delta > 0
    # math.log10 keeps the array path bit-identical to significant_digits
    out[nz] = _neg_log10(2 * delta[nz]).astype(np.float64)
    return out


def max_reliable_iteration(delta: Sequence[float], digit_floor: float = DEFAULT_DIGIT_FLOOR) -> Optional[int]:
    """Smallest n whose significant digits fall below ``digit_floor``.

    Returns None when the floor is never crossed.
    """
    if not digit_floor >= 0:
        raise DomainError(f"digit floor must be >= 0, got {digit_floor!r}")
    digits = digits_array(np.asarray(delta, dtype=np.float64))
    hits = np.flatnonzero(digits < digit_floor)
    return int(hits[0]) if hits.size else None


def half_gap(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    with np.errstate(invalid="ignore", over="ignore"):
        return np.abs(np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64)) / 2


def lower_bound_error(
    orbit_a: PseudoOrbit,
    orbit_b: PseudoOrbit,
    digit_floor: float = DEFAULT_DIGIT_FLOOR,
) -> DivergenceSeries:
    if not digit_floor >= 0:
        raise DomainError(f"digit floor must be >= 0, got {digit_floor!r}")
    if len(orbit_a) != len(orbit_b):
        raise MismatchError(f"orbit lengths differ: {len(orbit_a)} vs {len(orbit_b)}")
    if orbit_a.params != orbit_b.params:
        raise MismatchError("orbits were computed with different parameters")
    if orbit_a.x0.x0_float != orbit_b.x0.x0_float:
        raise MismatchError("orbits start from different initial values")
    if orbit_a.form is orbit_b.form:
        raise SameFormError(f"both orbits use {orbit_a.form}")
    delta = half_gap(orbit_a.values, orbit_b.values)
    digits = digits_array(delta)
    hits = np.flatnonzero(digits < digit_floor)
    n_max = int(hits[0]) if hits.size else None
    delta.flags.writeable = False
    digits.flags.writeable = False
    return DivergenceSeries(delta=delta, digits=digits, n_max=n_max, digit_floor=float(digit_floor))


def reliable_horizon_sweep(
    r_values,
    x0_values,
    n: int,
    digit_floor: float = DEFAULT_DIGIT_FLOOR,
    forms: tuple[ExtensionForm, ExtensionForm] = (ExtensionForm.A, ExtensionForm.B),
) -> np.ndarray:
    """n_max for every (r, x0) pair, computed with the batch kernels.

    Intended for scanning initial conditions. Entries are -1 where the
    floor is never crossed within ``n`` iterations and -2 where either
    orbit faulted out of the unit interval.
    """
    if not digit_floor >= 0:
        raise DomainError(f"digit floor must be >= 0, got {digit_floor!r}")
    orb_a, fault_a = mapcore.iterate_batch(forms[0], r_values, x0_values, n)
    orb_b, fault_b = mapcore.iterate_batch(forms[1], r_values, x0_values, n)
    faulted = (fault_a >= 0) | (fault_b >= 0)
    delta = half_gap(orb_a, orb_b)
    delta[:, faulted] = 0.0  # values after a fault are meaningless
    below = digits_array(delta) < digit_floor
    out = np.where(below.any(axis=0), below.argmax(axis=0), -1).astype(np.int64)
    out[faulted] = -2
    return out
