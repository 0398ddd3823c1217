"""The logistic map, its two floating-point extension forms, and fixed points."""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import ParseError, RangeError, RangeFault

# Slack allowed outside [0, 1] before an iterate counts as a range fault.
ULP_ONE = math.ulp(1.0)
RANGE_LO = 0.0 - 4 * ULP_ONE
RANGE_HI = 1.0 + 4 * ULP_ONE


class ExtensionForm(enum.Enum):
    """An algebraic arrangement of the map update.

    The two members are equal over the reals but round differently in
    binary64, which is what makes their pseudo-orbits drift apart.
    """

    A = ("A", "r*x - r*(x*x)")
    B = ("B", "(r*x) * (1 - x)")

    def __init__(self, label: str, description: str):
        self.label = label
        self.description = description

    @property
    def code(self) -> int:
        return kernels.FORM_A if self is ExtensionForm.A else kernels.FORM_B

    def __str__(self) -> str:
        return f"Form{self.label}"


FormA = ExtensionForm.A
FormB = ExtensionForm.B


@dataclass(frozen=True)
class MapParams:
    r: float
    r_exact: Fraction
    text: str = field(default="", compare=False)

    def __post_init__(self):
        if not (0 < self.r_exact <= 4):
            raise RangeError(f"r = {self.r_exact} outside (0, 4]")
        if float(self.r_exact) != self.r:
            raise ValueError("r must be the nearest binary64 of r_exact")


@dataclass(frozen=True)
class InitialCondition:
    x0_exact: Fraction
    x0_float: float
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if not (0 <= self.x0_exact <= 1):
            raise RangeError(f"x0 = {self.x0_exact} outside [0, 1]")
        if float(self.x0_exact) != self.x0_float:
            raise ValueError("x0_float must be the nearest binary64 of x0_exact")


@dataclass(frozen=True, eq=False)
class PseudoOrbit:
    """Binary64 iterates ``values[0..N]`` of one extension form."""

    form: ExtensionForm
    params: MapParams
    x0: InitialCondition
    values: np.ndarray

    def __len__(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.values.shape[0] - 1


def _parse_decimal(text: str) -> Fraction:
    try:
        d = Decimal(text.strip())
    except InvalidOperation:
        raise ParseError(f"not a decimal number: {text!r}") from None
    if not d.is_finite():
        raise ParseError(f"not a finite decimal: {text!r}")
    return Fraction(d)


def make_params(r_text: str) -> MapParams:
    """Build map parameters from a decimal literal such as ``"3.8283"``.

    The literal is kept as an exact rational so the oracle iterates the
    value the user wrote, not its binary64 neighbour.
    """
    if not isinstance(r_text, str):
        raise ParseError("r must be given as a decimal string")
    r_exact = _parse_decimal(r_text)
    if not (0 < r_exact <= 4):
        raise RangeError(f"r = {r_text} outside (0, 4]")
    # int/int true division is correctly rounded in CPython.
    return MapParams(r=float(r_exact), r_exact=r_exact, text=r_text.strip())


_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")


def parse_initial_condition(text: str, params: MapParams) -> InitialCondition:
    """Parse ``"0.3"``, ``"300/341"`` or the token ``"1/r"``."""
    label = text.strip()
    if label.replace(" ", "") == "1/r":
        exact = 1 / params.r_exact
    elif m := _FRACTION_RE.match(label):
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise ParseError(f"zero denominator: {text!r}")
        exact = Fraction(num, den)
    else:
        exact = _parse_decimal(label)
    if not (0 <= exact <= 1):
        raise RangeError(f"x0 = {label} outside [0, 1]")
    return InitialCondition(x0_exact=exact, x0_float=float(exact), label=label)


def step(form: ExtensionForm, r: float, x: float) -> float:
    """Apply the map once using ``form``'s evaluation order."""
    return kernels._step_py(form.code, float(r), float(x))


def step_array(form: ExtensionForm, r, x) -> np.ndarray:
    """Elementwise :func:`step`; numpy ufuncs round every intermediate."""
    r = np.asarray(r, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    return kernels._step_py(form.code, r, x)


def iterate(form: ExtensionForm, params: MapParams, x0: InitialCondition, n: int) -> PseudoOrbit:
    if n < 0:
        raise ValueError("iteration count must be >= 0")
    values = np.empty(n + 1, dtype=np.float64)
    values[0] = x0.x0_float
    fault = kernels.iterate_into(form.code, params.r, values, RANGE_LO, RANGE_HI)
    if fault >= 0:
        raise RangeFault(int(fault), float(values[fault]), str(form))
    values.flags.writeable = False
    return PseudoOrbit(form=form, params=params, x0=x0, values=values)


def iterate_batch(form: ExtensionForm, r, x0, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Iterate many (r, x0) pairs; returns ``(orbits, fault_indices)``.

    ``orbits`` has shape ``(n + 1, k)``. Faulting columns are flagged, not
    raised, so one bad sample does not abort a sweep.
    """
    r = np.ascontiguousarray(r, dtype=np.float64)
    x0 = np.ascontiguousarray(x0, dtype=np.float64)
    if r.shape != x0.shape or r.ndim != 1:
        raise ValueError("r and x0 must be 1-D arrays of equal length")
    return kernels.iterate_batch(form.code, r, x0, int(n), RANGE_LO, RANGE_HI)


def fixed_points(params: MapParams) -> tuple[float, float]:
    """Return ``(0, 1 - 1/r)`` evaluated in binary64."""
    inv = 1.0 / params.r
    return 0.0, 1.0 - inv


def exact_step(r_exact: Fraction, x: Fraction) -> Fraction:
    return r_exact * x * (1 - x)
