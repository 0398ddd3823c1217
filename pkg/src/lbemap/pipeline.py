"""One scenario end to end: both pseudo-orbits, lower bound error,
phase segmentation, verdict and the exact-oracle check."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from . import intermittency, lbe, oracle
from .errors import BudgetExceeded
from .mapcore import FormA, FormB, InitialCondition, MapParams, PseudoOrbit, fixed_points, iterate

log = logging.getLogger(__name__)

PAPER_R = "3.8283"
PAPER_X0 = ("0.3", "1/r", "300/341", "1904/6365")


@dataclass(frozen=True)
class AnalysisSettings:
    iterations: int = 5000
    digit_floor: float = lbe.DEFAULT_DIGIT_FLOOR
    eps: float = intermittency.DEFAULT_EPS
    laminar_len: int = intermittency.DEFAULT_MIN_LEN
    period: int = intermittency.DEFAULT_PERIOD
    oracle_horizon: int = oracle.DEFAULT_HORIZON
    digit_budget: int = oracle.DEFAULT_DIGIT_BUDGET


@dataclass(frozen=True, eq=False)
class ScenarioResult:
    params: MapParams
    x0: InitialCondition
    x_star: float
    orbit_a: PseudoOrbit
    orbit_b: PseudoOrbit
    series: lbe.DivergenceSeries
    segments_a: intermittency.Segmentation
    segments_b: intermittency.Segmentation
    report: intermittency.IntermittencyReport
    exact: Optional[oracle.ExactOrbit]
    errors: Optional[oracle.TrueErrorSeries]
    validation: Optional[oracle.ValidationReport]
    requested_horizon: int

    @property
    def oracle_ok(self) -> bool:
        return self.validation is None or self.validation.ok

    @property
    def oracle_truncated(self) -> bool:
        reached = -1 if self.validation is None else self.validation.horizon
        return reached < self.requested_horizon


def check_oracle(params, x0, orbit_a, orbit_b, series, horizon, digit_budget):
    """Exact orbit, true errors and the lower-bound check up to ``horizon``.

    A blown digit budget shrinks the horizon to the last completed index.
    """
    try:
        exact = oracle.exact_orbit(params, x0, horizon, digit_budget)
    except BudgetExceeded as exc:
        log.warning("x0=%s: %s; validating indices 0..%d only", x0.label, exc, exc.last_index)
        exact = exc.partial
    errors = oracle.true_errors(orbit_a, orbit_b, exact)
    return exact, errors, oracle.validate_lbe(series, errors)


def analyze(params: MapParams, x0: InitialCondition, settings: AnalysisSettings = AnalysisSettings()) -> ScenarioResult:
    """Run every stage for one initial condition.

    Raises :class:`~lbemap.errors.RangeFault` if either orbit escapes [0, 1].
    """
    n = settings.iterations
    orbit_a = iterate(FormA, params, x0, n)
    orbit_b = iterate(FormB, params, x0, n)
    series = lbe.lower_bound_error(orbit_a, orbit_b, settings.digit_floor)
    x_star = fixed_points(params)[1]
    knobs = dict(eps=settings.eps, min_len=settings.laminar_len, period=settings.period)
    seg_a = intermittency.classify_phases(orbit_a, x_star, **knobs)
    seg_b = intermittency.classify_phases(orbit_b, x_star, **knobs)
    report = intermittency.build_report(seg_a, seg_b, series)
    horizon = min(settings.oracle_horizon, n)
    exact = errors = validation = None
    if horizon >= 0:
        exact, errors, validation = check_oracle(
            params, x0, orbit_a, orbit_b, series, horizon, settings.digit_budget
        )
    return ScenarioResult(
        params=params,
        x0=x0,
        x_star=x_star,
        orbit_a=orbit_a,
        orbit_b=orbit_b,
        series=series,
        segments_a=seg_a,
        segments_b=seg_b,
        report=report,
        exact=exact,
        errors=errors,
        validation=validation,
        requested_horizon=horizon,
    )
