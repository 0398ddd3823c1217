"""Two-pseudo-orbit lower bound error and intermittency checks for the logistic map."""

from .errors import (
    BudgetExceeded,
    DomainError,
    MismatchError,
    ParseError,
    RangeError,
    RangeFault,
    SameFormError,
)
from .intermittency import (
    IntermittencyReport,
    Phase,
    PhaseSegment,
    Verdict,
    build_report,
    classify_phases,
)
from .lbe import DivergenceSeries, lower_bound_error, max_reliable_iteration, significant_digits
from .mapcore import (
    ExtensionForm,
    FormA,
    FormB,
    InitialCondition,
    MapParams,
    PseudoOrbit,
    fixed_points,
    iterate,
    make_params,
    parse_initial_condition,
    step,
)
from .oracle import ExactOrbit, TrueErrorSeries, exact_orbit, true_errors, validate_lbe
from .pipeline import analyze

__version__ = "0.1.0"
