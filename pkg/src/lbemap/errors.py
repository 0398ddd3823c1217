"""Exception types raised across lbemap."""

from __future__ import annotations


class LbeMapError(Exception):
    """Base class for all lbemap errors."""


class ParseError(LbeMapError, ValueError):
    """Text could not be parsed as a parameter or initial condition."""


class RangeError(LbeMapError, ValueError):
    """A parsed value lies outside its admissible interval."""


class DomainError(LbeMapError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class MismatchError(LbeMapError, ValueError):
    """Inputs that must describe the same run do not agree."""


class SameFormError(LbeMapError, ValueError):
    """Two pseudo-orbits were produced by the same extension form."""


class RangeFault(LbeMapError, ArithmeticError):
    """An iterate left the unit interval (beyond the rounding slack).

    ``index`` is the first offending iteration and ``value`` the iterate.
    """

    def __init__(self, index: int, value: float, form: str = ""):
        self.index = index
        self.value = value
        self.form = form
        where = f" ({form})" if form else ""
        super().__init__(f"iterate {index}{where} left the unit interval: {value!r}")


class BudgetExceeded(LbeMapError, RuntimeError):
    """Exact orbit outgrew the configured denominator digit budget.

    ``last_index`` is the last iteration that completed within budget and
    ``partial`` holds the exact orbit up to that index.
    """

    def __init__(self, last_index: int, budget: int, partial=None):
        self.last_index = last_index
        self.budget = budget
        self.partial = partial
        super().__init__(
            f"exact orbit exceeded {budget} denominator digits after index {last_index}"
        )
