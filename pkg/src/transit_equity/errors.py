"""Exception hierarchy shared across the toolkit.

The CLI maps these onto exit codes: input problems exit 2, degenerate
data (distributions that cannot be normalized) exit 1.
"""


class TransitEquityError(Exception):
    """Base class for all errors raised by this package."""


class InputDataError(TransitEquityError):
    """A required input is missing, malformed, or internally inconsistent."""


class DegenerateDataError(TransitEquityError):
    """Data is structurally valid but degenerate (e.g. an all-zero score
    distribution, for which no Lorenz curve exists)."""
