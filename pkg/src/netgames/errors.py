"""Exception taxonomy shared across the package."""


class NetgamesError(Exception):
    """Base class for all package errors."""


class ShapeError(NetgamesError):
    """Inputs have inconsistent or unusable dimensions."""


class InvalidParameterError(NetgamesError):
    """A parameter is outside its admissible range (tolerances, weights, costs)."""


class CapacityError(NetgamesError):
    """Problem size exceeds a hard enumeration or output cap."""


class BudgetError(NetgamesError):
    """An iteration budget (e.g. pivot count, restart count) was exhausted."""


class SingularBlockError(NetgamesError):
    """A block that must be eliminated is singular or numerically unusable.

    Carries the condition estimate that triggered the failure.
    """

    def __init__(self, message, cond=None):
        super().__init__(message)
        self.cond = cond


class DegeneratePivotError(NetgamesError):
    """Complementary pivoting hit a pivot element too small to divide by."""


class InfeasibleError(NetgamesError):
    """No feasible output exists (e.g. requested community size unreachable)."""


class ParseError(NetgamesError):
    """An input file is malformed beyond the tolerated error budget."""

    def __init__(self, message, bad_rows=()):
        super().__init__(message)
        self.bad_rows = tuple(bad_rows)


class InternalConsistencyError(NetgamesError):
    """Two results that must mathematically agree disagreed.

    Raised instead of silently returning, so systematic numerical trouble
    surfaces loudly.
    """
