"""Exception types shared across the package."""


class BeliefDecisionError(Exception):
    """Base class for all errors raised by this package."""


class FrameMismatchError(BeliefDecisionError, ValueError):
    """Raised when an operation mixes objects defined over different frames."""


class FrameSizeError(BeliefDecisionError, ValueError):
    """Raised when a frame is empty or exceeds the supported size."""


class InvalidMassError(BeliefDecisionError, ValueError):
    """Raised when a mass assignment violates normalization or positivity."""


class NotABeliefFunctionError(BeliefDecisionError, ValueError):
    """Raised when a capacity fails the nonnegativity test under inversion."""


class SizeLimitError(BeliefDecisionError, RuntimeError):
    """Raised when an enumeration would exceed its configured cap."""


class UndefinedMeasureError(BeliefDecisionError, ValueError):
    """Raised when a measure is undefined for the given frame (e.g. size 1)."""


class SolverError(BeliefDecisionError, RuntimeError):
    """Raised when the linear-programming solver fails to terminate cleanly."""


class ValidationError(BeliefDecisionError, ValueError):
    """Raised when an input file or problem description fails validation."""
