"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid (n, k, t), epsilon, probability or other configuration value."""


class ContractError(ValueError):
    """A precondition of an operation was violated by the caller."""


class ArithmeticOverflowError(OverflowError):
    """An exact integer does not fit the fixed-width type it must be handed to."""


class SamplingError(RuntimeError):
    """Rejection sampling exceeded its redraw cap."""


class MalformedDesignError(ValueError):
    """A design file could not be parsed.

    ``line`` is the 1-based line number of the offending line (0 when the
    problem is with the file as a whole, e.g. it is empty).
    """

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class ConstructionFailure(RuntimeError):
    """Phase II could not place a representative for every leave edge.

    Carries the leave edges that remained unplaced on the final attempt and
    the per-attempt counts, so callers can report them.
    """

    def __init__(self, message: str, blocked, blocked_per_retry, report=None):
        super().__init__(message)
        self.blocked = list(blocked)
        self.blocked_per_retry = list(blocked_per_retry)
        self.report = report
