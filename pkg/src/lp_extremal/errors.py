"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid user input: bad exponent, malformed data, mismatched shapes."""


class OracleLimitError(InputError):
    """A brute-force reference was asked to enumerate an oversized instance."""


class ConvergenceWarning(RuntimeWarning):
    """A solver stopped at its iteration budget without certifying its tolerance."""
