"""Exception types shared across the audit library."""


class AuditError(Exception):
    """Base class for every error this package raises on purpose."""


class InputError(AuditError, ValueError):
    """Invalid input: malformed files, unknown names, out-of-range arguments."""


class DegenerateError(InputError):
    """Structurally valid input that is numerically degenerate.

    Covers all-zero importance weights, a zero pooled standard deviation,
    probabilities of exactly 0 or 1 fed to odds formatting, and ratios with
    an empty denominator.
    """


class SingularDesignError(InputError):
    """Regression design matrix is rank deficient or numerically singular."""


class InternalCheckError(AuditError):
    """An internal consistency assertion failed; indicates a bug, not bad input."""
