"""
TAFT-CLEFT Exceptions

Every failure the library raises on purpose derives from a builtin
exception so callers can keep catching ``ValueError``/``RuntimeError``.
"""


class RingSpecError(ValueError):
    """Malformed ring description, or an invalid GF / quotient modulus."""


class NotAUnitError(ValueError):
    """An operation that needs a unit received a non-unit."""


class HypothesisError(ValueError):
    """The standing hypotheses on (R, N, q) fail."""


class PolynomialSyntaxError(ValueError):
    """A Z-symbol polynomial could not be parsed."""


class InvalidWitnessError(ValueError):
    """A pair (s, t) does not satisfy the compatibility equations."""


class ConfigError(ValueError):
    """Unknown or ill-typed configuration entry."""


class BudgetExceededError(RuntimeError):
    """Exhaustive work would exceed a configured budget."""


class VerificationError(AssertionError):
    """An internal consistency check failed; this indicates a bug."""
