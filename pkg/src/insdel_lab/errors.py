"""Exception types shared across the package."""

from __future__ import annotations


class InsdelLabError(Exception):
    """Base class for all package errors."""


class FieldError(InsdelLabError, ValueError):
    """Invalid field parameters (non-prime characteristic, reducible modulus, ...)."""


class FieldMismatchError(InsdelLabError, ValueError):
    """Operands belong to different fields."""


class DimensionError(InsdelLabError, ValueError):
    """Shapes or lengths do not agree."""


class CodeError(InsdelLabError, ValueError):
    """Invalid code construction or a vector that is not a codeword."""


class CodeFileError(InsdelLabError, ValueError):
    """Malformed code or permutation file."""


class GuardExceeded(InsdelLabError, RuntimeError):
    """An exhaustive enumeration would exceed its configured guard."""


class BudgetExceeded(GuardExceeded):
    """A search would exceed its evaluation budget."""


class SoundnessViolation(InsdelLabError, RuntimeError):
    """An applicable upper bound came out below the exact insdel distance."""
