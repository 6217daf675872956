"""Exception types shared across the toolkit."""


class AmeForgeError(Exception):
    """Base class for all toolkit errors."""


class NotPrimePower(AmeForgeError, ValueError):
    """Requested field order has two or more distinct prime factors."""


class FieldMismatch(AmeForgeError, ValueError):
    """Arithmetic attempted between elements of different fields."""


class DivisionByZero(AmeForgeError, ZeroDivisionError):
    """Division by, or inversion of, the zero element."""


class LengthMismatch(AmeForgeError, ValueError):
    """Words or vectors of unequal length where equal length is required."""


class TooFewWords(AmeForgeError, ValueError):
    """Operation needs at least two codewords."""


class InvalidStrength(AmeForgeError, ValueError):
    """Orthogonal-array strength outside 0..n."""


class IndexOutOfRange(AmeForgeError, IndexError):
    """Coordinate index outside the wordlength."""


class EmptyResult(AmeForgeError, ValueError):
    """Shortening removed every codeword."""


class RankDeficient(AmeForgeError, ValueError):
    """Generator matrix does not have full row rank."""


class DuplicateEvaluationPoint(AmeForgeError, ValueError):
    """Evaluation points of a GRS code must be pairwise distinct."""


class ZeroMultiplier(AmeForgeError, ValueError):
    """Column multipliers of a GRS code must be nonzero."""


class DimensionOutOfRange(AmeForgeError, ValueError):
    """Code dimension outside the admissible range."""


class NotAmeRelevantMds(AmeForgeError, ValueError):
    """Code is not an MDS code with the distance needed for a minimal-support state."""


class NonUniformSupport(AmeForgeError, ValueError):
    """State amplitudes do not have uniform magnitude."""


class WrongSupportSize(AmeForgeError, ValueError):
    """State support size differs from d^floor(n/2)."""


class BadSubset(AmeForgeError, ValueError):
    """Site subset contains duplicates or out-of-range indices."""


class VerificationFailed(AmeForgeError, ValueError):
    """A state that was required to verify as AME did not."""


class NotConstructible(AmeForgeError, ValueError):
    """No construction for the requested (n, d) pair.

    ``kind`` distinguishes refusals: "necessary-condition" (pair is excluded
    outright), "nonexistence" (pair passes the necessary condition but is
    known impossible), "no-construction" (unknown territory for this toolkit).
    """

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class InvalidParams(AmeForgeError, ValueError):
    """Malformed or out-of-contract arguments."""


class BudgetExceeded(AmeForgeError, RuntimeError):
    """Computation exceeded its budget; may carry a partial report."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class MalformedFile(AmeForgeError, ValueError):
    """File does not follow the documented text format."""
