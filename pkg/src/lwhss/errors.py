"""Exception types shared across the package."""


class LwhssError(Exception):
    """Base class for all package-specific errors."""


class FieldMismatch(LwhssError, ValueError):
    """Operands live in different fields."""


class DivisionByZero(LwhssError, ZeroDivisionError):
    """Division by, or inversion of, the zero element."""


class FieldTooLarge(LwhssError, ValueError):
    """Field order exceeds the supported bound of 2**16."""


class LengthMismatch(LwhssError, ValueError):
    """Vector or matrix dimensions do not line up."""


class NotSquare(LwhssError, ValueError):
    """A square matrix was required."""


class EnumerationTooLarge(LwhssError):
    """A brute-force enumeration would exceed its declared budget."""


class TooLargeForExhaustive(LwhssError):
    """Exhaustive checking would exceed its declared budget."""


class SearchTooLarge(LwhssError):
    """An exhaustive search space exceeds its declared budget."""


class ParamsExceedMdsBound(LwhssError, ValueError):
    """Requested MDS dimensions are outside the constructible range."""


class NotMds(LwhssError, ValueError):
    """Matrix is not a generator of an MDS code."""


class NotTn(LwhssError, ValueError):
    """Matrix is not totally nonsingular."""


class NotBlockTn(LwhssError, ValueError):
    """Block array is not block totally nonsingular."""


class LabelweightTooSmall(LwhssError, ValueError):
    """Code labelweight is below the threshold the construction needs."""


class InfeasibleParams(LwhssError, ValueError):
    """Scheme parameters violate a feasibility constraint."""


class ThresholdOutOfRange(LwhssError, ValueError):
    """Privacy threshold t must satisfy 1 <= t < s."""


class SystemInfeasible(LwhssError):
    """The evaluation synthesis system has no solution."""


class WrongServer(LwhssError, ValueError):
    """Share bundle belongs to a different server."""


class MissingShares(LwhssError, ValueError):
    """A required share or output share is absent."""


class DegreeTooHigh(LwhssError, ValueError):
    """Polynomial degree exceeds the scheme's degree bound."""


class SchemeHashMismatch(LwhssError, ValueError):
    """File was produced for a different scheme."""
