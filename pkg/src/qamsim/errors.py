"""Exception taxonomy shared by all qamsim modules.

Every domain error derives from QamError so callers (notably the CLI) can
map the whole family to a single "data error" exit path while still being
able to match specific failures.
"""


class QamError(Exception):
    """Base class for all qamsim domain errors."""


class DimensionError(QamError):
    """Operands live in spaces of different dimension."""


class ZeroVectorError(QamError):
    """A vector with (numerically) zero norm where a direction is required."""


class NormalizationError(QamError):
    """A state that must be unit norm is not, beyond tolerance."""


class FieldError(QamError):
    """REAL-field data carries nonzero imaginary parts."""


class BasisError(QamError):
    """A measurement basis violates orthonormality or size constraints."""


class OrthogonalityError(QamError):
    """Single-system sampled recognition requires mutually orthogonal patterns."""


class InsufficientCopiesError(QamError):
    """Multi-copy recognition needs at least one copy per filter."""


class AllDegenerateError(QamError):
    """Every input image was linearly dependent or numerically zero."""


class OutOfSpanError(QamError):
    """The input has essentially no component inside the stored subspace."""


class BankError(QamError):
    """A pattern bank violates its construction invariants."""


class FormatError(QamError):
    """A file (PGM or qamsim text format) is malformed or truncated."""


class RangeError(QamError):
    """A pixel value lies outside [0, maxval]."""
