"""Exception hierarchy shared by all entcast modules."""


class EntcastError(ValueError):
    """Base class for all structured errors raised by entcast."""


class DimensionError(EntcastError):
    """Operand shapes or tensor-factor dimensions do not agree."""


class NotHermitianError(EntcastError):
    """A matrix expected to be Hermitian is not (within tolerance)."""


class NormalizationError(EntcastError):
    """A state or coefficient pair is not normalized; nothing is renormalized silently."""


class LabelError(EntcastError):
    """Duplicate, missing or unknown party labels."""


class ZeroProbabilityError(EntcastError):
    """A measurement outcome with vanishing probability was requested."""


class ParameterError(EntcastError):
    """A physical parameter (reflectivity, cloner asymmetry, ...) is out of range."""
