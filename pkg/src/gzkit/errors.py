"""Exception hierarchy. Every error carries a machine-readable ``tag``."""


class GZError(Exception):
    tag = "GZ_ERROR"

    def __init__(self, message=""):
        super().__init__(message)
        self.message = message

    def __str__(self):
        return f"{self.tag}: {self.message}" if self.message else self.tag


class NonSymmetricError(GZError):
    tag = "NON_SYMMETRIC"


class ShapeMismatchError(GZError):
    tag = "SHAPE_MISMATCH"


class UnsupportedPairError(GZError):
    tag = "UNSUPPORTED_PAIR"


class UnsupportedGroupError(GZError):
    tag = "UNSUPPORTED_GROUP"


class NotInterlacingError(GZError):
    tag = "NOT_INTERLACING"


class NegativeRadicandError(GZError):
    tag = "NEGATIVE_RADICAND"


class NotRegularError(GZError):
    tag = "NOT_REGULAR"


class DegenerateLevelError(GZError):
    tag = "DEGENERATE_LEVEL"


class DimMismatchError(GZError):
    tag = "DIM_MISMATCH"


class UnboundedError(GZError):
    tag = "UNBOUNDED"


class DimTooLargeError(GZError):
    tag = "DIM_TOO_LARGE"


class DegenerateDiagonalError(GZError):
    tag = "DEGENERATE_DIAGONAL"


class InvalidTriangulationError(GZError):
    tag = "INVALID_TRIANGULATION"


class EmptyModuliError(GZError):
    tag = "EMPTY_MODULI"


class SchemaError(GZError):
    tag = "SCHEMA"
