"""Exception hierarchy shared by every torusrank module."""


class TorusRankError(Exception):
    """Base class for all errors raised by torusrank."""


class DimensionError(TorusRankError, ValueError):
    """Shapes of the operands are incompatible."""


class PreconditionError(TorusRankError, ValueError):
    """An input violates the documented precondition of an operation."""


class NotUnimodularError(PreconditionError):
    """A matrix required to lie in GL_n(Z) has determinant other than +-1."""


class NotExtendableError(PreconditionError):
    """Columns cannot be completed to a basis of Z^n."""


class OutsideHypothesesError(PreconditionError):
    """A standalone type-H_n matrix satisfies none of the witness cases I/II/III."""


class FactorizationRefused(TorusRankError, ValueError):
    """Input exceeds the configured factorization size cap."""


class InternalConsistencyError(TorusRankError, RuntimeError):
    """A runtime re-verification failed. This always indicates a bug."""
