"""Exception hierarchy for quiver Hecke computations."""


class KLRError(Exception):
    """Base class for every error raised by quiver_hecke."""


class NotGCM(KLRError):
    """Matrix is not a generalized Cartan matrix."""


class NotSymmetrizable(KLRError):
    """Symmetrizers do not symmetrize the Cartan matrix."""


class AssociatorInconsistent(KLRError):
    """A grade associator violates lambda(a,b) + lambda(b,a) = -2(a,b)."""


class WeightMismatch(KLRError):
    """Operands live over different weights, or an index exceeds the height."""


class InternalRewriteFuel(KLRError):
    """The rewriting fuel counter ran out; indicates a rewriting bug."""


class AlgebraMismatch(KLRError):
    """Modules were built over different algebras."""


class CeilingTooSmall(KLRError):
    """A truncation window is too short to hold one generator-degree margin."""


class NotLambdaDefinable(KLRError):
    """HOM(M∘N, N∘M) is not one-dimensional."""

    def __init__(self, message: str, dimension: int = -1):
        super().__init__(message)
        self.dimension = dimension


class TruncationExhausted(KLRError):
    """A z-adic order reached the truncation depth; deepen and retry."""


class NotScalar(KLRError):
    """A composite of R-matrices is not a scalar multiple of the identity."""


class NotRealizable(KLRError):
    """A required affinization or R-matrix is not in the catalogue."""


class NotStabilized(KLRError):
    """Localization Hom dimensions did not stabilize before the level cap."""

    def __init__(self, message: str, dims: tuple = ()):
        super().__init__(message)
        self.dims = dims


class HypothesisFailed(KLRError):
    """A precondition of a construction does not hold."""


class UnknownGenerator(KLRError):
    """A Grothendieck class lies outside the catalogued span."""


class ParseError(KLRError):
    """Malformed element or module expression."""

    def __init__(self, message: str, position: int = -1):
        super().__init__(f"{message} (at position {position})" if position >= 0 else message)
        self.position = position


def add_note(err: BaseException, note: str) -> None:
    """Attach context to an exception when the interpreter supports notes."""
    if hasattr(err, "add_note"):
        err.add_note(note)
