class SolBravaisError(Exception):
    """Base class for library errors."""


class InvalidParameter(SolBravaisError, ValueError):
    pass


class ContextMismatch(SolBravaisError, ValueError):
    pass


class NotALatticeParameter(InvalidParameter):
    pass


class DegenerateBasis(InvalidParameter):
    pass


class NotRegular(SolBravaisError, ValueError):
    """Raised when a base matrix does not conjugate to an integral Phi."""


class IsotropicLattice(SolBravaisError, ValueError):
    def __init__(self, message: str, witness: tuple[int, int], axis: str):
        super().__init__(message)
        self.witness = witness
        self.axis = axis


class ValidationError(SolBravaisError, ValueError):
    def __init__(self, message: str, invariant: str = ""):
        super().__init__(message)
        self.invariant = invariant


class NotApplicable(SolBravaisError):
    pass


class Unrealizable(SolBravaisError):
    def __init__(self, label: str, reason: str):
        super().__init__(f"unrealizable: {reason}")
        self.label = label
        self.reason = reason


class NotEquivalent(SolBravaisError):
    pass


class InconsistentLattice(SolBravaisError, AssertionError):
    """A lattice hit a branch the classification theory rules out."""
