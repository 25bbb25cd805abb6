"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: input errors -> 2, budget -> 3,
hypothesis violations -> 4.
"""


class SatjacError(Exception):
    """Base class for every error raised by this package."""


class InputError(SatjacError, ValueError):
    """Malformed or out-of-range input."""


class PolySyntaxError(InputError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownVariableError(PolySyntaxError):
    pass


class ExponentOverflowError(PolySyntaxError):
    pass


class RingMismatchError(InputError):
    pass


class BudgetExceeded(SatjacError):
    """A Groebner computation hit its S-pair or degree cap."""


class HypothesisViolation(SatjacError):
    """The input breaks a standing hypothesis (homogeneity, isolated singularities)."""


class NonHomogeneousError(HypothesisViolation, InputError):
    pass


class NonIsolatedError(HypothesisViolation):
    pass


class DimensionMismatch(HypothesisViolation):
    """Ideal is not of the Krull dimension the operation requires."""


class InternalInconsistency(SatjacError, AssertionError):
    """An invariant that exact arithmetic guarantees was violated."""


class GenericityError(SatjacError):
    """Random forms stayed degenerate after all reseeding attempts."""
