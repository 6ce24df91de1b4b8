"""Exception hierarchy.

Everything a caller can provoke with bad input derives from
:class:`InputError` (a ``ValueError``); exhausting a configured resource
raises :class:`ResourceLimitError`. The CLI maps these onto exit codes 1
and 2.
"""


class CableCosmeticError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CableCosmeticError, ValueError):
    """The caller supplied something malformed or out of contract."""


class InvalidSlopeError(InputError):
    pass


class InvalidSubstitutionError(InputError):
    pass


class NotAnAlexanderPolynomialError(InputError):
    pass


class ParseError(InputError):
    pass


class MultiComponentError(InputError):
    """A diagram or braid closure has more than one component."""


class CableParameterError(InputError):
    pass


class MissingAttributeError(InputError):
    """A leaf knot lacks the data (class, diagram) an operation needs."""


class UnannotatedDescriptorError(InputError):
    pass


class InvalidQueryError(InputError):
    pass


class InfiniteSlopeError(InputError):
    """The slope is 1/0; the knot complement theorem handles it, not the classifier."""


class SlopesEqualError(InvalidQueryError):
    """r and -r coincide (r = 0), so there is no pair to compare."""


class NotACableError(InputError):
    pass


class UnderdeterminedFitError(InputError):
    """The sample does not pin down the affine model (singular design)."""


class ResourceLimitError(CableCosmeticError):
    def __init__(self, message, crossings=None, cap=None):
        super().__init__(message)
        self.crossings = crossings
        self.cap = cap


class ModelViolationError(CableCosmeticError):
    """An exact affine fit left a nonzero residual."""

    def __init__(self, message, fit=None):
        super().__init__(message)
        self.fit = fit
