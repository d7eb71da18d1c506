"""Exception types shared across the toolkit."""


class QVermaError(Exception):
    """Base class for all toolkit errors."""


class DenominatorVanishes(QVermaError, ArithmeticError):
    """A denominator evaluated to zero at a sample point (non-generic point)."""


class TruncationLeak(QVermaError, ValueError):
    """An operator mapped a basis vector outside the requested truncation."""


class SingularBasis(QVermaError, ArithmeticError):
    """A supposed basis turned out linearly dependent (non-generic parameters)."""


class IndexOutOfRange(QVermaError, ValueError):
    """A grid/family index lies outside its admissible range."""


class DomainError(QVermaError, ValueError):
    """A polynomial does not belong to the required subspace (e.g. C[t,tX])."""


class ParseError(QVermaError, ValueError):
    """Malformed expression input."""
