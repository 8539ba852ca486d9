"""Exception and warning types raised across the package."""


class CFError(Exception):
    """Base class for every error raised by rrcf."""


class DomainError(CFError, ValueError):
    """An argument lies outside the region where an operation is defined."""


class NonConvergence(CFError, ArithmeticError):
    """A series, product or continued fraction hit its term/depth guard."""


class UnsupportedForm(CFError, ValueError):
    """The requested representation does not exist for this kind."""


class NoReciprocity(CFError, ValueError):
    """The kind and the reciprocity family do not belong together."""


class UnknownFamily(CFError, KeyError):
    pass


class UnknownId(CFError, KeyError):
    pass


class PoleError(CFError, ZeroDivisionError):
    pass


class ComplexRoots(CFError, ValueError):
    pass


class PrecisionExhausted(CFError, ArithmeticError):
    """Required working precision exceeds the configured ceiling."""


class NegativeRootWarning(UserWarning):
    """2rc > 1: the roots are still valid but one of them is negative."""
