"""Exception hierarchy.

Errors are grouped so the CLI can map them onto exit codes:
``InputError`` (degenerate or ill-posed input) exits 3, ``CheckFailed``
(an identity or structural check did not hold) exits 2.
"""


class PadeHyperlabError(Exception):
    """Base class for every error raised by this package."""


class InputError(PadeHyperlabError):
    """The input is degenerate, singular or outside an operation's domain."""


class CheckFailed(PadeHyperlabError):
    """A structural property that must hold was found violated."""


# numerics


class ZeroDenominator(InputError, ZeroDivisionError):
    pass


class MixedScalarKinds(InputError, TypeError):
    pass


class LengthMismatch(InputError, ValueError):
    pass


class AllZeroVectors(InputError, ValueError):
    pass


# linalg / condensation


class IndexOutOfBounds(InputError, IndexError):
    pass


class NotSquare(InputError, ValueError):
    pass


class BadSplit(InputError, ValueError):
    pass


class TooSmall(InputError, ValueError):
    pass


class SingularCoreMinor(InputError):
    """A window minor used as a divisor vanished (non-generic configuration)."""

    def __init__(self, message, window=None):
        super().__init__(message)
        self.window = window


# series


class InvalidLattice(InputError, ValueError):
    pass


class NonTerminating(InputError, ValueError):
    pass


class PoleBeforeTermination(InputError, ZeroDivisionError):
    def __init__(self, message, k=None, factor=None):
        super().__init__(message)
        self.k = k
        self.factor = factor


class A0Zero(InputError, ZeroDivisionError):
    pass


class BalancingViolated(InputError, ValueError):
    pass


class ExactUnsupported(InputError, TypeError):
    """A transcendental quantity was requested over exact rationals."""


# detformulas


class ZeroDenominatorEntry(InputError, ZeroDivisionError):
    pass


class PoleInDenominator(InputError, ZeroDivisionError):
    pass


class FactorizationViolated(InputError, ValueError):
    def __init__(self, message, indices=None):
        super().__init__(message)
        self.indices = indices


class InsufficientData(InputError, ValueError):
    pass


# pade


class PoleAtNode(InputError, ZeroDivisionError):
    pass


class ZeroWeight(InputError, ValueError):
    pass


class DegeneratePoints(InputError, ValueError):
    pass


class DegenerateSolution(InputError):
    pass


class PoleInConstant(InputError, ZeroDivisionError):
    pass


class PoleInL(InputError, ZeroDivisionError):
    pass


class AntiTriangularityViolated(CheckFailed):
    pass


class SpecError(PadeHyperlabError, ValueError):
    """A problem/solution document is malformed."""


class FamilyMismatch(InputError, ValueError):
    """A closed-form route was asked to solve a problem of another family."""
