"""Exception types shared across the package."""

from __future__ import annotations


class ResonanceError(Exception):
    """Base class for errors raised by this package."""


class AmbientMismatch(ResonanceError, ValueError):
    """Two subspaces live in spaces of different dimension."""


class DependentVectors(ResonanceError, ValueError):
    """Vectors that were required to be linearly independent are not."""


class BadPrime(ResonanceError, ValueError):
    """Modulus is not prime or divides a denominator of the matrix."""


class GuardExceeded(ResonanceError):
    """A size guard was hit; pass ``force=True`` to override."""


class CrossCheckFailure(ResonanceError):
    """Two independent computations of the same quantity disagree.

    This signals a bug in the implementation, never bad user input.
    """


class NonSeparableComponent(ResonanceError, ValueError):
    """A component handed to the decomposition check is not separable."""

    def __init__(self, index: int, witness=None):
        super().__init__(f"component #{index} is not separable")
        self.index = index
        self.witness = witness


class NonIntegral(ResonanceError, ArithmeticError):
    """A closed formula that must produce an integer did not."""
