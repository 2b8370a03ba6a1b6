"""korosum: exponential sums e(a * b^n / m) with exact phases, the explicit
recursive bound system with certified constants, and applications to digit
statistics of rationals and normal-number constructions."""

from .numtheory import PrimeSet

__version__ = "0.1.0"

__all__ = ["PrimeSet", "__version__"]
