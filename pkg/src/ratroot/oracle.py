"""Ground truth for accuracy claims, independent of the iteration machinery.

Everything here is scaled integer arithmetic: the n-th root of k is pinned
between consecutive integers at a power-of-ten scale, and candidate
fractions are judged by exact rational comparison against that bracket.
No floating point, so certificates hold at any digit count.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import Params

GUARD_DIGITS = 5  # bracket is kept this much finer than any tested threshold


def integer_nth_root(m: int, n: int) -> int:
    """floor(m**(1/n)) by pure-integer binary search."""
    if m < 0:
        raise ValueError(f"radicand must be nonnegative, got {m}")
    if n < 1:
        raise ValueError(f"root order must be >= 1, got {n}")
    if m < 2 or n == 1:
        return m
    hi = 1
    while hi**n <= m:
        hi <<= 1
    lo = hi >> 1
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if mid**n <= m:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class RootBracket:
    """Certified interval lo/10**d <= k**(1/n) < (lo+1)/10**d."""

    params: Params
    digits: int
    lo: int

    @property
    def scale(self) -> int:
        return 10**self.digits

    @property
    def low(self) -> Fraction:
        return Fraction(self.lo, self.scale)

    @property
    def high(self) -> Fraction:
        return Fraction(self.lo + 1, self.scale)

    @property
    def midpoint(self) -> Fraction:
        return Fraction(2 * self.lo + 1, 2 * self.scale)


@lru_cache(maxsize=None)
def nth_root_bracket(params: Params, d: int) -> RootBracket:
    """Width-10**(-d) bracket around k**(1/n), certified by construction."""
    if d < 0:
        raise ValueError(f"digit count must be nonnegative, got {d}")
    lo = integer_nth_root(params.k * 10 ** (params.n * d), params.n)
    return RootBracket(params, d, lo)


def digits_of_accuracy(candidate: Fraction, params: Params, cap: int) -> int:
    """Largest d <= cap with |candidate - k**(1/n)| < 10**(-d), else 0.

    Decided exactly: the true root lies inside a bracket GUARD_DIGITS finer
    than any tested threshold, and the candidate's distance to the farther
    bracket endpoint bounds its distance to the root from above. The result
    is therefore a certificate, marginally conservative (by at most the
    bracket width), and saturates at cap for exact roots.
    """
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    candidate = Fraction(candidate)
    bracket = nth_root_bracket(params, cap + GUARD_DIGITS)
    err = max(abs(candidate - bracket.low), abs(candidate - bracket.high))
    num, den = err.numerator, err.denominator
    d = 0
    while d < cap and num * 10 ** (d + 1) < den:
        d += 1
    return d


def log10_error_bound(candidate: Fraction, params: Params, ref_digits: int) -> float:
    """log10 of a certified upper bound on |candidate - k**(1/n)|.

    The bound is the distance to the farther endpoint of the ref_digits
    bracket, so it is only a sharp error measure while the true error is
    well above the bracket width 10**(-ref_digits). Used for rate fits.
    """
    bracket = nth_root_bracket(params, ref_digits)
    err = max(abs(candidate - bracket.low), abs(candidate - bracket.high))
    return math.log10(err.numerator) - math.log10(err.denominator)
