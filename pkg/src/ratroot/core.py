"""Exact-arithmetic domain types shared by every other module.

Arbitrary-precision integers are plain Python ``int``; reduced fractions are
``fractions.Fraction`` (always canonical: positive denominator, gcd 1).
Everything here is immutable and hashable, so values can be shared freely
between threads or processes.
"""
from __future__ import annotations

from dataclasses import dataclass


class ParamsMismatch(ValueError):
    """Two ring elements built over different (n, k) were combined."""


class ZeroVector(ArithmeticError):
    """The evolving state collapsed to the all-zero vector.

    Only possible when the iteration matrix is singular (even n with k = 1).
    """

    def __init__(self, t: int):
        self.t = t
        super().__init__(f"state became the zero vector at t={t}")


class DivisionByZero(ZeroDivisionError):
    """An adjacent-entry ratio was requested where the lower entry is 0."""

    def __init__(self, entries, index: int, t: int | None = None):
        self.entries = tuple(entries)
        self.index = index
        self.t = t
        where = f" at t={t}" if t is not None else ""
        super().__init__(
            f"entry {index + 1} of state {self.entries}{where} is zero; "
            f"ratio {index}/{index + 1} is undefined"
        )


class PoleEncountered(ArithmeticError):
    """The scalar map hit a zero denominator (r**(n-1) + 1 = 0)."""

    def __init__(self, t: int, value):
        self.t = t
        self.value = value
        super().__init__(f"scalar map pole at step {t}: r = {value}")


class DegenerateRate(ArithmeticError):
    """All subdominant eigenvalues vanish; convergence is one exact step."""


class IllConditioned(ArithmeticError):
    """Eigenvector decomposition failed the residual bound."""

    def __init__(self, residual: float, cond: float):
        self.residual = residual
        self.cond = cond
        super().__init__(
            f"decomposition residual {residual:.3e} exceeds bound "
            f"(condition estimate {cond:.3e})"
        )


class NonConvergence(RuntimeError):
    """Step doubling exceeded the configured ceiling; indicates a bug."""


@dataclass(frozen=True)
class Params:
    """Problem instance: approximate the n-th root of k."""

    n: int
    k: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"root order n must be an integer >= 2, got {self.n!r}")
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"radicand k must be an integer >= 1, got {self.k!r}")


@dataclass(frozen=True)
class StateVector:
    """Exact integer state at time t, entries listed top to bottom."""

    entries: tuple[int, ...]
    t: int = 0

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise ValueError("state vector must not be empty")
        if all(e == 0 for e in self.entries):
            raise ValueError("state vector must have at least one nonzero entry")
        if self.t < 0:
            raise ValueError(f"time index must be nonnegative, got {self.t}")

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Matrix:
    """Immutable square matrix of exact integers, row-major."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square and nonempty")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_dims(other)
        return Matrix(
            tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows))
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_dims(other)
        return Matrix(
            tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows))
        )

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._check_dims(other)
        cols = tuple(zip(*other.rows))
        return Matrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.rows)
        )

    def scale(self, c: int) -> "Matrix":
        return Matrix(tuple(tuple(c * a for a in row) for row in self.rows))

    def apply(self, entries) -> tuple[int, ...]:
        """Matrix-vector product on a plain sequence of ints."""
        if len(entries) != self.n:
            raise ValueError(f"vector length {len(entries)} != matrix size {self.n}")
        return tuple(sum(a * x for a, x in zip(row, entries)) for row in self.rows)

    def _check_dims(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")


@dataclass(frozen=True)
class RingPoly:
    """Integer polynomial of degree < n in the quotient ring Z[x]/(x**n - k).

    ``coeffs[i]`` is the coefficient of x**i; exactly n coefficients are
    stored (zero-padded), with the reduction x**n = k already applied.
    """

    coeffs: tuple[int, ...]
    params: Params

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) != self.params.n:
            raise ValueError(
                f"expected {self.params.n} coefficients, got {len(self.coeffs)}"
            )
