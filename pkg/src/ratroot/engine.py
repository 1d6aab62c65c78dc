"""Construction of the iteration matrix and exact evaluation of its powers.

For parameters (n, k) the iteration matrix is M = I + S, where S is the
k-weighted cyclic shift: k in the top-right corner, ones on the first
subdiagonal, zeros elsewhere. S**n = k*I, so the span of I, S, ..., S**(n-1)
multiplies exactly like Z[x]/(x**n - k) with S playing x; applying M to a
column vector is multiplication by (1 + x).

Three power routes are kept on purpose. ``naive`` repeated multiplication is
the trusted oracle, ``binary`` squaring is the general fast path, and the
quotient-ring route (O(n^2) per multiply instead of O(n^3)) is the production
path used by :func:`apply_power`. They must agree exactly, always.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .core import Matrix, Params, ParamsMismatch, RingPoly, StateVector, ZeroVector


def companion_matrix(params: Params) -> Matrix:
    """Iteration matrix M: ones on diagonal and first subdiagonal, k top-right."""
    n, k = params.n, params.k
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1
    for i in range(1, n):
        rows[i][i - 1] = 1
    rows[0][n - 1] += k
    return Matrix(tuple(tuple(r) for r in rows))


def cyclic_matrix(params: Params) -> Matrix:
    """k-weighted cyclic shift S with S**n = k*I."""
    n, k = params.n, params.k
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    rows[0][n - 1] += k
    return Matrix(tuple(tuple(r) for r in rows))


def mat_pow(a: Matrix, t: int, method: str = "binary") -> Matrix:
    """a**t exactly; ``naive`` multiplies t-1 times, ``binary`` squares."""
    if t < 0:
        raise ValueError(f"exponent must be nonnegative, got {t}")
    if method == "naive":
        if t == 0:
            return Matrix.identity(a.n)
        acc = a
        for _ in range(t - 1):
            acc = acc * a
        return acc
    if method == "binary":
        acc = Matrix.identity(a.n)
        base = a
        while t:
            if t & 1:
                acc = acc * base
            t >>= 1
            if t:
                base = base * base
        return acc
    raise ValueError(f"unknown method {method!r}; expected 'naive' or 'binary'")


def ring_one(params: Params) -> RingPoly:
    return RingPoly((1,) + (0,) * (params.n - 1), params)


def ring_mul(a: RingPoly, b: RingPoly) -> RingPoly:
    """Product in Z[x]/(x**n - k): schoolbook multiply, fold x**m -> k*x**(m-n)."""
    if a.params != b.params:
        raise ParamsMismatch(f"operands built over {a.params} and {b.params}")
    n, k = a.params.n, a.params.k
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a.coeffs):
        if ai:
            for j, bj in enumerate(b.coeffs):
                prod[i + j] += ai * bj
    for m in range(2 * n - 2, n - 1, -1):
        prod[m - n] += k * prod[m]
    return RingPoly(tuple(prod[:n]), a.params)


def ring_pow_one_plus_x(params: Params, t: int) -> RingPoly:
    """(1 + x)**t in Z[x]/(x**n - k), by binary exponentiation.

    Coefficient i is entry i+1 of M**t applied to the first standard basis
    vector.
    """
    if t < 0:
        raise ValueError(f"exponent must be nonnegative, got {t}")
    base = RingPoly((1, 1) + (0,) * (params.n - 2), params)
    acc = ring_one(params)
    while t:
        if t & 1:
            acc = ring_mul(acc, base)
        t >>= 1
        if t:
            base = ring_mul(base, base)
    return acc


def apply_power(params: Params, t: int, r0: StateVector) -> StateVector:
    """Evolve r0 by t steps in one shot: M**t r0 via the quotient ring.

    Entry i of a state corresponds to the coefficient of x**(i-1), so the
    result is (1 + x)**t times the polynomial image of r0, mapped back.
    Raises ZeroVector if the result vanishes (singular M, even n with k=1).
    """
    if len(r0) != params.n:
        raise ValueError(f"state length {len(r0)} != n={params.n}")
    if t < 0:
        raise ValueError(f"exponent must be nonnegative, got {t}")
    pt = ring_mul(ring_pow_one_plus_x(params, t), RingPoly(r0.entries, params))
    if all(c == 0 for c in pt.coeffs):
        raise ZeroVector(t)
    return StateVector(pt.coeffs, t=t)


@dataclass(frozen=True)
class PowerBasisCoeffs:
    """Coefficients a with M**t = sum(a[i] * M**i for i < n)."""

    coeffs: tuple[int, ...]
    t: int
    params: Params

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) != self.params.n:
            raise ValueError(
                f"expected {self.params.n} coefficients, got {len(self.coeffs)}"
            )


def power_basis_coeffs(params: Params, t: int) -> PowerBasisCoeffs:
    """Expand M**t over the matrix-power basis I, M, ..., M**(n-1).

    Takes the ring coefficients b of (1 + x)**t and substitutes x = y - 1
    (M = I + S), an alternating binomial transform:

        a[m] = sum over i >= m of b[i] * C(i, m) * (-1)**(i - m).

    The result equals the remainder of y**t modulo the monic characteristic
    polynomial (y - 1)**n - k, the unique such expansion since M has n
    distinct eigenvalues.
    """
    b = ring_pow_one_plus_x(params, t).coeffs
    a = [0] * params.n
    for i, bi in enumerate(b):
        if bi:
            for m in range(i + 1):
                term = bi * comb(i, m)
                a[m] += -term if (i - m) & 1 else term
    return PowerBasisCoeffs(tuple(a), t, params)


def _charpoly_tail(params: Params) -> tuple[int, ...]:
    """Low n coefficients q[0..n-1] of the monic (y - 1)**n - k."""
    n = params.n
    q = [comb(n, i) * (-1 if (n - i) & 1 else 1) for i in range(n)]
    q[0] -= params.k
    return tuple(q)


def _basis_mul(a, b, params: Params) -> tuple[int, ...]:
    """Multiply two basis-coefficient vectors modulo the characteristic polynomial."""
    n = params.n
    tail = _charpoly_tail(params)
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for m in range(2 * n - 2, n - 1, -1):
        c = prod[m]
        if c:
            prod[m] = 0
            for i in range(n):
                prod[m - n + i] -= c * tail[i]
    return tuple(prod[:n])


def fib_power_chain(
    params: Params, chain_length: int
) -> list[tuple[int, PowerBasisCoeffs]]:
    """Exponents 2, 3, 5, 8, ... with basis coefficients composed pairwise.

    Entry i is M**F_i where F_i = F_{i-1} + F_{i-2}; each coefficient vector
    past the first two is the product of its two predecessors reduced in the
    power basis, never a fresh exponentiation.
    """
    if chain_length < 1:
        raise ValueError(f"chain length must be >= 1, got {chain_length}")
    chain = [(2, power_basis_coeffs(params, 2))]
    if chain_length >= 2:
        chain.append((3, power_basis_coeffs(params, 3)))
    while len(chain) < chain_length:
        (e2, c2), (e1, c1) = chain[-2], chain[-1]
        e = e1 + e2
        coeffs = _basis_mul(c1.coeffs, c2.coeffs, params)
        chain.append((e, PowerBasisCoeffs(coeffs, e, params)))
    return chain
