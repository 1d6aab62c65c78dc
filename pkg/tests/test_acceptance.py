"""Acceptance suite: every exit criterion at its stated tolerance.

Each criterion prints one ``ACCEPTANCE <id>: PASS|FAIL`` line (visible with
``pytest -s``). Tolerances are pinned here, not calibrated elsewhere.

Known red: criterion C6 for (n, k) = (5, 7). The required 40 certified
digits at t = 400 exceed what the method itself can deliver: the spectral
ratio for (5, 7) is rho = 0.81686, i.e. 0.08785 digits per step, which
bounds t = 400 at about 35 digits (the exact run certifies exactly 35, on
every ratio index). The stated target is kept rather than weakened; see
the C5 rate check, which the same trajectory passes.
"""
import math
import random
from contextlib import contextmanager
from fractions import Fraction

import pytest

from ratroot.core import Matrix, Params, PoleEncountered, StateVector, ZeroVector
from ratroot.engine import (
    apply_power,
    companion_matrix,
    mat_pow,
    power_basis_coeffs,
)
from ratroot.oracle import (
    digits_of_accuracy,
    integer_nth_root,
    log10_error_bound,
    nth_root_bracket,
)
from ratroot.recursion import iterate_linear, iterate_scalar_map, ratio
from ratroot.spectral import convergence_rate, decompose, eigenvalues
from ratroot.cli import build_table


@contextmanager
def reporting(criterion: str):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {criterion}: FAIL")
        raise
    print(f"ACCEPTANCE {criterion}: PASS")


def ones(n: int) -> StateVector:
    return StateVector((1,) * n)


def test_c1_opening_table_reproduction():
    # fraction column of table(2, 2, 0..5) is exact; zero tolerance
    with reporting("C1 table-reproduction"):
        record = build_table(Params(2, 2), 0, 5, 1)
        got = [row[1] for row in record.rows]
        assert got == ["1/1", "3/2", "7/5", "17/12", "41/29", "99/70"]


def test_c2_cayley_hamilton_identity():
    # (M - I)**n = k*I exactly over the full grid
    with reporting("C2 cayley-hamilton"):
        for n in range(2, 9):
            for k in (1, 2, 3, 5, 10, 16):
                m = companion_matrix(Params(n, k))
                got = mat_pow(m - Matrix.identity(n), n)
                assert got == Matrix.identity(n).scale(k), (n, k)


def test_c3_power_basis_coefficient_chain():
    # exponents 2, 3, 5 expand with polynomial-in-k coefficients; exact
    with reporting("C3 coefficient-chain"):
        for k in (2, 3, 7):
            params = Params(2, k)
            assert power_basis_coeffs(params, 2).coeffs == (k - 1, 2)
            assert power_basis_coeffs(params, 3).coeffs == (2 * (k - 1), k + 3)
            assert power_basis_coeffs(params, 5).coeffs == (
                4 * (k**2 - 1),
                k**2 + 10 * k + 5,
            )


def test_c4_engine_agreement_on_random_cases():
    # naive, binary, and ring powers agree exactly on 200 random cases
    with reporting("C4 engine-agreement"):
        rng = random.Random(74207281)
        cases = 0
        while cases < 200:
            n = rng.randint(2, 6)
            k = rng.randint(1, 20)
            t = rng.randint(0, 50)
            entries = tuple(rng.randint(-9, 9) for _ in range(n))
            if all(e == 0 for e in entries):
                continue
            params = Params(n, k)
            try:
                via_ring = apply_power(params, t, StateVector(entries)).entries
            except ZeroVector:
                continue  # singular matrix annihilated this start; excluded
            m = companion_matrix(params)
            assert via_ring == mat_pow(m, t, method="naive").apply(entries), (n, k, t)
            assert via_ring == mat_pow(m, t, method="binary").apply(entries), (n, k, t)
            cases += 1


def test_c5_rate_law_square_root_slope():
    # measured digits-per-step over t in [50, 150] within 5% of the closed form
    with reporting("C5 rate-law (2,2)"):
        params = Params(2, 2)
        traj = iterate_linear(params, ones(2), 150)
        e50 = log10_error_bound(ratio(traj.states[50], 1), params, 160)
        e150 = log10_error_bound(ratio(traj.states[150], 1), params, 160)
        measured = (e50 - e150) / 100
        expected = -math.log10(3 - 2 * math.sqrt(2))
        assert abs(measured - expected) <= 0.05 * expected, (measured, expected)


@pytest.mark.parametrize("n,k", [(3, 2), (5, 7)])
def test_c5_rate_law_geometric_mean(n, k):
    # per-step error ratio over a 100-step window within 10% of spectral rho
    with reporting(f"C5 rate-law ({n},{k})"):
        params = Params(n, k)
        rho, _ = convergence_rate(params)
        traj = iterate_linear(params, ones(n), 150)
        e50 = log10_error_bound(ratio(traj.states[50], 1), params, 90)
        e150 = log10_error_bound(ratio(traj.states[150], 1), params, 90)
        measured = 10 ** ((e150 - e50) / 100)
        assert abs(measured - rho) <= 0.10 * rho, (measured, rho)


@pytest.mark.parametrize("n,k", [(2, 2), (3, 2), (3, 17), (5, 7)])
def test_c6_certified_convergence_at_t400(n, k):
    # every adjacent ratio certified to >= 40 digits at t = 400.
    # (5, 7) cannot reach this: its own rate bounds t=400 at ~35 digits.
    with reporting(f"C6 certified-40-digits ({n},{k})"):
        params = Params(n, k)
        state = apply_power(params, 400, ones(n))
        _, dps = convergence_rate(params)
        for i in range(1, n):
            got = digits_of_accuracy(ratio(state, i), params, 40)
            assert got >= 40, (
                f"index {i}: certified {got} digits at t=400; the spectral "
                f"rate admits only ~{dps * 400:.1f}"
            )


@pytest.mark.parametrize("k", [2, 3, 5])
def test_c7_negative_root_exclusion(k):
    # 1000 random integer starts: certified convergence to the positive root,
    # exact rational distance to the negative root's bracket midpoint > 1
    with reporting(f"C7 negative-root-exclusion (k={k})"):
        params = Params(2, k)
        neg_mid = -nth_root_bracket(params, 30).midpoint
        mn, md = neg_mid.numerator, neg_mid.denominator
        rng = random.Random(57885161 + k)
        starts = 0
        while starts < 1000:
            x0 = rng.randint(-50, 50)
            y0 = rng.randint(-50, 50)
            if x0 == 0 and y0 == 0:
                continue
            starts += 1
            traj = iterate_linear(params, StateVector((x0, y0)), 200)
            assert digits_of_accuracy(ratio(traj.states[200], 1), params, 20) == 20, (
                x0,
                y0,
            )
            for t in range(50, 201):
                x, y = traj.states[t].entries
                # |x/y - mn/md| > 1 by integer cross-multiplication
                assert abs(x * md - mn * y) > abs(y) * md, (x0, y0, t)


def test_c8_square_root_systems_identical():
    # scalar map and linear ratios agree exactly on 100 random rational starts
    with reporting("C8 system-equality (n=2)"):
        rng = random.Random(30402457)
        runs = 0
        while runs < 100:
            num = rng.randint(-99, 99)
            den = rng.randint(1, 99)
            k = rng.randint(1, 20)
            params = Params(2, k)
            try:
                scal = iterate_scalar_map(params, Fraction(num, den), 20)
            except PoleEncountered:
                continue  # measure-zero pole orbit; draw another start
            try:
                traj = iterate_linear(params, StateVector((num, den)), 20)
            except ZeroVector:
                raise AssertionError(
                    f"linear aborted where scalar map did not: {num}/{den}, k={k}"
                )
            for t, r in enumerate(scal.ratios):
                assert ratio(traj.states[t], 1) == r, (num, den, k, t)
            runs += 1


def test_c8_higher_order_systems_differ():
    # for (3, 2) from the unit start the two systems provably part ways at t=2
    with reporting("C8 system-distinctness (n=3)"):
        scal = iterate_scalar_map(Params(3, 2), Fraction(1), 2)
        traj = iterate_linear(Params(3, 2), ones(3), 2)
        assert scal.ratios[2] == Fraction(14, 13)
        assert ratio(traj.states[2], 1) == Fraction(7, 5)
        assert scal.ratios[2] != ratio(traj.states[2], 1)


def test_c9_spectral_fidelity():
    # root residuals and reconstruction residuals < 1e-9; float prediction of
    # the exact trajectory within 1e-6 relative for t <= 30
    with reporting("C9 spectral-fidelity"):
        for n in range(2, 7):
            for k in range(1, 21):
                params = Params(n, k)
                data = eigenvalues(params)
                for pair in data.pairs:
                    p = (1 - pair.value) ** n + (-1) ** (n + 1) * k
                    assert abs(p) < 1e-9, (n, k, pair.value)
                dec = decompose(params, ones(n))
                rec = dec.reconstruct()
                assert max(abs(rec[i] - 1) for i in range(n)) < 1e-9, (n, k)
                state = ones(n)
                m = companion_matrix(params)
                for t in range(1, 31):
                    state = StateVector(m.apply(state.entries), t=t)
                    predicted = dec.predict(t)
                    for i in range(n):
                        rel = abs(predicted[i].real - state.entries[i]) / abs(
                            state.entries[i]
                        )
                        assert rel < 1e-6, (n, k, t, i)


def test_c10_oracle_soundness():
    # floor roots equal exhaustive search for m < 10**4, n <= 5; brackets nest
    with reporting("C10 oracle-soundness"):
        for n in range(1, 6):
            walker = 0  # exhaustive: walk the floor root upward with m
            for m in range(10**4):
                while (walker + 1) ** n <= m:
                    walker += 1
                assert integer_nth_root(m, n) == walker, (m, n)
        assert integer_nth_root(9999, 1) == 9999
        for n, k in [(2, 2), (3, 2), (3, 17), (5, 7), (4, 27)]:
            params = Params(n, k)
            prev = nth_root_bracket(params, 0)
            for d in range(1, 51):
                cur = nth_root_bracket(params, d)
                assert prev.low <= cur.low and cur.high <= prev.high, (n, k, d)
                assert cur.high - cur.low == Fraction(1, 10**d)
                prev = cur
