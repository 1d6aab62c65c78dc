"""Command-line surface: approximation runs, tables, traces, eigen reports,
power-basis coefficient dumps, benchmarks, and a fast self-test.

Output goes to stdout (plain aligned text, CSV, or JSON), errors to stderr.
Exit codes: 0 success, 1 usage error, 2 domain error (zero vector, scalar-map
pole, undefined ratio), 3 non-convergence or self-test failure. All commands
are byte-deterministic except ``bench``, whose timing columns necessarily
vary run to run.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import engine, oracle, recursion, spectral
from .core import (
    DegenerateRate,
    DivisionByZero,
    Matrix,
    NonConvergence,
    Params,
    PoleEncountered,
    StateVector,
    ZeroVector,
)

TABLE_DECIMAL_PLACES = 6
TABLE_DIGITS_CAP = 40
APPROX_BURN_IN = 10
DEFAULT_MAX_T = 10**6

# Entry bit length grows linearly in t, about t*log2(1 + k**(1/n)) bits, so
# memory is the only ceiling on exponents.
GROWTH_NOTE = "entry size grows ~ t*log2(1 + k**(1/n)) bits; t is bounded only by memory"


def format_fraction(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def format_decimal(f: Fraction, places: int) -> str:
    """Exact long division, truncated (not rounded) toward zero."""
    if places < 0:
        raise ValueError(f"places must be nonnegative, got {places}")
    sign = "-" if f < 0 else ""
    a = -f if f < 0 else f
    whole, rem = divmod(a.numerator, a.denominator)
    if places == 0:
        return f"{sign}{whole}"
    digits = []
    for _ in range(places):
        rem *= 10
        d, rem = divmod(rem, a.denominator)
        digits.append(str(d))
    return f"{sign}{whole}." + "".join(digits)


@dataclass
class OutputRecord:
    """Rendered-ready payload: run metadata plus stringified rows."""

    command: str
    meta: dict[str, str]
    columns: list[str]
    rows: list[list[str]]
    fmt: str = "plain"

    def render(self) -> str:
        if self.fmt == "plain":
            return self._render_plain()
        if self.fmt == "csv":
            return self._render_csv()
        if self.fmt == "json":
            return self._render_json()
        raise ValueError(f"unknown format {self.fmt!r}")

    def _render_plain(self) -> str:
        lines = [f"# command = {self.command}"]
        lines.extend(f"# {key} = {value}" for key, value in self.meta.items())
        widths = [
            max(len(self.columns[i]), *(len(r[i]) for r in self.rows), 0)
            if self.rows
            else len(self.columns[i])
            for i in range(len(self.columns))
        ]
        def line(cells):
            return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
        lines.append(line(self.columns))
        lines.extend(line(r) for r in self.rows)
        return "\n".join(lines) + "\n"

    def _render_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(self.columns)
        writer.writerows(self.rows)
        return buf.getvalue()

    def _render_json(self) -> str:
        obj = {
            "command": self.command,
            "meta": self.meta,
            "columns": self.columns,
            "rows": self.rows,
        }
        return json.dumps(obj, indent=2) + "\n"


def _ones(params: Params) -> StateVector:
    return StateVector((1,) * params.n, t=0)


def build_table(params: Params, t0: int, t1: int, index: int) -> OutputRecord:
    """Rows (t, reduced fraction, 6-place decimal, certified digits)."""
    if not 0 <= t0 <= t1:
        raise ValueError(f"need 0 <= t0 <= t1, got t0={t0}, t1={t1}")
    traj = recursion.iterate_linear(params, _ones(params), t1)
    rows = []
    for t in range(t0, t1 + 1):
        frac = recursion.ratio(traj.states[t], index)
        rows.append(
            [
                str(t),
                format_fraction(frac),
                format_decimal(frac, TABLE_DECIMAL_PLACES),
                str(oracle.digits_of_accuracy(frac, params, TABLE_DIGITS_CAP)),
            ]
        )
    meta = {
        "n": str(params.n),
        "k": str(params.k),
        "t0": str(t0),
        "t1": str(t1),
        "index": str(index),
    }
    return OutputRecord("table", meta, ["t", "fraction", "decimal", "digits"], rows)


def build_trace_linear(params: Params, start: tuple[int, ...], steps: int) -> OutputRecord:
    traj = recursion.iterate_linear(params, StateVector(start, t=0), steps)
    columns = ["t"] + [f"x{i + 1}" for i in range(params.n)]
    rows = [[str(s.t), *(str(e) for e in s.entries)] for s in traj.states]
    meta = {
        "mode": "linear",
        "n": str(params.n),
        "k": str(params.k),
        "start": ",".join(str(e) for e in start),
        "steps": str(steps),
    }
    return OutputRecord("trace", meta, columns, rows)


def build_trace_scalar(params: Params, r0: Fraction, steps: int) -> OutputRecord:
    st = recursion.iterate_scalar_map(params, r0, steps)
    rows = [[str(t), format_fraction(r)] for t, r in enumerate(st.ratios)]
    meta = {
        "mode": "scalar",
        "n": str(params.n),
        "k": str(params.k),
        "start": format_fraction(Fraction(r0)),
        "steps": str(steps),
    }
    return OutputRecord("trace", meta, ["t", "ratio"], rows)


def build_eig(params: Params) -> OutputRecord:
    data = spectral.eigenvalues(params)
    meta = {
        "n": str(params.n),
        "k": str(params.k),
        "dominant_index": str(data.dominant_index),
    }
    try:
        rho, dps = spectral.convergence_rate(params)
        meta["rho"] = repr(rho)
        meta["digits_per_step"] = repr(dps)
        meta["degenerate"] = "false"
    except DegenerateRate:
        meta["rho"] = repr(0.0)
        meta["digits_per_step"] = "inf"
        meta["degenerate"] = "true"
    rows = []
    for j, pair in enumerate(data.pairs):
        rows.append(
            [
                str(j),
                repr(pair.value.real),
                repr(pair.value.imag),
                repr(abs(pair.value)),
                "true" if j == data.dominant_index else "false",
            ]
        )
    return OutputRecord("eig", meta, ["j", "re", "im", "modulus", "dominant"], rows)


def build_chpow(params: Params, t: int, fib: int | None) -> OutputRecord:
    """Basis coefficients a with M**t = sum a_i M**i; --fib dumps the chain."""
    columns = ["t"] + [f"a{i}" for i in range(params.n)]
    if fib is not None:
        chain = engine.fib_power_chain(params, fib)
        rows = [[str(e), *(str(c) for c in bc.coeffs)] for e, bc in chain]
    else:
        bc = engine.power_basis_coeffs(params, t)
        rows = [[str(t), *(str(c) for c in bc.coeffs)]]
    meta = {
        "n": str(params.n),
        "k": str(params.k),
        "basis": "a_i multiplies the i-th matrix power (a0 is the identity coefficient)",
    }
    if fib is not None:
        meta["fib_chain_length"] = str(fib)
    else:
        meta["t"] = str(t)
    return OutputRecord("chpow", meta, columns, rows)


def build_approx(params: Params, target_digits: int, max_t: int = DEFAULT_MAX_T) -> OutputRecord:
    """Smallest-effort certified approximation of k**(1/n) to target_digits.

    Perfect powers (including k = 1) are answered exactly. Otherwise the
    spectral rate picks a starting t, the all-ones start is evolved in one
    shot, and t doubles until the oracle certifies the target; exceeding
    max_t raises NonConvergence (that signals a bug, not an expected state).
    """
    if target_digits < 1:
        raise ValueError(f"target digits must be >= 1, got {target_digits}")
    meta = {
        "n": str(params.n),
        "k": str(params.k),
        "target_digits": str(target_digits),
    }
    root = oracle.integer_nth_root(params.k, params.n)
    if root**params.n == params.k:
        frac = Fraction(root)
        achieved = oracle.digits_of_accuracy(frac, params, target_digits)
        meta.update({"exact": "true", "t_used": "0", "achieved": str(achieved)})
        rows = [["0", format_fraction(frac), format_decimal(frac, target_digits), str(achieved)]]
        return OutputRecord("approx", meta, ["t", "fraction", "decimal", "digits"], rows)
    rho, dps = spectral.convergence_rate(params)
    t = math.ceil(target_digits / dps) + APPROX_BURN_IN
    while True:
        if t > max_t:
            raise NonConvergence(
                f"needed t={t} exceeds ceiling {max_t} for {target_digits} digits"
            )
        state = engine.apply_power(params, t, _ones(params))
        frac = recursion.ratio(state, 1)
        achieved = oracle.digits_of_accuracy(frac, params, target_digits)
        if achieved >= target_digits:
            break
        t *= 2
    meta.update(
        {
            "exact": "false",
            "rho": repr(rho),
            "digits_per_step": repr(dps),
            "t_used": str(t),
            "achieved": str(achieved),
        }
    )
    rows = [[str(t), format_fraction(frac), format_decimal(frac, target_digits), str(achieved)]]
    return OutputRecord("approx", meta, ["t", "fraction", "decimal", "digits"], rows)


def build_bench(params: Params, t: int, repeat: int) -> OutputRecord:
    """Time the three power engines on the same (n, k, t); results must agree."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if repeat < 1:
        raise ValueError(f"repeat must be >= 1, got {repeat}")
    m = engine.companion_matrix(params)
    start = _ones(params)

    def run_naive():
        return engine.mat_pow(m, t, method="naive").apply(start.entries)

    def run_binary():
        return engine.mat_pow(m, t, method="binary").apply(start.entries)

    def run_ring():
        return engine.apply_power(params, t, start).entries

    rows = []
    results = []
    for name, fn in (("naive", run_naive), ("binary", run_binary), ("ring", run_ring)):
        best = math.inf
        value = None
        for _ in range(repeat):
            t0 = time.perf_counter()
            value = fn()
            best = min(best, time.perf_counter() - t0)
        results.append(value)
        rows.append([name, str(t), f"{best * 1e3:.3f}"])
    agree = results[0] == results[1] == results[2]
    meta = {
        "n": str(params.n),
        "k": str(params.k),
        "t": str(t),
        "repeat": str(repeat),
        "agree": "true" if agree else "false",
        "note": "timings vary run to run; all other commands are byte-deterministic",
    }
    return OutputRecord("bench", meta, ["method", "t", "best_ms"], rows)


# --- self-test groups (fast subset of the acceptance suite) -----------------

def _selftest_table():
    traj = recursion.iterate_linear(Params(2, 2), StateVector((1, 1)), 5)
    got = [format_fraction(recursion.ratio(s, 1)) for s in traj.states]
    want = ["1/1", "3/2", "7/5", "17/12", "41/29", "99/70"]
    assert got == want, f"fraction column {got} != {want}"


def _selftest_cayley_hamilton():
    for n in range(2, 7):
        for k in (1, 2, 3, 5, 10, 16):
            params = Params(n, k)
            m = engine.companion_matrix(params)
            got = engine.mat_pow(m - Matrix.identity(n), n, method="binary")
            assert got == Matrix.identity(n).scale(k), (
                f"(M - I)**{n} != {k}*I at n={n}, k={k}"
            )


def _selftest_engine_agreement():
    rng = random.Random(20240501)
    cases = 0
    while cases < 50:
        n = rng.randint(2, 6)
        k = rng.randint(1, 20)
        t = rng.randint(0, 50)
        entries = tuple(rng.randint(-9, 9) for _ in range(n))
        if all(e == 0 for e in entries):
            continue
        params = Params(n, k)
        r0 = StateVector(entries)
        m = engine.companion_matrix(params)
        try:
            via_ring = engine.apply_power(params, t, r0).entries
        except ZeroVector:
            continue
        via_naive = engine.mat_pow(m, t, method="naive").apply(entries)
        via_binary = engine.mat_pow(m, t, method="binary").apply(entries)
        assert via_ring == via_naive == via_binary, (
            f"engines disagree at n={n}, k={k}, t={t}, r0={entries}"
        )
        cases += 1


def _selftest_rate():
    params = Params(2, 2)
    traj = recursion.iterate_linear(params, _ones(params), 150)
    e50 = oracle.log10_error_bound(recursion.ratio(traj.states[50], 1), params, 160)
    e150 = oracle.log10_error_bound(recursion.ratio(traj.states[150], 1), params, 160)
    measured = (e50 - e150) / 100
    _, predicted = spectral.convergence_rate(params)
    assert abs(measured - predicted) <= 0.05 * predicted, (
        f"measured {measured:.6f} digits/step vs predicted {predicted:.6f}"
    )


def run_selftest(write=None) -> int:
    """Run the fast check groups; print one PASS/FAIL line each."""
    write = write or (lambda line: print(line))
    groups = [
        ("table-reproduction", _selftest_table),
        ("cayley-hamilton", _selftest_cayley_hamilton),
        ("engine-agreement", _selftest_engine_agreement),
        ("rate-check-2-2", _selftest_rate),
    ]
    failed = False
    for name, fn in groups:
        try:
            fn()
        except AssertionError as exc:
            failed = True
            write(f"FAIL {name}: {exc}")
        else:
            write(f"PASS {name}")
    return 3 if failed else 0


# --- argument parsing --------------------------------------------------------

class _UsageError(Exception):
    pass


class _CliParser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _add_common(sub, *, fmt=True):
    sub.add_argument("--n", type=int, required=True, help="root order (>= 2)")
    sub.add_argument("--k", type=int, required=True, help="radicand (>= 1)")
    if fmt:
        sub.add_argument(
            "--format",
            choices=("plain", "csv", "json"),
            default="plain",
            help="output format (default plain)",
        )
        sub.add_argument("--out", help="write the payload to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _CliParser(
        prog="ratroot",
        description="Exact rational approximations to k**(1/n) by integer power iteration. "
        + GROWTH_NOTE + ".",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("approx", help="certified approximation to a digit target")
    _add_common(p)
    p.add_argument("--digits", type=int, required=True, help="decimal digits to certify")
    p.add_argument(
        "--max-t",
        type=int,
        default=DEFAULT_MAX_T,
        help=f"step-doubling ceiling (default {DEFAULT_MAX_T})",
    )

    p = subs.add_parser("table", help="per-step convergents from the all-ones start")
    _add_common(p)
    p.add_argument("--t0", type=int, default=0, help="first step (default 0)")
    p.add_argument("--t1", type=int, default=10, help="last step (default 10)")
    p.add_argument("--index", type=int, default=1, help="adjacent-ratio index, 1..n-1")

    p = subs.add_parser("trace", help="raw states or scalar-map iterates")
    _add_common(p)
    p.add_argument("--mode", choices=("linear", "scalar"), required=True)
    p.add_argument(
        "--start",
        help="comma-separated integers (linear) or a fraction p/q (scalar); "
        "default all ones / 1",
    )
    p.add_argument("--steps", type=int, default=10, help="steps to iterate (default 10)")

    p = subs.add_parser("eig", help="eigenvalues, dominant pair, convergence rate")
    _add_common(p)

    p = subs.add_parser("chpow", help="matrix power expanded over I, M, ..., M**(n-1)")
    _add_common(p)
    p.add_argument("--t", type=int, default=2, help="exponent to expand (default 2)")
    p.add_argument(
        "--fib",
        type=int,
        help="emit a chain of this length with exponents 2, 3, 5, 8, ...",
    )

    p = subs.add_parser("bench", help="time the three power engines")
    _add_common(p)
    p.add_argument("--t", type=int, default=256, help="exponent to benchmark (default 256)")
    p.add_argument("--repeat", type=int, default=3, help="best-of repetitions (default 3)")

    subs.add_parser("selftest", help="run the fast acceptance subset")

    return parser


def _parse_linear_start(text: str | None, params: Params) -> tuple[int, ...]:
    if text is None:
        return (1,) * params.n
    try:
        entries = tuple(int(part.strip()) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad linear start {text!r}: {exc}") from None
    return entries


def _parse_scalar_start(text: str | None) -> Fraction:
    if text is None:
        return Fraction(1)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad scalar start {text!r}: {exc}") from None


def _dispatch(args) -> OutputRecord:
    params = Params(args.n, args.k)
    if args.command == "approx":
        record = build_approx(params, args.digits, args.max_t)
    elif args.command == "table":
        record = build_table(params, args.t0, args.t1, args.index)
    elif args.command == "trace":
        if args.mode == "linear":
            record = build_trace_linear(params, _parse_linear_start(args.start, params), args.steps)
        else:
            record = build_trace_scalar(params, _parse_scalar_start(args.start), args.steps)
    elif args.command == "eig":
        record = build_eig(params)
    elif args.command == "chpow":
        record = build_chpow(params, args.t, args.fib)
    elif args.command == "bench":
        record = build_bench(params, args.t, args.repeat)
    else:  # pragma: no cover - parser enforces the choices
        raise ValueError(f"unknown command {args.command!r}")
    record.fmt = args.format
    return record


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.command == "selftest":
        return run_selftest()
    try:
        record = _dispatch(args)
    except (ZeroVector, PoleEncountered, DivisionByZero) as exc:
        print(f"ratroot: error: {exc}", file=sys.stderr)
        return 2
    except NonConvergence as exc:
        print(f"ratroot: error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"ratroot: error: {exc}", file=sys.stderr)
        return 1
    payload = record.render()
    if args.out:
        Path(args.out).write_text(payload)
    else:
        sys.stdout.write(payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
