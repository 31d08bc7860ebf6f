"""Command line front end: evaluate expressions and run the Many Digits subset.

    exactreal calc "exp(pi * sqrt(163))" --digits 100
    exactreal bench --problems P01,P07 --digits 500 --csv out.csv
"""
from __future__ import annotations

import argparse
import csv
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import expr as ast
from .approx_rationals import ApproxRationalOps, get_backend
from .completion import (
    Real,
    real_add,
    real_from_rational,
    real_mul,
    real_neg,
    real_pow,
    real_return,
    real_sub,
    to_decimal,
)
from .dyadic import Dyadic, set_mantissa_cap
from .errors import DomainError, InvalidWitness, ResourceLimitError, WitnessNotFound
from .expr import ParseError, parse
from .functions import DEFAULT_REDUCTION, e_constant, pi, real_atan, real_cos, real_exp, real_sin
from .order import real_div
from .roots import real_sqrt

EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_WITNESS = 4
EXIT_RESOURCE = 5

PROBLEMS = {
    "P01": "sin(sin(sin(1)))",
    "P02": "sqrt(pi)",
    "P03": "sin(e)",
    "P04": "exp(pi * sqrt(163))",
    "P05": "exp(exp(e))",
    "P07": "exp(1000)",
    "P08": "cos(10^50)",
}

# Desk-scale digit counts per problem.
DESK_DIGITS = {"P01": 500, "P02": 500, "P03": 500, "P04": 500, "P05": 500, "P07": 2000, "P08": 2000}


def default_nmax(digits: int) -> int:
    return 4 * digits + 64


def exact_value(e: ast.Expr) -> Optional[Fraction]:
    """Fold literal arithmetic exactly; ``None`` when ``e`` is not a rational literal expression."""
    if isinstance(e, ast.IntLit):
        return Fraction(e.value)
    if isinstance(e, ast.DecLit):
        return Fraction(e.digits, 10**e.scale)
    if isinstance(e, ast.RatLit):
        return Fraction(e.p, e.q) if e.q else None
    if isinstance(e, ast.Neg):
        v = exact_value(e.arg)
        return None if v is None else -v
    if isinstance(e, ast.Pow):
        v = exact_value(e.base)
        return None if v is None else v**e.exponent
    if isinstance(e, (ast.Add, ast.Sub, ast.Mul, ast.Div)):
        a, b = exact_value(e.left), exact_value(e.right)
        if a is None or b is None:
            return None
        if isinstance(e, ast.Add):
            return a + b
        if isinstance(e, ast.Sub):
            return a - b
        if isinstance(e, ast.Mul):
            return a * b
        return a / b if b else None
    return None


def _exact_real(q: Fraction, ops: ApproxRationalOps) -> Real:
    den = q.denominator
    if ops.name == "dyadic" and den & (den - 1) == 0:
        return real_return(Dyadic(q.numerator, -(den.bit_length() - 1)), ops)
    if ops.name == "rational":
        return real_return(q, ops)
    return real_from_rational(q, ops)


_CALLS = {
    "exp": lambda x: real_exp(x, DEFAULT_REDUCTION),
    "sin": lambda x: real_sin(x, DEFAULT_REDUCTION),
    "cos": lambda x: real_cos(x, DEFAULT_REDUCTION),
    "atan": real_atan,
    "sqrt": real_sqrt,
}


def to_real(e: ast.Expr, ops: ApproxRationalOps, n_max: int) -> Real:
    q = exact_value(e)
    if q is not None:
        return _exact_real(q, ops)
    if isinstance(e, ast.Const):
        return pi(ops) if e.name == "pi" else e_constant(ops)
    if isinstance(e, ast.Call):
        return _CALLS[e.name](to_real(e.arg, ops, n_max))
    if isinstance(e, ast.Neg):
        return real_neg(to_real(e.arg, ops, n_max))
    if isinstance(e, ast.Pow):
        return real_pow(to_real(e.base, ops, n_max), e.exponent)
    if isinstance(e, ast.RatLit):  # zero denominator
        return real_div(real_return(ops.inject_int(e.p), ops), real_return(ops.zero, ops), n_max)
    left, right = to_real(e.left, ops, n_max), to_real(e.right, ops, n_max)
    if isinstance(e, ast.Add):
        return real_add(left, right)
    if isinstance(e, ast.Sub):
        return real_sub(left, right)
    if isinstance(e, ast.Mul):
        return real_mul(left, right)
    return real_div(left, right, n_max)


def evaluate(e: ast.Expr | str, digits: int, backend: str = "dyadic", n_max: int | None = None) -> str:
    if digits < 1:
        raise ValueError("digits must be at least 1")
    if isinstance(e, str):
        e = parse(e)
    ops = get_backend(backend)
    if n_max is None:
        n_max = default_nmax(digits)
    return to_decimal(to_real(e, ops, n_max), digits)


@dataclass
class BenchResult:
    problem: str
    expression: str
    digits: int
    seconds: float
    backend: str
    prefix32: str
    output: str = ""
    error: str = ""

    def csv_row(self):
        return [self.problem, self.expression, self.digits, f"{self.seconds:.3f}", self.backend, self.prefix32]


CSV_HEADER = ["problem", "expression", "digits", "seconds", "backend", "prefix32"]


def _leading_digits(s: str, n: int = 32) -> str:
    return "".join(ch for ch in s if ch.isdigit())[:n]


def run_problem(problem: str, digits: int | None = None, backend: str = "dyadic") -> BenchResult:
    text = PROBLEMS[problem]
    d = DESK_DIGITS[problem] if digits is None else digits
    start = time.perf_counter()
    try:
        out, err = evaluate(text, d, backend), ""
    except Exception as exc:  # recorded per problem, the batch goes on
        out, err = "", f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    return BenchResult(problem, text, d, elapsed, backend, _leading_digits(out), out, err)


def bench(problems: Sequence[str], digits: int | None = None, backend: str = "dyadic",
          csv_path: str | None = None, parallel: bool = False) -> list[BenchResult]:
    unknown = [p for p in problems if p not in PROBLEMS]
    if unknown:
        raise ValueError(f"unknown problems: {', '.join(unknown)}")
    if parallel and len(problems) > 1:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda p: run_problem(p, digits, backend), problems))
    else:
        results = [run_problem(p, digits, backend) for p in problems]
    if csv_path:
        with open(csv_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(CSV_HEADER)
            for r in results:
                w.writerow(r.csv_row())
    return results


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, DomainError):
        return EXIT_DOMAIN
    if isinstance(exc, (WitnessNotFound, InvalidWitness)):
        return EXIT_WITNESS
    if isinstance(exc, (ResourceLimitError, MemoryError, RecursionError)):
        return EXIT_RESOURCE
    return 1


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="exactreal", description="Exact real arithmetic calculator.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("calc", help="evaluate an expression to N verified decimals")
    c.add_argument("expression")
    c.add_argument("--digits", type=int, default=20)
    c.add_argument("--backend", choices=["dyadic", "rational"], default="dyadic")
    c.add_argument("--nmax", type=int, default=None, help="witness search bound for division")

    b = sub.add_parser("bench", help="run Many Digits problems")
    b.add_argument("--problems", default=",".join(PROBLEMS),
                   help="comma separated subset of " + ",".join(PROBLEMS))
    b.add_argument("--digits", type=int, default=None,
                   help="decimals per problem (default: 500, or 2000 for P07/P08)")
    b.add_argument("--backend", choices=["dyadic", "rational"], default="dyadic")
    b.add_argument("--csv", default=None, metavar="PATH")
    b.add_argument("--parallel", action="store_true")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    set_mantissa_cap()
    if args.command == "calc":
        try:
            print(evaluate(args.expression, args.digits, args.backend, args.nmax))
        except Exception as exc:
            code = _exit_code(exc)
            if code == 1:
                raise
            print(f"error: {exc}", file=sys.stderr)
            return code
        return 0

    problems = [p.strip() for p in args.problems.split(",") if p.strip()]
    try:
        results = bench(problems, args.digits, args.backend, args.csv, args.parallel)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for r in results:
        status = r.prefix32 if not r.error else f"ERROR {r.error}"
        print(f"{r.problem}  {r.expression:<22} {r.digits:>6}  {r.seconds:8.3f}s  {r.backend:<8} {status}")
    return 1 if any(r.error for r in results) else 0


if __name__ == "__main__":
    sys.exit(main())
