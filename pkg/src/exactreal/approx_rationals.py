"""Backends for the approximate-rationals interface.

A backend is an :class:`ApproxRationalOps` record of plain functions. The
reals are built generically over such a record, so a backend can be chosen
at runtime. Two are provided: :data:`DYADIC` (the fast one) and
:data:`RATIONAL` (exact fractions, used for differential testing).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import dyadic as dy
from .dyadic import Ordering, posrat_floor_log2
from .errors import DomainError

AQ = Any


@dataclass(frozen=True)
class ApproxRationalOps:
    name: str
    add: Callable[[AQ, AQ], AQ]
    sub: Callable[[AQ, AQ], AQ]
    mul: Callable[[AQ, AQ], AQ]
    neg: Callable[[AQ], AQ]
    abs: Callable[[AQ], AQ]
    pow: Callable[[AQ, int], AQ]
    shiftl: Callable[[AQ, int], AQ]
    compare: Callable[[AQ, AQ], Ordering]
    sign: Callable[[AQ], int]
    app_div: Callable[[AQ, AQ, int], AQ]
    app_approx: Callable[[AQ, int], AQ]
    inject_int: Callable[[int], AQ]
    to_rational: Callable[[AQ], Fraction]
    from_rational_within: Callable[[Fraction, Any], AQ]
    floor_log2: Callable[[AQ], int]

    @property
    def zero(self) -> AQ:
        return self.inject_int(0)

    @property
    def one(self) -> AQ:
        return self.inject_int(1)

    def le(self, x: AQ, y: AQ) -> bool:
        return self.compare(x, y) is not Ordering.GT

    def lt(self, x: AQ, y: AQ) -> bool:
        return self.compare(x, y) is Ordering.LT

    def eq(self, x: AQ, y: AQ) -> bool:
        return self.compare(x, y) is Ordering.EQ

    def pow2(self, k: int) -> AQ:
        return self.shiftl(self.one, k)

    def ceil_log2(self, x: AQ) -> int:
        """Smallest ``e`` with ``x <= 2**e`` for positive ``x``."""
        f = self.floor_log2(x)
        return f if self.eq(x, self.pow2(f)) else f + 1

    def __repr__(self):
        return f"<ApproxRationalOps {self.name}>"


DYADIC = ApproxRationalOps(
    name="dyadic",
    add=dy.dy_add,
    sub=dy.dy_sub,
    mul=dy.dy_mul,
    neg=dy.dy_neg,
    abs=dy.dy_abs,
    pow=dy.dy_pow,
    shiftl=dy.dy_shiftl,
    compare=dy.dy_compare,
    sign=dy.dy_sign,
    app_div=dy.dy_app_div,
    app_approx=dy.dy_app_approx,
    inject_int=dy.dy_inject,
    to_rational=dy.Dyadic.to_fraction,
    from_rational_within=dy.dy_from_fraction_within,
    floor_log2=dy.dy_floor_log2,
)


# Exact-rational backend. Values are fractions.Fraction kept in lowest terms.

def _trunc_div(num: int, den: int) -> int:
    q = abs(num) // abs(den)
    return -q if (num < 0) != (den < 0) else q


def rat_app_approx(x: Fraction, k: int) -> Fraction:
    """Truncate ``x`` onto the ``2**k`` grid using integer shifts."""
    num, den = x.numerator, x.denominator
    if k >= 0:
        return Fraction(_trunc_div(num, den << k) << k)
    if den == 1 or (den & (den - 1) == 0 and den.bit_length() - 1 <= -k):
        return x
    return Fraction(_trunc_div(num << -k, den), 1 << -k)


def rat_app_div(x: Fraction, y: Fraction, k: int) -> Fraction:
    if not y:
        raise ZeroDivisionError("rational division by zero")
    return rat_app_approx(x / y, k)


def _rat_shiftl(x: Fraction, n: int) -> Fraction:
    if n >= 0:
        return x * (1 << n)
    return x / (1 << -n)


def _rat_compare(x: Fraction, y: Fraction) -> Ordering:
    return Ordering((x > y) - (x < y))


def _rat_pow(x: Fraction, n: int) -> Fraction:
    if n < 0:
        raise DomainError("pow takes a non-negative exponent")
    return x**n


def _rat_floor_log2(x: Fraction) -> int:
    if x <= 0:
        raise DomainError("floor_log2 needs a positive argument")
    return posrat_floor_log2(x)


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


RATIONAL = ApproxRationalOps(
    name="rational",
    add=Fraction.__add__,
    sub=Fraction.__sub__,
    mul=Fraction.__mul__,
    neg=Fraction.__neg__,
    abs=Fraction.__abs__,
    pow=_rat_pow,
    shiftl=_rat_shiftl,
    compare=_rat_compare,
    sign=_sign,
    app_div=rat_app_div,
    app_approx=rat_app_approx,
    inject_int=Fraction,
    to_rational=Fraction,
    from_rational_within=lambda q, eps: Fraction(q),
    floor_log2=_rat_floor_log2,
)

BACKENDS = {"dyadic": DYADIC, "rational": RATIONAL}


def get_backend(name: str) -> ApproxRationalOps:
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; choose from {sorted(BACKENDS)}") from None
