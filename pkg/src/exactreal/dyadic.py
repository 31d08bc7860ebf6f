"""Dyadic rationals ``mant * 2**expo`` with exact ring operations.

Division is only available approximately (``dy_app_div``), with the result
within ``2**k`` of the true quotient. Both approximating operations round
the magnitude toward zero.
"""
from __future__ import annotations

import enum
import os
from fractions import Fraction

from .errors import DomainError, ResourceLimitError

DEFAULT_MANT_CAP = 2**31


def _cap_from_env() -> int:
    raw = os.environ.get("EXACTREAL_MANT_CAP")
    if not raw:
        return DEFAULT_MANT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"EXACTREAL_MANT_CAP must be an integer, got {raw!r}") from None
    if cap <= 0:
        raise ValueError("EXACTREAL_MANT_CAP must be positive")
    return cap


# Largest exponent-alignment shift (in bits) dy_add will perform.
MANT_CAP = _cap_from_env()


def set_mantissa_cap(bits: int | None = None) -> int:
    """Set the alignment cap; ``None`` re-reads ``EXACTREAL_MANT_CAP``."""
    global MANT_CAP
    MANT_CAP = _cap_from_env() if bits is None else int(bits)
    return MANT_CAP


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class Dyadic:
    """The number ``mant * 2**expo``.

    Equality and ordering are semantic; ``Dyadic(2, -1) == Dyadic(1, 0)``.
    Use :meth:`same_repr` for representation equality.
    """

    __slots__ = ("mant", "expo")

    def __init__(self, mant: int, expo: int = 0):
        self.mant = mant
        self.expo = expo

    @classmethod
    def from_int(cls, n: int) -> Dyadic:
        return cls(n, 0)

    def to_fraction(self) -> Fraction:
        if self.expo >= 0:
            return Fraction(self.mant << self.expo)
        return Fraction(self.mant, 1 << -self.expo)

    def same_repr(self, other: Dyadic) -> bool:
        return self.mant == other.mant and self.expo == other.expo

    def __repr__(self):
        return f"Dyadic({self.mant}, {self.expo})"

    def __str__(self):
        return f"{self.mant}▼{self.expo}"

    def __hash__(self):
        n = normalize_repr(self)
        return hash((n.mant, n.expo))

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return dy_compare(self, other) is Ordering.EQ

    def __lt__(self, other):
        return dy_compare(self, _coerce(other)) is Ordering.LT

    def __le__(self, other):
        return dy_compare(self, _coerce(other)) is not Ordering.GT

    def __gt__(self, other):
        return dy_compare(self, _coerce(other)) is Ordering.GT

    def __ge__(self, other):
        return dy_compare(self, _coerce(other)) is not Ordering.LT

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return dy_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return dy_add(self, dy_neg(other))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return dy_add(other, dy_neg(self))

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return dy_mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return dy_neg(self)

    def __abs__(self):
        return dy_abs(self)

    def __pow__(self, n: int):
        return dy_pow(self, n)

    def __lshift__(self, n: int):
        return dy_shiftl(self, n)

    def __rshift__(self, n: int):
        return dy_shiftl(self, -n)

    def __bool__(self):
        return self.mant != 0


def _coerce(x):
    if isinstance(x, Dyadic):
        return x
    if isinstance(x, int):
        return Dyadic(x, 0)
    return NotImplemented


ZERO = Dyadic(0, 0)
ONE = Dyadic(1, 0)


def dy_inject(n: int) -> Dyadic:
    return Dyadic(n, 0)


def dy_add(x: Dyadic, y: Dyadic) -> Dyadic:
    ex, ey = x.expo, y.expo
    if ex == ey:
        return Dyadic(x.mant + y.mant, ex)
    if ex < ey:
        shift = ey - ex
        if shift > MANT_CAP and y.mant:
            raise ResourceLimitError(f"exponent alignment of {shift} bits exceeds cap {MANT_CAP}")
        return Dyadic(x.mant + (y.mant << shift), ex)
    shift = ex - ey
    if shift > MANT_CAP and x.mant:
        raise ResourceLimitError(f"exponent alignment of {shift} bits exceeds cap {MANT_CAP}")
    return Dyadic((x.mant << shift) + y.mant, ey)


def dy_sub(x: Dyadic, y: Dyadic) -> Dyadic:
    return dy_add(x, Dyadic(-y.mant, y.expo))


def dy_mul(x: Dyadic, y: Dyadic) -> Dyadic:
    return Dyadic(x.mant * y.mant, x.expo + y.expo)


def dy_neg(x: Dyadic) -> Dyadic:
    return Dyadic(-x.mant, x.expo)


def dy_abs(x: Dyadic) -> Dyadic:
    return x if x.mant >= 0 else Dyadic(-x.mant, x.expo)


def dy_shiftl(x: Dyadic, n: int) -> Dyadic:
    return Dyadic(x.mant, x.expo + n)


def dy_pow(x: Dyadic, n: int) -> Dyadic:
    if n < 0:
        raise DomainError("dy_pow takes a non-negative exponent")
    if n == 0:
        return ONE
    return Dyadic(x.mant**n, x.expo * n)


def dy_sign(x: Dyadic) -> int:
    return (x.mant > 0) - (x.mant < 0)


def dy_compare(x: Dyadic, y: Dyadic) -> Ordering:
    sx, sy = dy_sign(x), dy_sign(y)
    if sx != sy:
        return Ordering.LT if sx < sy else Ordering.GT
    if sx == 0:
        return Ordering.EQ
    # Same nonzero sign: a quick magnitude test avoids aligning far-apart exponents.
    hx = abs(x.mant).bit_length() + x.expo
    hy = abs(y.mant).bit_length() + y.expo
    if hx != hy:
        mag = Ordering.LT if hx < hy else Ordering.GT
        return mag if sx > 0 else Ordering(-mag)
    if x.expo <= y.expo:
        a, b = x.mant, y.mant << (y.expo - x.expo)
    else:
        a, b = x.mant << (x.expo - y.expo), y.mant
    return Ordering((a > b) - (a < b))


def normalize_repr(x: Dyadic) -> Dyadic:
    """Strip trailing zero bits of the mantissa; zero becomes ``0▼0``."""
    m = x.mant
    if m == 0:
        return ZERO
    tz = (m & -m).bit_length() - 1
    if tz == 0:
        return x
    return Dyadic(m >> tz, x.expo + tz)


def _trunc_shift(m: int, s: int) -> int:
    """``m / 2**s`` rounded toward zero, for ``s >= 0``."""
    return m >> s if m >= 0 else -((-m) >> s)


def dy_app_approx(x: Dyadic, k: int) -> Dyadic:
    if x.expo >= k:
        return x
    return Dyadic(_trunc_shift(x.mant, k - x.expo), k)


def dy_app_div(x: Dyadic, y: Dyadic, k: int) -> Dyadic:
    if y.mant == 0:
        raise ZeroDivisionError("dyadic division by zero")
    s = x.expo - y.expo - k
    num, den = x.mant, y.mant
    if s >= 0:
        num <<= s
    else:
        den <<= -s
    neg = (num < 0) != (den < 0)
    q = abs(num) // abs(den)
    return Dyadic(-q if neg else q, k)


def dy_floor_log2(x: Dyadic) -> int:
    if x.mant <= 0:
        raise DomainError("floor_log2 needs a positive argument")
    return x.mant.bit_length() - 1 + x.expo


def dy_ceil_log2(x: Dyadic) -> int:
    """Smallest ``e`` with ``x <= 2**e``; ``x`` must be positive."""
    f = dy_floor_log2(x)
    m = x.mant
    return f if m & (m - 1) == 0 else f + 1


def posrat_floor_log2(eps) -> int:
    """``floor(log2(eps))`` for a positive rational, computed exactly."""
    eps = Fraction(eps)
    num, den = eps.numerator, eps.denominator
    if num <= 0:
        raise DomainError("precision must be a positive rational")
    e = num.bit_length() - den.bit_length()
    # e or e - 1; settle it exactly.
    if e >= 0:
        return e if num >= den << e else e - 1
    return e if num << -e >= den else e - 1


def dy_from_fraction_within(q: Fraction, eps) -> Dyadic:
    """A dyadic within ``eps`` of ``q``: truncate onto the ``2**floor_log2(eps)`` grid."""
    q = Fraction(q)
    k = posrat_floor_log2(eps)
    num, den = q.numerator, q.denominator
    if k >= 0:
        den <<= k
    else:
        num <<= -k
    t = abs(num) // den
    return Dyadic(-t if num < 0 else t, k)


def dy_to_decimal_string(x: Dyadic) -> str:
    """Exact decimal expansion; always finite for a dyadic."""
    x = normalize_repr(x)
    if x.expo >= 0:
        return str(x.mant << x.expo)
    e = -x.expo
    m = abs(x.mant) * 5**e
    digits = str(m).rjust(e + 1, "0")
    sign = "-" if x.mant < 0 else ""
    return f"{sign}{digits[:-e]}.{digits[-e:]}"


def dy_to_hex_string(x: Dyadic) -> str:
    return f"{'-' if x.mant < 0 else ''}{abs(x.mant):#x}p{x.expo:+d}"
