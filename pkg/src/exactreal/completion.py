"""Real numbers as regular functions into an approximate-rationals carrier.

A :class:`Real` wraps a function ``k -> a`` returning a carrier value within
``2**k`` of the represented number. The public precision currency is a
positive rational ``eps``; :meth:`Real.approximate` converts it to the
power-of-two grade ``floor(log2(eps))`` and every internal closure works on
integer exponents only.

Moduli of continuity are likewise exponent maps: ``modulus(k)`` is the input
grade that guarantees an output error of at most ``2**k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable

from .approx_rationals import DYADIC, ApproxRationalOps
from .dyadic import posrat_floor_log2
from .errors import DomainError

AQ = Any
Modulus = Callable[[int], int]


def pos_rational(eps) -> Fraction:
    """Validate and return a strictly positive rational precision."""
    q = Fraction(eps)
    if q <= 0:
        raise DomainError(f"precision must be positive, got {eps}")
    return q


class Real:
    __slots__ = ("ops", "_fn", "_bound")

    def __init__(self, ops: ApproxRationalOps, fn: Callable[[int], AQ]):
        self.ops = ops
        self._fn = fn
        self._bound = None

    def approx(self, k: int) -> AQ:
        """A carrier value within ``2**k`` of this number."""
        return self._fn(k)

    def approximate(self, eps) -> AQ:
        return self._fn(posrat_floor_log2(pos_rational(eps)))

    def bound_exp(self) -> int:
        """An exponent ``j >= 1`` with ``|x| + 1 <= 2**j``.

        Any approximation at grade ``k <= 0`` then lies in ``[-2**j, 2**j]``.
        Computed once from a coarse approximation and cached.
        """
        if self._bound is None:
            ops = self.ops
            b = ops.add(ops.abs(self._fn(0)), ops.inject_int(2))
            self._bound = max(1, ops.ceil_log2(b))
        return self._bound

    def to_decimal(self, n: int) -> str:
        return to_decimal(self, n)

    def __repr__(self):
        return f"<Real ~{to_decimal(self, 10)} ({self.ops.name})>"

    # Operator sugar.
    def __add__(self, other):
        return real_add(self, _lift(other, self.ops))

    __radd__ = __add__

    def __sub__(self, other):
        return real_sub(self, _lift(other, self.ops))

    def __rsub__(self, other):
        return real_sub(_lift(other, self.ops), self)

    def __mul__(self, other):
        return real_mul(self, _lift(other, self.ops))

    __rmul__ = __mul__

    def __neg__(self):
        return real_neg(self)


def _lift(x, ops: ApproxRationalOps) -> Real:
    if isinstance(x, Real):
        return x
    if isinstance(x, int):
        return real_return(ops.inject_int(x), ops)
    if isinstance(x, Fraction):
        return real_from_rational(x, ops)
    raise TypeError(f"cannot combine Real with {type(x).__name__}")


@dataclass(frozen=True)
class UcFun:
    """A uniformly continuous ``AQ -> Real`` with its modulus on grades."""

    apply: Callable[[AQ], Real]
    modulus: Modulus


def ball(eps, x: AQ, y: AQ, ops: ApproxRationalOps = DYADIC) -> bool:
    return abs(ops.to_rational(x) - ops.to_rational(y)) <= pos_rational(eps)


def ball_exp(k: int, x: AQ, y: AQ, ops: ApproxRationalOps = DYADIC) -> bool:
    """``ball(2**k, x, y)`` decided inside the carrier."""
    return ops.le(ops.abs(ops.sub(x, y)), ops.pow2(k))


def real_return(a: AQ, ops: ApproxRationalOps = DYADIC) -> Real:
    return Real(ops, lambda k: a)


def real_from_int(n: int, ops: ApproxRationalOps = DYADIC) -> Real:
    return real_return(ops.inject_int(n), ops)


def real_from_rational(q, ops: ApproxRationalOps = DYADIC) -> Real:
    q = Fraction(q)
    if q.denominator == 1:
        return real_from_int(q.numerator, ops)
    return Real(ops, lambda k: ops.from_rational_within(q, Fraction(2) ** k))


def real_bind(f: UcFun, x: Real) -> Real:
    apply, modulus, xfn = f.apply, f.modulus, x._fn

    def fn(k):
        return apply(xfn(modulus(k - 1))).approx(k - 1)

    return Real(x.ops, fn)


def real_map(f: Callable[[AQ], AQ], modulus: Modulus) -> Callable[[Real], Real]:
    def lifted(x: Real) -> Real:
        ops = x.ops
        return real_bind(UcFun(lambda a: real_return(f(a), ops), modulus), x)

    return lifted


def real_map2(f: Callable[[AQ, AQ], AQ], mod_x: Modulus, mod_y: Modulus) -> Callable[[Real, Real], Real]:
    def lifted(x: Real, y: Real) -> Real:
        xfn, yfn = x._fn, y._fn

        def fn(k):
            return f(xfn(mod_x(k - 1)), yfn(mod_y(k - 1)))

        return Real(x.ops, fn)

    return lifted


def compress(x: Real) -> Real:
    """Same number, with approximations truncated onto the requested grid."""
    app_approx, xfn = x.ops.app_approx, x._fn

    def fn(k):
        return app_approx(xfn(k - 1), k - 1)

    return Real(x.ops, fn)


def _half(k):
    return k - 1


def real_add(x: Real, y: Real) -> Real:
    return real_map2(x.ops.add, _half, _half)(x, y)


def real_neg(x: Real) -> Real:
    neg, xfn = x.ops.neg, x._fn
    return Real(x.ops, lambda k: neg(xfn(k)))


def real_sub(x: Real, y: Real) -> Real:
    return real_add(x, real_neg(y))


def real_abs(x: Real) -> Real:
    abs_, xfn = x.ops.abs, x._fn
    return Real(x.ops, lambda k: abs_(xfn(k)))


def _clamp(ops, a, j):
    hi = ops.pow2(j)
    if ops.lt(hi, a):
        return hi
    lo = ops.neg(hi)
    if ops.lt(a, lo):
        return lo
    return a


def real_mul(x: Real, y: Real) -> Real:
    """Product; multiplication is lifted on ``[-b, b]`` with ``b`` from coarse bounds."""
    ops = x.ops
    mul = ops.mul
    xfn, yfn = x._fn, y._fn
    state = {}

    def fn(k):
        j = state.get("j")
        if j is None:
            j = state["j"] = max(x.bound_exp(), y.bound_exp())
        g = min(k - j - 2, 0)
        return ops.app_approx(mul(xfn(g), yfn(g)), k - 1)

    return Real(ops, fn)


def real_shiftl(x: Real, n: int) -> Real:
    """Exact scaling by ``2**n``."""
    shiftl, xfn = x.ops.shiftl, x._fn
    return Real(x.ops, lambda k: shiftl(xfn(k - n), n))


def real_scale(x: Real, c: int) -> Real:
    """Exact scaling by an integer."""
    return real_lincomb([(c, x)], x.ops)


def real_lincomb(terms: Iterable[tuple[int, Real]], ops: ApproxRationalOps = DYADIC) -> Real:
    """``sum(c * x)`` for integer coefficients, each term evaluated once."""
    terms = [(c, x) for c, x in terms if c]
    if not terms:
        return real_return(ops.zero, ops)
    total = sum(abs(c) for c, _ in terms)
    spread = (total - 1).bit_length()  # ceil(log2(total))
    coeffs = [(ops.inject_int(c), x._fn) for c, x in terms]
    add, mul = ops.add, ops.mul

    def fn(k):
        g = k - spread
        acc = ops.zero
        for c, xfn in coeffs:
            acc = add(acc, mul(c, xfn(g)))
        return acc

    return Real(ops, fn)


def real_pow(x: Real, n: int) -> Real:
    """``x**n`` for a non-negative integer, lifted as a single unary map."""
    ops = x.ops
    if n < 0:
        raise DomainError("real_pow takes a non-negative exponent")
    if n == 0:
        return real_return(ops.one, ops)
    if n == 1:
        return x
    xfn = x._fn
    state = {}

    def fn(k):
        # t -> t**n is Lipschitz n * B**(n-1) on [-B, B].
        j = state.get("j")
        if j is None:
            j = state["j"] = x.bound_exp()
        lip = (n - 1).bit_length() + j * (n - 1)
        t = _clamp(ops, xfn(min(k - 1 - lip, 0)), j)
        return ops.app_approx(ops.pow(t, n), k - 1)

    return Real(ops, fn)


def real_iterate(step: Callable[[AQ], AQ], lip_exp: int, m: int, x: Real) -> Real:
    """``m`` nested binds of ``step`` (Lipschitz ``2**lip_exp``) over ``x``.

    Each level truncates its output onto the grid, so this is the m-fold
    ``bind (lambda a eps: app_approx (step a) eps)`` run as a loop instead of
    m nested closures.
    """
    ops = x.ops
    app_approx, xfn = ops.app_approx, x._fn

    def fn(k):
        t = xfn(k - m * (1 + lip_exp))
        for level in range(m - 1, -1, -1):
            t = app_approx(step(t), k - level * (1 + lip_exp) - 1)
        return t

    return Real(ops, fn)


def approximate(x: Real, eps) -> AQ:
    return x.approximate(eps)


def to_decimal(x: Real, n: int) -> str:
    """Decimal string with exactly ``n`` fraction digits, within ``10**-n`` of ``x``."""
    if n < 0:
        raise ValueError("number of digits must be non-negative")
    scale = 10**n
    k = posrat_floor_log2(Fraction(1, 2 * scale))
    q = x.ops.to_rational(x.approx(k))
    num = q.numerator * scale * 2 + q.denominator
    rounded = num // (2 * q.denominator)  # floor(q * 10**n + 1/2)
    sign = "-" if rounded < 0 else ""
    digits = str(abs(rounded)).rjust(n + 1, "0")
    if n == 0:
        return sign + digits
    return f"{sign}{digits[:-n]}.{digits[-n:]}"
