"""Square roots by Wolfram's digit-per-step iteration.

For ``1 <= a <= 4`` the exact recurrence starting from ``(r, s) = (a, 0)``

    if s + 1 <= r:  (r, s) <- (4 (r - s - 1), 2 (s + 2))
    else:           (r, s) <- (4 r, 2 s)

keeps ``s**2 + 4 r == 4**(n+1) a``, so ``s / 2**(n+1)`` approaches ``sqrt(a)``
from below, one binary digit per step.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .approx_rationals import DYADIC, ApproxRationalOps
from .completion import Real, real_return, real_shiftl
from .errors import DomainError

AQ = Any


@dataclass(frozen=True)
class WolframState:
    r: AQ
    s: AQ
    n: int


def _check_unit_range(a: AQ, ops: ApproxRationalOps):
    if ops.lt(a, ops.one) or ops.lt(ops.inject_int(4), a):
        raise DomainError(f"Wolfram iteration needs 1 <= a <= 4, got {ops.to_rational(a)}")


def wolfram_step(r: AQ, s: AQ, ops: ApproxRationalOps = DYADIC) -> tuple[AQ, AQ]:
    s1 = ops.add(s, ops.one)
    if ops.le(s1, r):
        return ops.shiftl(ops.sub(r, s1), 2), ops.shiftl(ops.add(s1, ops.one), 1)
    return ops.shiftl(r, 2), ops.shiftl(s, 1)


def wolfram_iterate(a: AQ, n: int, ops: ApproxRationalOps = DYADIC) -> WolframState:
    _check_unit_range(a, ops)
    if n < 0:
        raise ValueError("step count must be non-negative")
    r, s = a, ops.zero
    for _ in range(n):
        r, s = wolfram_step(r, s, ops)
    return WolframState(r, s, n)


def wolfram_steps_for(k: int) -> int:
    """Steps giving an approximation within ``2**k``."""
    return max(1, -k + 2)


def sqrt_core(a: AQ, ops: ApproxRationalOps = DYADIC) -> Real:
    _check_unit_range(a, ops)

    def fn(k):
        n = wolfram_steps_for(k)
        st = wolfram_iterate(a, n, ops)
        return ops.shiftl(st.s, -(n + 1))

    return Real(ops, fn)


def sqrt_aq(a: AQ, ops: ApproxRationalOps = DYADIC) -> Real:
    """``sqrt(a)`` for ``a >= 0``, scaling by powers of 4 into ``[1, 4)``."""
    sign = ops.sign(a)
    if sign < 0:
        raise DomainError("square root of a negative number")
    if sign == 0:
        return real_return(ops.zero, ops)
    m = ops.floor_log2(a) // 2
    return real_shiftl(sqrt_core(ops.shiftl(a, -2 * m), ops), m)


def real_sqrt(x: Real) -> Real:
    """Square root of a non-negative real.

    sqrt is Hoelder-1/2 (``|sqrt u - sqrt v| <= sqrt |u - v|``), so the argument
    is evaluated at twice the grade. An approximation below ``-2**j`` at grade
    ``j`` proves ``x < 0`` and raises; anything else negative is clamped to 0.
    """
    ops = x.ops
    xfn = x._fn
    zero = ops.zero

    def fn(k):
        j = 2 * (k - 1)
        a = xfn(j)
        if ops.sign(a) <= 0:
            if ops.lt(a, ops.neg(ops.pow2(j))):
                raise DomainError("square root of a negative number")
            return zero
        # sqrt(a) <= 2**(k-1) already: 0 is close enough.
        if ops.floor_log2(a) < j:
            return zero
        return sqrt_aq(a, ops).approx(k - 1)

    return Real(ops, fn)
