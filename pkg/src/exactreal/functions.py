"""exp, sin, cos, atan and pi on top of the alternating-series engine.

Each ``*_aq`` function takes an exact carrier value and returns a Real. The
``real_*`` variants lift them to Real arguments with ``real_bind``.

Range reductions, all applied inside a single evaluation:

* exp: ``exp(x) = exp(x/2)**2`` (halving by an exact shift) and
  ``exp(x) = 1/exp(-x)``;
* sin: ``sin(x) = 3 sin(x/3) - 4 sin(x/3)**3``, with the division by ``3**m``
  folded into the series denominators;
* cos: ``cos(x) = 1 - 2 sin(x/2)**2``;
* atan: odd symmetry, ``pi/2 - atan(1/x)`` and ``pi/4 + atan((x-1)/(x+1))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

from .approx_rationals import DYADIC, ApproxRationalOps
from .completion import (
    Real,
    UcFun,
    _clamp,
    real_add,
    real_bind,
    real_iterate,
    real_lincomb,
    real_neg,
    real_return,
    real_shiftl,
    real_sub,
)
from .order import PosWitness, real_recip
from .series import (
    DualStream,
    infinite_alternating_sum,
    stream_every_other,
    stream_factorials,
    stream_odds,
    stream_powers,
    stream_zip_mul,
)

AQ = Any

# pi = 176 atan(1/57) + 28 atan(1/239) - 48 atan(1/682) + 96 atan(1/12943)
MACHIN_TERMS = ((176, 57), (28, 239), (-48, 682), (96, 12943))

# Requests finer than this many bits (about 1000 decimals) reduce harder.
_HIGH_PRECISION_BITS = 3322


@dataclass(frozen=True)
class ReductionConfig:
    """Arguments are reduced below ``2**-k_reduce`` before summing a series.

    ``k_reduce=None`` picks 50, or 75 for requests beyond ~1000 decimals.
    """

    k_reduce: int | None = None

    def __post_init__(self):
        if self.k_reduce is not None and self.k_reduce < 1:
            raise ValueError("k_reduce must be at least 1")

    def for_grade(self, k: int) -> int:
        if self.k_reduce is not None:
            return self.k_reduce
        return 75 if -k > _HIGH_PRECISION_BITS else 50


DEFAULT_REDUCTION = ReductionConfig()


def _ceil(ops, a) -> int:
    return math.ceil(ops.to_rational(a))


# exp

def exp_series(x: AQ, ops: ApproxRationalOps = DYADIC) -> Real:
    """``exp(-x)`` for ``0 <= x <= 1`` as the alternating sum of ``x**i / i!``."""
    return infinite_alternating_sum(DualStream(stream_powers(x, ops), stream_factorials(ops)), ops)


def exp_halvings(a: AQ, k_reduce: int, ops: ApproxRationalOps = DYADIC) -> int:
    """Number of halvings bringing ``|a|`` below ``2**-k_reduce``."""
    if ops.sign(a) == 0:
        return 0
    return max(0, ops.floor_log2(ops.abs(a)) + k_reduce + 1)


def _square01(ops):
    one = ops.one
    zero = ops.zero

    def step(t):
        if ops.lt(t, zero):
            t = zero
        elif ops.lt(one, t):
            t = one
        return ops.mul(t, t)

    return step


def exp_aq(a: AQ, ops: ApproxRationalOps = DYADIC, config: ReductionConfig = DEFAULT_REDUCTION) -> Real:
    if ops.sign(a) > 0:
        # exp(-a) > 1.5 * 2**-n for n = 2*ceil(a) + 1, so n is a valid witness.
        w = PosWitness(2 * _ceil(ops, a) + 1)
        return real_recip(exp_aq(ops.neg(a), ops, config), w, check=False)
    mag = ops.abs(a)
    square = _square01(ops)

    def fn(k):
        m = exp_halvings(mag, config.for_grade(k), ops)
        seed = exp_series(ops.shiftl(mag, -m), ops)
        # t -> t**2 is Lipschitz 2 on [0, 1].
        return real_iterate(square, 1, m, seed).approx(k)

    return Real(ops, fn)


# sin / cos

def sin_series(p: AQ, q: AQ, ops: ApproxRationalOps = DYADIC) -> Real:
    """``sin(p/q)`` for ``0 <= p/q <= 1`` via terms ``p**(2i+1) / ((2i+1)! q**(2i+1))``."""
    nums = stream_every_other(stream_powers(p, ops), 1)
    dens = stream_zip_mul(
        stream_every_other(stream_factorials(ops), 1),
        stream_every_other(stream_powers(q, ops), 1),
        ops,
    )
    return infinite_alternating_sum(DualStream(nums, dens), ops)


def sin_thirds(a: AQ, k_reduce: int, ops: ApproxRationalOps = DYADIC) -> int:
    """Smallest ``m`` with ``|a| / 3**m < 2**-k_reduce``."""
    mag = ops.abs(a)
    if ops.sign(mag) == 0:
        return 0
    m = max(0, int((ops.floor_log2(mag) + k_reduce) / math.log2(3)) - 1)
    while not ops.lt(mag, ops.shiftl(ops.inject_int(3**m), -k_reduce)):
        m += 1
    return m


def _triple_angle(ops):
    three = ops.inject_int(3)
    four = ops.inject_int(4)

    def step(t):
        t = _clamp(ops, t, 0)
        return ops.sub(ops.mul(three, t), ops.mul(four, ops.pow(t, 3)))

    return step


def sin_aq(a: AQ, ops: ApproxRationalOps = DYADIC, config: ReductionConfig = DEFAULT_REDUCTION) -> Real:
    sign = ops.sign(a)
    if sign < 0:
        return real_neg(sin_aq(ops.neg(a), ops, config))
    if sign == 0:
        return real_return(ops.zero, ops)
    step = _triple_angle(ops)

    def fn(k):
        m = sin_thirds(a, config.for_grade(k), ops)
        seed = sin_series(a, ops.inject_int(3**m), ops)
        # 3t - 4t**3 is Lipschitz 9 <= 2**4 on [-1, 1].
        return real_iterate(step, 4, m, seed).approx(k)

    return Real(ops, fn)


def cos_aq(a: AQ, ops: ApproxRationalOps = DYADIC, config: ReductionConfig = DEFAULT_REDUCTION) -> Real:
    s = sin_aq(ops.shiftl(a, -1), ops, config)
    one, two = ops.one, ops.inject_int(2)

    def step(t):
        t = _clamp(ops, t, 0)
        return ops.sub(one, ops.mul(two, ops.mul(t, t)))

    # 1 - 2t**2 is Lipschitz 4 on [-1, 1].
    return real_iterate(step, 2, 1, s)


# atan / pi

def atan_series(p: AQ, q: AQ, ops: ApproxRationalOps = DYADIC) -> Real:
    """``atan(p/q)`` for ``0 <= p <= q`` via terms ``p**(2i+1) / ((2i+1) q**(2i+1))``."""
    nums = stream_every_other(stream_powers(p, ops), 1)
    dens = stream_zip_mul(stream_odds(ops), stream_every_other(stream_powers(q, ops), 1), ops)
    return infinite_alternating_sum(DualStream(nums, dens), ops)


def pi(ops: ApproxRationalOps = DYADIC) -> Real:
    one = ops.one
    return real_lincomb(
        [(c, atan_series(one, ops.inject_int(q), ops)) for c, q in MACHIN_TERMS], ops
    )


def atan_aq(a: AQ, ops: ApproxRationalOps = DYADIC) -> Real:
    sign = ops.sign(a)
    if sign < 0:
        return real_neg(atan_aq(ops.neg(a), ops))
    if sign == 0:
        return real_return(ops.zero, ops)
    one = ops.one
    if ops.lt(a, ops.pow2(-1)):
        return atan_series(a, one, ops)
    if ops.lt(a, ops.inject_int(2)):
        # atan a = pi/4 + atan((a-1)/(a+1)), and |(a-1)/(a+1)| < 1/3 here.
        p, q = ops.sub(a, one), ops.add(a, one)
        quarter = real_shiftl(pi(ops), -2)
        if ops.sign(p) >= 0:
            return real_add(quarter, atan_series(p, q, ops))
        return real_sub(quarter, atan_series(ops.neg(p), q, ops))
    # atan a = pi/2 - atan(1/a); 1/a <= 1/2 so no witness search is needed.
    return real_sub(real_shiftl(pi(ops), -1), atan_series(one, a, ops))


# Lifting to Real arguments

def _identity(k):
    return k


def real_exp(x: Real, config: ReductionConfig = DEFAULT_REDUCTION) -> Real:
    ops = x.ops
    state = {}

    def modulus(k):
        # exp is Lipschitz e**c <= 2**ceil(3c/2) on (-inf, c], c >= x + 1.
        s = state.get("s")
        if s is None:
            c = _ceil(ops, x.approx(0)) + 2
            s = state["s"] = max(0, (3 * c + 1) // 2)
        return k - s

    return real_bind(UcFun(lambda a: exp_aq(a, ops, config), modulus), x)


def real_sin(x: Real, config: ReductionConfig = DEFAULT_REDUCTION) -> Real:
    ops = x.ops
    return real_bind(UcFun(lambda a: sin_aq(a, ops, config), _identity), x)


def real_cos(x: Real, config: ReductionConfig = DEFAULT_REDUCTION) -> Real:
    ops = x.ops
    return real_bind(UcFun(lambda a: cos_aq(a, ops, config), _identity), x)


def real_atan(x: Real) -> Real:
    ops = x.ops
    return real_bind(UcFun(lambda a: atan_aq(a, ops), _identity), x)


def e_constant(ops: ApproxRationalOps = DYADIC) -> Real:
    return exp_aq(ops.one, ops)
