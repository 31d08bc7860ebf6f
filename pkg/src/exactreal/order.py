"""Order, apartness and division on reals.

``x < y`` is only semi-decidable: a witness ``n`` with
``2**-n < approx(y - x, 2**(-n-1))`` proves it, and the search for one is
bounded by ``n_max``. Failing to find a witness refutes nothing.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .completion import Real, pos_rational, real_mul, real_return, real_sub
from .dyadic import Ordering
from .errors import InvalidWitness, WitnessNotFound


@dataclass(frozen=True)
class PosWitness:
    """Witness ``2**-n < approx(d, 2**(-n-1))`` for some difference ``d``.

    It certifies ``d > 2**-(n+1)``.
    """

    n: int

    @property
    def lower_exp(self) -> int:
        """``b`` such that the witnessed value is at least ``2**-b``."""
        return self.n + 1

    def holds_for(self, d: Real) -> bool:
        ops = d.ops
        return ops.lt(ops.pow2(-self.n), d.approx(-self.n - 1))


def nonneg_upto(x: Real, eps) -> bool:
    """``-eps <= approximate(x, eps)``. A single ``False`` refutes ``x >= 0``."""
    eps = pos_rational(eps)
    return -eps <= x.ops.to_rational(x.approximate(eps))


def lt_witness_search(x: Real, y: Real, n_max: int) -> Optional[PosWitness]:
    """Smallest ``n <= n_max`` witnessing ``x < y``, or ``None``."""
    d = real_sub(y, x)
    for n in range(n_max + 1):
        w = PosWitness(n)
        if w.holds_for(d):
            return w
    return None


def apart_witness(x: Real, y: Real, n_max: int) -> Optional[tuple[Ordering, PosWitness]]:
    """Search both directions, alternating at each ``n``.

    Returns ``(Ordering.LT, w)`` when ``w`` proves ``x < y`` and
    ``(Ordering.GT, w)`` when it proves ``y < x``.
    """
    up, down = real_sub(y, x), real_sub(x, y)
    for n in range(n_max + 1):
        w = PosWitness(n)
        if w.holds_for(up):
            return Ordering.LT, w
        if w.holds_for(down):
            return Ordering.GT, w
    return None


def real_recip(x: Real, w: PosWitness, side: Ordering | None = None, check: bool = True) -> Real:
    """``1/x`` given a witness that ``|x|`` is bounded away from zero.

    ``side`` says whether ``w`` witnesses ``0 < x`` (LT) or ``x < 0`` (GT),
    as returned by ``apart_witness(0, x)``; ``None`` means ``w`` is a witness
    for ``|x|`` directly.
    """
    ops = x.ops
    if check:
        zero = real_return(ops.zero, ops)
        target = {Ordering.LT: real_sub(x, zero), Ordering.GT: real_sub(zero, x)}.get(side)
        if target is None:
            a = ops.abs(x.approx(-w.n - 1))
            ok = ops.lt(ops.pow2(-w.n), a)
        else:
            ok = w.holds_for(target)
        if not ok:
            raise InvalidWitness(f"witness n={w.n} is falsified by direct evaluation")
    b = w.lower_exp  # |x| >= 2**-b
    floor = ops.pow2(-b - 1)
    one = ops.one
    xfn = x._fn

    def fn(k):
        # 1/t is Lipschitz 2**(2b+2) on |t| >= 2**(-b-1).
        a = xfn(min(k - 2 * b - 3, -b - 1))
        if ops.lt(ops.abs(a), floor):
            raise InvalidWitness(f"|x| < 2**-{b} contradicts witness n={w.n}")
        return ops.app_div(one, a, k - 1)

    return Real(ops, fn)


def real_div(x: Real, y: Real, n_max: int) -> Real:
    found = apart_witness(real_return(y.ops.zero, y.ops), y, n_max)
    if found is None:
        raise WitnessNotFound(n_max)
    side, w = found
    return real_mul(x, real_recip(y, w, check=False))
