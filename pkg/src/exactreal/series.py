"""Alternating series over pairs of lazy streams.

The sum of ``(-1)**i * nums[i] / dens[i]`` is computed with approximate
division only. For a request ``2**e`` the engine finds the number of terms
``k`` and the division grade ``l = e - (k + 1)`` from the condition

    |app_div(nums[k], dens[k], l) + 2**l| <= 2**(e - 1)

and all precisions involved stay powers of two.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Iterator

from .approx_rationals import DYADIC, ApproxRationalOps
from .completion import Real
from .errors import ResourceLimitError

AQ = Any


class Stream:
    """A re-iterable lazy sequence; each ``iter()`` starts a fresh cursor."""

    __slots__ = ("_factory",)

    def __init__(self, factory: Callable[[], Iterator]):
        self._factory = factory

    def __iter__(self):
        return self._factory()

    def __getitem__(self, i):
        if isinstance(i, slice):
            if i.step not in (None, 1) or (i.start or 0) < 0 or i.stop is None or i.stop < 0:
                raise IndexError("only forward slices with an explicit stop are supported")
            return list(itertools.islice(iter(self), i.start or 0, i.stop))
        if i < 0:
            raise IndexError("streams are infinite; negative indices are meaningless")
        return next(itertools.islice(iter(self), i, None))

    def map(self, f: Callable[[AQ], AQ]) -> Stream:
        return Stream(lambda: map(f, iter(self)))


def stream_powers(a: AQ, ops: ApproxRationalOps = DYADIC) -> Stream:
    def gen():
        c = ops.one
        while True:
            yield c
            c = ops.mul(c, a)

    return Stream(gen)


def stream_factorials(ops: ApproxRationalOps = DYADIC) -> Stream:
    def gen():
        f, i = 1, 0
        while True:
            yield ops.inject_int(f)
            i += 1
            f *= i

    return Stream(gen)


def stream_odds(ops: ApproxRationalOps = DYADIC) -> Stream:
    return Stream(lambda: (ops.inject_int(2 * i + 1) for i in itertools.count()))


def stream_zip_mul(s: Stream, t: Stream, ops: ApproxRationalOps = DYADIC) -> Stream:
    return Stream(lambda: map(ops.mul, iter(s), iter(t)))


def stream_every_other(s: Stream, start: int = 0) -> Stream:
    return Stream(lambda: itertools.islice(iter(s), start, None, 2))


def stream_const(a: AQ) -> Stream:
    return Stream(lambda: itertools.repeat(a))


@dataclass(frozen=True)
class DualStream:
    """Terms ``nums[i] / dens[i]``; must be non-negative, decreasing, tending to 0."""

    nums: Stream
    dens: Stream


class _Cursor:
    """Memoized view of one stream for a single evaluation."""

    __slots__ = ("_it", "items")

    def __init__(self, stream: Stream):
        self._it = iter(stream)
        self.items = []

    def __getitem__(self, i):
        items = self.items
        while len(items) <= i:
            items.append(next(self._it))
        return items[i]


def term_cap(eps_exp: int) -> int:
    return 64 * abs(eps_exp) + 2**16


def _find_terms(ops, nums, dens, e: int, cap: int) -> int:
    half = ops.pow2(e - 1)
    for k in range(cap + 1):
        l = e - (k + 1)
        t = ops.add(ops.app_div(nums[k], dens[k], l), ops.pow2(l))
        if ops.le(ops.abs(t), half):
            return k
    raise ResourceLimitError(f"alternating series needs more than {cap} terms at precision 2**{e}")


def find_terms(s: DualStream, eps_exp: int, ops: ApproxRationalOps = DYADIC, cap: int | None = None) -> int:
    """Smallest ``k`` meeting the term-count condition for ``eps = 2**eps_exp``."""
    if cap is None:
        cap = term_cap(eps_exp)
    return _find_terms(ops, _Cursor(s.nums), _Cursor(s.dens), eps_exp, cap)


def partial_sum(s: DualStream, k: int, l: int, ops: ApproxRationalOps = DYADIC) -> AQ:
    """``sum((-1)**i * app_div(nums[i], dens[i], l) for i < k)``."""
    return _partial_sum(ops, _Cursor(s.nums), _Cursor(s.dens), k, l)


def _partial_sum(ops, nums, dens, k, l):
    app_div = ops.app_div
    pos = neg = ops.zero
    for i in range(0, k, 2):
        pos = ops.add(pos, app_div(nums[i], dens[i], l))
    for i in range(1, k, 2):
        neg = ops.add(neg, app_div(nums[i], dens[i], l))
    return ops.sub(pos, neg)


def infinite_alternating_sum(s: DualStream, ops: ApproxRationalOps = DYADIC) -> Real:
    def fn(e):
        nums, dens = _Cursor(s.nums), _Cursor(s.dens)
        k = _find_terms(ops, nums, dens, e, term_cap(e))
        return _partial_sum(ops, nums, dens, k, e - (k + 1))

    return Real(ops, fn)
