from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import correct_decimals, decimals_agree, sqrt_floor
from realcheck import EPS_GRID, close, close_to, is_regular

from exactreal.approx_rationals import DYADIC, RATIONAL
from exactreal.completion import real_from_rational, real_mul, real_return, real_shiftl, real_sub, to_decimal
from exactreal.dyadic import Dyadic
from exactreal.errors import DomainError
from exactreal.functions import pi
from exactreal.roots import (
    WolframState,
    real_sqrt,
    sqrt_aq,
    sqrt_core,
    wolfram_iterate,
    wolfram_step,
    wolfram_steps_for,
)

backend = pytest.mark.parametrize("ops", [DYADIC, RATIONAL], ids=lambda o: o.name)
D = Dyadic
# a in [1, 4] with up to 30 fractional bits
unit_range = st.integers(2**30, 2**32).map(lambda m: Dyadic(m, -30))


def ret(n, ops=DYADIC):
    return real_return(ops.inject_int(n), ops)


def invariants_hold(a, n_max):
    """Check all four recurrence invariants exactly along the first n_max steps."""
    a = a.to_fraction()
    r, s = Fraction(a), Fraction(0)
    history = [s]
    for n in range(n_max + 1):
        if s * s + 4 * r != 4 ** (n + 1) * a:
            return False
        if not (r <= 2 * s + 4 and r <= 2 ** (3 + n)):
            return False
        r, s = (4 * (r - s - 1), 2 * (s + 2)) if s + 1 <= r else (4 * r, 2 * s)
        history.append(s)
    for n, sn in enumerate(history):
        for m in range(0, len(history) - n, 17):
            if not (2**m * sn <= history[n + m] <= 2**m * (sn + 4) - 4):
                return False
    return True


class TestWolfram:
    def test_a_one(self):
        states = [wolfram_iterate(D(1), n) for n in range(4)]
        assert [(st.r, st.s) for st in states] == [(1, 0), (0, 4), (0, 8), (0, 16)]
        assert all(DYADIC.shiftl(st.s, -(st.n + 1)) == 1 for st in states[1:])

    def test_a_two(self):
        assert [(st.r, st.s) for st in (wolfram_iterate(D(2), n) for n in (1, 2, 3))] == [
            (4, 4), (16, 8), (28, 20)
        ]
        st3 = wolfram_iterate(D(2), 3)
        assert st3 == WolframState(D(28), D(20), 3)
        assert st3.s * st3.s + 4 * st3.r == 512 == 4**4 * 2

    def test_step_matches_library(self):
        a = D(5, -1)
        r, s = a, D(0)
        for n in range(1, 50):
            r, s = wolfram_step(r, s)
            st = wolfram_iterate(a, n)
            assert (st.r, st.s) == (r, s)

    def test_domain(self):
        with pytest.raises(DomainError):
            wolfram_iterate(D(5), 3)
        with pytest.raises(DomainError):
            wolfram_iterate(D(1, -1), 3)
        with pytest.raises(ValueError):
            wolfram_iterate(D(2), -1)

    @settings(max_examples=100)
    @given(unit_range)
    def test_invariants(self, a):
        assert invariants_hold(a, 200)

    @backend
    def test_invariants_library_states(self, ops):
        a = ops.from_rational_within(Fraction(3), Fraction(1, 8))
        for n in (0, 1, 7, 64, 200):
            st = wolfram_iterate(a, n, ops)
            r, s = ops.to_rational(st.r), ops.to_rational(st.s)
            assert s * s + 4 * r == 4 ** (n + 1) * 3
            assert r <= 2 * s + 4 and r <= 2 ** (3 + n)

    @pytest.mark.parametrize("a", [2, 3])
    @pytest.mark.parametrize("n", [10, 50, 200, 1000])
    def test_rate(self, a, n):
        st = wolfram_iterate(D(a), n)
        got = correct_decimals(DYADIC.to_rational(st.s) / 2 ** (n + 1), a, int(0.301 * n) + 10)
        assert got >= int(0.301 * n) - 2

    def test_steps_for(self):
        assert [wolfram_steps_for(k) for k in (5, 1, 0, -1, -10)] == [1, 1, 2, 3, 12]


class TestSqrtCore:
    @backend
    def test_examples(self, ops):
        assert close_to(sqrt_core(ops.inject_int(4), ops), 2, Fraction(1, 2**100))
        s = to_decimal(sqrt_core(ops.inject_int(2), ops), 100)
        assert abs(Fraction(s) - sqrt_floor(2, 110)) <= Fraction(1, 10**100)

    @settings(max_examples=40)
    @given(unit_range, st.integers(-200, 2))
    def test_bound(self, a, k):
        s = sqrt_core(a).approx(k).to_fraction()
        v = a.to_fraction()
        assert s * s <= v <= (s + Fraction(2) ** k) ** 2

    @settings(max_examples=20)
    @given(unit_range)
    def test_square(self, a):
        x = sqrt_core(a)
        assert close_to(real_mul(x, x), a.to_fraction(), Fraction(1, 10**40))

    def test_domain(self):
        with pytest.raises(DomainError):
            sqrt_core(D(9))


class TestRealSqrt:
    @backend
    def test_examples(self, ops):
        assert close_to(real_sqrt(ret(0, ops)), 0, Fraction(1, 2**60))
        big = real_sqrt(ret(10**6, ops))
        assert all(close_to(big, 1000, e) for e, _ in EPS_GRID)
        assert is_regular(big)

    def test_sqrt_pi_backends(self):
        a, b = to_decimal(real_sqrt(pi()), 100), to_decimal(real_sqrt(pi(RATIONAL)), 100)
        assert decimals_agree(a, b, 100)
        assert a.startswith("1.77245385090551602729816748334114518279754945612238712821380778985291")

    @backend
    def test_small_and_large(self, ops):
        for q in (Fraction(1, 10**9), Fraction(2, 7), Fraction(10**30 + 7)):
            x = real_sqrt(real_from_rational(q, ops))
            v = ops.to_rational(x.approximate(Fraction(1, 10**40)))
            assert abs(v * v - q) <= Fraction(3, 10**40) * (1 + 2 * isqrt(int(q) + 1))
            assert is_regular(x)

    def test_sqrt_aq_scaling(self):
        for a in (D(1, -40), D(3, -7), D(17), D(5, 61)):
            x = sqrt_aq(a)
            assert close_to(real_mul(x, x), a.to_fraction(), Fraction(1, 2**80))
        with pytest.raises(DomainError):
            sqrt_aq(D(-1))

    @settings(max_examples=30)
    @given(st.fractions(min_value=0, max_value=10**6, max_denominator=10**6))
    def test_scaling_identity(self, q):
        x = real_from_rational(q)
        lhs = real_sqrt(real_shiftl(x, 2))
        rhs = real_shiftl(real_sqrt(x), 1)
        for e, _ in EPS_GRID[::4]:
            assert close(lhs, rhs, e)

    @settings(max_examples=30)
    @given(st.fractions(min_value=-1000, max_value=1000, max_denominator=1000))
    def test_sqrt_of_square_is_abs(self, q):
        x = real_from_rational(q)
        r = real_sqrt(real_mul(x, x))
        for e, _ in EPS_GRID[::4]:
            assert close_to(r, abs(q), e)

    def test_negative(self):
        with pytest.raises(DomainError):
            real_sqrt(ret(-1)).approximate(Fraction(1, 100))

    def test_clamp_zero_difference(self):
        r2 = real_sqrt(ret(2))
        z = real_sub(real_mul(r2, r2), ret(2))
        assert all(close_to(real_sqrt(z), 0, e) for e, _ in EPS_GRID)
