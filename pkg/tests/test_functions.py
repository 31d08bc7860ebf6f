from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import (
    atan_enclosure,
    decimal_within,
    decimals_agree,
    exp_enclosure,
    machin_pi_enclosure,
    sin_enclosure,
)
from realcheck import close, close_to, is_regular

from exactreal.approx_rationals import DYADIC, RATIONAL
from exactreal.completion import (
    real_add,
    real_from_rational,
    real_mul,
    real_neg,
    real_return,
    real_shiftl,
    real_sub,
    to_decimal,
)
from exactreal.dyadic import Dyadic
from exactreal.functions import (
    MACHIN_TERMS,
    DualStream,
    ReductionConfig,
    atan_aq,
    atan_series,
    cos_aq,
    e_constant,
    exp_aq,
    exp_halvings,
    pi,
    real_atan,
    real_cos,
    real_exp,
    real_sin,
    sin_aq,
    sin_thirds,
)
from exactreal.series import stream_every_other, stream_factorials, stream_powers, stream_zip_mul

backend = pytest.mark.parametrize("ops", [DYADIC, RATIONAL], ids=lambda o: o.name)
D = Dyadic
EPS40 = Fraction(1, 10**40)
small = st.builds(Dyadic, st.integers(-(2**20), 2**20), st.integers(-18, -16))  # |a| <= 16
in8 = st.builds(Dyadic, st.integers(-(2**23), 2**23), st.just(-20))  # |a| <= 8


def ret(n, ops=DYADIC):
    return real_return(ops.inject_int(n), ops)


def within_enclosure(x, lo, hi, eps):
    a = x.ops.to_rational(x.approximate(eps))
    return lo - eps <= a <= hi + eps


class TestExp:
    @backend
    def test_zero(self, ops):
        assert close_to(exp_aq(ops.zero, ops), 1, Fraction(1, 2**100))
        assert close_to(real_exp(ret(0, ops)), 1, Fraction(1, 2**100))

    @backend
    def test_minus_one_50(self, ops):
        lo, hi = exp_enclosure(-1, Fraction(1, 10**60))
        x = exp_aq(ops.neg(ops.one), ops)
        assert within_enclosure(x, lo, hi, Fraction(1, 10**50))
        assert to_decimal(x, 32) == "0.36787944117144232159552377016146"

    @backend
    def test_inverse_pair(self, ops):
        p = real_mul(exp_aq(ops.one, ops), exp_aq(ops.neg(ops.one), ops))
        assert close_to(p, 1, EPS40)

    @settings(max_examples=25)
    @given(small, small)
    def test_additive(self, a, b):
        lhs = exp_aq(a + b)
        rhs = real_mul(exp_aq(a), exp_aq(b))
        assert close(lhs, rhs, Fraction(1, 10**30))

    @settings(max_examples=25)
    @given(in8, st.integers(2, 60))
    def test_reduction_closes(self, a, kr):
        # k_reduce + 1 means exactly one more halving (and squaring)
        if exp_halvings(a, kr):
            assert exp_halvings(a, kr + 1) == exp_halvings(a, kr) + 1
        x = exp_aq(a, config=ReductionConfig(kr))
        y = exp_aq(a, config=ReductionConfig(kr + 1))
        assert close(x, y, Fraction(1, 2**120))

    def test_regular(self):
        assert is_regular(exp_aq(D(-3, -1)))
        assert is_regular(exp_aq(D(5)))
        assert is_regular(real_exp(pi()))

    def test_e(self):
        assert to_decimal(e_constant(), 30) == "2.718281828459045235360287471353"


class TestSinCos:
    @backend
    def test_zero(self, ops):
        assert close_to(sin_aq(ops.zero, ops), 0, Fraction(1, 2**100))
        assert close_to(cos_aq(ops.zero, ops), 1, Fraction(1, 2**100))

    @backend
    def test_sin_one_50(self, ops):
        lo, hi = sin_enclosure(1, Fraction(1, 10**60))
        assert within_enclosure(sin_aq(ops.one, ops), lo, hi, Fraction(1, 10**50))
        assert to_decimal(sin_aq(ops.one, ops), 32) == "0.84147098480789650665250232163030"

    @backend
    @pytest.mark.parametrize("x", [1, -2, 10])
    def test_pythagoras(self, ops, x):
        a = ops.inject_int(x)
        s, c = sin_aq(a, ops), cos_aq(a, ops)
        assert close_to(real_add(real_mul(s, s), real_mul(c, c)), 1, EPS40)

    @backend
    def test_p01_25_digits(self, ops):
        # sin is increasing on [0, 1], so the image of an enclosure is an enclosure.
        tol = Fraction(1, 10**35)
        lo, hi = Fraction(1), Fraction(1)
        for _ in range(3):
            lo, hi = sin_enclosure(lo, tol)[0], sin_enclosure(hi, tol)[1]
        x = real_sin(real_sin(real_sin(ret(1, ops))))
        assert decimal_within(to_decimal(x, 25), lo, hi, 25)

    def test_cos_huge_argument(self):
        arg = 10**50
        a = real_cos(real_return(D(arg)))
        b = real_cos(real_return(Fraction(arg), RATIONAL))
        da, db = to_decimal(a, 60), to_decimal(b, 60)
        assert decimals_agree(da, db, 60)
        assert da.startswith("-0.61352860823366356226485295130")

    @settings(max_examples=25)
    @given(in8)
    def test_odd_even(self, a):
        eps = Fraction(1, 2**100)
        assert close(sin_aq(-a), real_neg(sin_aq(a)), eps)
        assert close(cos_aq(-a), cos_aq(a), eps)

    @settings(max_examples=20)
    @given(in8, st.integers(2, 60))
    def test_triple_angle_closes(self, a, kr):
        x = sin_aq(a, config=ReductionConfig(kr))
        y = sin_aq(a, config=ReductionConfig(kr + 2))
        assert sin_thirds(a, kr + 2) >= sin_thirds(a, kr)
        assert close(x, y, Fraction(1, 2**120))

    def test_regular(self):
        assert is_regular(sin_aq(D(7)))
        assert is_regular(cos_aq(D(-3, -2)))
        assert is_regular(real_sin(pi()))
        assert is_regular(real_cos(pi()))


class TestAtanPi:
    @backend
    def test_zero_and_one(self, ops):
        assert close_to(atan_aq(ops.zero, ops), 0, Fraction(1, 2**100))
        assert close(real_shiftl(atan_aq(ops.one, ops), 2), pi(ops), EPS40)

    @backend
    def test_atan_57_40(self, ops):
        lo, hi = atan_enclosure(Fraction(1, 57), Fraction(1, 10**50))
        x = atan_series(ops.one, ops.inject_int(57), ops)
        assert within_enclosure(x, lo, hi, EPS40)

    @backend
    def test_pi_20(self, ops):
        lo, hi = machin_pi_enclosure(Fraction(1, 10**30))
        s = to_decimal(pi(ops), 20)
        assert decimal_within(s, lo, hi, 20)
        assert abs(Fraction(s) - Fraction("3.14159265358979323846")) <= Fraction(1, 10**20)
        assert close_to(real_sub(pi(ops), pi(ops)), 0, Fraction(1, 2**200))

    def test_machin_constants(self):
        assert MACHIN_TERMS == ((176, 57), (28, 239), (-48, 682), (96, 12943))

    @settings(max_examples=40)
    @given(st.fractions(min_value=-50, max_value=50, max_denominator=1000))
    def test_bounded(self, q):
        a = RATIONAL.from_rational_within(q, Fraction(1, 2**10))
        eps = Fraction(1, 2**40)
        _, pi_hi = machin_pi_enclosure(Fraction(1, 10**15))
        v = RATIONAL.to_rational(atan_aq(a, RATIONAL).approximate(eps))
        assert abs(v) <= pi_hi / 2 + eps

    @settings(max_examples=25)
    @given(st.fractions(min_value=Fraction(1, 2), max_value=40, max_denominator=1000))
    def test_reductions_agree(self, q):
        # reduce1 and reduce2 both apply to any positive argument; compare them with the dispatcher.
        R = RATIONAL
        x = atan_aq(q, R)
        half_pi, quarter_pi = real_shiftl(pi(R), -1), real_shiftl(pi(R), -2)
        via1 = real_sub(half_pi, atan_series(R.one, q, R) if q >= 1 else atan_aq(1 / q, R))
        p = q - 1
        tail = atan_aq(p / (q + 1), R)
        via2 = real_add(quarter_pi, tail)
        eps = Fraction(1, 2**100)
        assert close(x, via1, eps) and close(x, via2, eps)

    @settings(max_examples=25)
    @given(st.fractions(min_value=-30, max_value=30, max_denominator=100))
    def test_odd(self, q):
        R = RATIONAL
        assert close(atan_aq(-q, R), real_neg(atan_aq(q, R)), Fraction(1, 2**100))

    def test_regular(self):
        assert is_regular(pi())
        assert is_regular(atan_aq(D(3, -2)))
        assert is_regular(atan_aq(D(-7)))
        assert is_regular(real_atan(e_constant()))


@pytest.mark.parametrize("a", [Fraction(1, 3), Fraction(7, 8), Fraction(1)])
def test_reduced_series_are_admissible(a):
    """Forced prefixes of the series actually summed are non-negative and decreasing."""
    R = RATIONAL
    for kr in (3, 50):
        m = exp_halvings(a, kr, R)
        x = a / 2**m
        exp_terms = [x**i / f for i, f in zip(range(30), stream_factorials(R))]
        j = sin_thirds(a, kr, R)
        nums = stream_every_other(stream_powers(a, R), 1)
        dens = stream_zip_mul(stream_every_other(stream_factorials(R), 1),
                              stream_every_other(stream_powers(Fraction(3**j), R), 1), R)
        sin_terms = [n / d for n, d in zip(nums[0:30], dens[0:30])]
        for terms in (exp_terms, sin_terms):
            assert all(t >= 0 for t in terms)
            assert all(u >= v for u, v in zip(terms, terms[1:]))
    assert DualStream  # re-exported for building custom series


@pytest.mark.parametrize("digits", [10, 200])
def test_lifted_agree_across_backends(digits):
    x = real_from_rational(Fraction(2, 3))
    y = real_from_rational(Fraction(2, 3), RATIONAL)
    for f in (real_exp, real_sin, real_cos, real_atan):
        assert decimals_agree(to_decimal(f(x), digits), to_decimal(f(y), digits), digits)
