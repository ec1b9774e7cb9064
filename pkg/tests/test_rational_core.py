from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramanujan_products.rational_core import (
    DomainError,
    LinearForm,
    RationalPoly,
    as_rational,
    exact_sqrt,
    isqrt,
    poly_equal,
    poly_eval,
    poly_mul,
    poly_sub,
    to_bigfloat,
)

A = RationalPoly.x()
ONE = RationalPoly.constant(1)

small_polys = st.lists(
    st.fractions(min_value=-50, max_value=50, max_denominator=20), max_size=6
).map(RationalPoly)


@pytest.mark.parametrize("n, expected", [(0, (0, True)), (9216, (96, True)), (10, (3, False))])
def test_isqrt_examples(n, expected):
    assert isqrt(n) == expected


def test_isqrt_negative():
    with pytest.raises(DomainError):
        isqrt(-1)


@given(st.integers(min_value=0, max_value=10**6))
def test_isqrt_bracket(n):
    root, exact = isqrt(n)
    assert root * root <= n < (root + 1) ** 2
    assert exact == (root * root == n)


def test_exact_sqrt_examples():
    assert exact_sqrt(Fraction(25, 4)) == Fraction(5, 2)
    assert exact_sqrt(Fraction(9216, 11025)) == Fraction(96, 105) == Fraction(32, 35)
    assert exact_sqrt(Fraction(2)) is None
    with pytest.raises(DomainError):
        exact_sqrt(Fraction(-1, 4))


@given(st.integers(0, 10**6), st.integers(1, 10**6))
def test_exact_sqrt_roundtrip(p, q):
    r = Fraction(p, q)
    assert exact_sqrt(r * r) == r


def test_canonical_form():
    q = Fraction(-6, -4)
    assert (q.numerator, q.denominator) == (3, 2)
    assert Fraction(0, -7) == Fraction(0, 1) and Fraction(0, -7).denominator == 1
    with pytest.raises(ZeroDivisionError):
        Fraction(1, 0)


def test_as_rational_rejects_decimals():
    assert as_rational("-2/5") == Fraction(-2, 5)
    with pytest.raises(ValueError):
        as_rational("0.5")
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_poly_examples():
    assert poly_equal(RationalPoly([1, 2, 1]), poly_mul(A + ONE, A + ONE))
    assert poly_equal(A, RationalPoly([0, 1, 0]))
    assert not poly_equal(A, A + ONE)
    assert poly_eval(A * A - ONE, 3) == 8
    assert poly_equal(poly_mul(A + ONE, A - ONE), RationalPoly([-1, 0, 1]))
    p = RationalPoly([3, Fraction(1, 2), 7])
    zero = poly_sub(p, p)
    assert zero.is_zero() and zero.degree == float("-inf")


@settings(max_examples=60)
@given(small_polys, small_polys, small_polys, st.fractions(min_value=-10, max_value=10, max_denominator=10))
def test_poly_ring_laws(p, q, r, a):
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert poly_eval(p * q, a) == poly_eval(p, a) * poly_eval(q, a)
    assert poly_eval(p - q, a) == poly_eval(p, a) - poly_eval(q, a)
    for c in (p * q).coefficients:
        assert c.denominator > 0


def test_to_bigfloat():
    v = to_bigfloat(Fraction(1463, 1920), 64)
    assert mpmath.nstr(v, 18).startswith("0.7619791666666666")
    assert to_bigfloat(Fraction(0), 64) == 0
    with mpmath.workprec(256):
        third = mpmath.mpf(1) / 3
        lo, hi = to_bigfloat(Fraction(1, 3), 16), to_bigfloat(Fraction(1, 3), 128)
        assert lo != hi
        assert abs(lo - third) <= mpmath.ldexp(1, -18)
        assert abs(hi - third) <= mpmath.ldexp(1, -130)
    with pytest.raises(ValueError):
        to_bigfloat(Fraction(1, 3), 8)


def test_to_bigfloat_ties_to_even():
    # 2^16 + 1 halfway at 16 bits -> rounds to even mantissa 2^16
    assert to_bigfloat(Fraction(2**17 + 1), 16) == 2**17
    assert to_bigfloat(Fraction(2**17 + 3), 16) == 2**17 + 4


def test_linear_form():
    f = LinearForm(3, 2)
    assert f(Fraction(-1, 3)) == 1
    assert f.root() == Fraction(-2, 3)
    assert poly_eval(f.as_poly(), 5) == 17
    with pytest.raises(DomainError):
        LinearForm(0, 1)
