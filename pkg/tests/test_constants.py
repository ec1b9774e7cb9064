from fractions import Fraction

import mpmath
import pytest

from ramanujan_products.constants import (
    K_REFERENCE_DIGITS,
    EulerKind,
    correct_decimals,
    euler_product_limit,
    euler_product_partial,
    k_convergence_report,
    k_reference,
    landau_ramanujan_partial,
    landau_ramanujan_partial_exact,
    lemma1_limit_check,
    reciprocal_k_expansion_check,
)
from ramanujan_products.rational_core import DomainError, to_bigfloat

PREC = 128


def per_factor_k(primes, prec=PREC + 40):
    """K_n as written: (1/sqrt 2) * prod (1/(1-p^-2))^(1/2), one root per factor."""
    with mpmath.workprec(prec):
        acc = 1 / mpmath.sqrt(2)
        for p in primes:
            acc *= mpmath.sqrt(1 / (1 - mpmath.mpf(1) / p**2))
        return acc


def primes_3_mod_4(count):
    out, n = [], 3
    while len(out) < count:
        if all(n % d for d in range(2, int(n**0.5) + 1)):
            out.append(n)
        n += 4
    return out


def test_partial_examples():
    assert landau_ramanujan_partial_exact(1) == Fraction(3, 4)
    assert landau_ramanujan_partial_exact(4) == Fraction(1463, 1920)
    assert landau_ramanujan_partial(4, PREC) == to_bigfloat(Fraction(1463, 1920), PREC)
    assert landau_ramanujan_partial(1, PREC) == mpmath.mpf(0.75)
    assert landau_ramanujan_partial_exact(5) is None


def test_partial_against_per_factor_oracle():
    primes = primes_3_mod_4(300)
    for n in (1, 2, 9, 57, 300):
        with mpmath.workprec(PREC + 40):
            gap = abs(landau_ramanujan_partial(n, PREC) - per_factor_k(primes[:n]))
        assert gap <= mpmath.ldexp(1, -PREC + 4)


def test_ten_thousand_primes():
    value = landau_ramanujan_partial(10**4, PREC)
    with mpmath.workprec(PREC):
        assert abs(value - k_reference(PREC)) < 5e-7


def test_correct_decimals():
    assert correct_decimals(abs(Fraction(1463, 1920) - Fraction(K_REFERENCE_DIGITS))) == 2
    assert correct_decimals(mpmath.mpf("4.9e-7")) == 6
    assert correct_decimals(Fraction(5, 10**7)) == 5
    assert correct_decimals(0) == 20


def test_convergence_report():
    report = k_convergence_report([1, 4, 100, 10**4], PREC)
    rows = report.rows
    assert [r.num_primes for r in rows] == [1, 4, 100, 10**4]
    assert rows[1].correct_decimals == 2 and rows[1].exact == Fraction(1463, 1920)
    assert rows[-1].correct_decimals >= 6
    assert all(a.abs_error > b.abs_error for a, b in zip(rows, rows[1:]))
    assert report.reference == k_reference(PREC)
    with pytest.raises(ValueError):
        k_convergence_report([4, 1])


def test_partials_increase_below_reference():
    report = k_convergence_report([1, 2, 3, 4, 10, 100, 1000, 10**4], PREC)
    values = [r.value for r in report.rows]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert values[-1] < k_reference(PREC)


@pytest.mark.parametrize("tail", [0, 5, 1000])
def test_reciprocal_expansion(tail):
    assert reciprocal_k_expansion_check(4, tail, PREC)


def test_reciprocal_expansion_head_fixed():
    with pytest.raises(ValueError):
        reciprocal_k_expansion_check(3, 0)


def test_single_factor_euler_products():
    expected = {EulerKind.ONE_MINUS: Fraction(15, 16), EulerKind.RATIO: Fraction(5, 3),
                EulerKind.ONE_PLUS: Fraction(5, 4)}
    for kind, value in expected.items():
        got = euler_product_partial(2, 1, kind, PREC)
        with mpmath.workprec(PREC):
            assert abs(got - to_bigfloat(value, PREC)) <= mpmath.ldexp(1, -PREC + 2)


def test_euler_products_at_two():
    with mpmath.workprec(PREC):
        targets = {
            EulerKind.RATIO: mpmath.mpf(5) / 2,
            EulerKind.ONE_PLUS: 15 / mpmath.pi**2,
            EulerKind.ONE_MINUS: 90 / mpmath.pi**4,
        }
    for kind, target in targets.items():
        with mpmath.workprec(PREC):
            assert abs(euler_product_limit(2, kind, PREC) - target) <= mpmath.ldexp(1, -PREC + 16)
            assert abs(euler_product_partial(2, 10**4, kind, PREC) - target) < 1e-4


def test_euler_product_monotone():
    for kind, sign in [(EulerKind.ONE_MINUS, -1), (EulerKind.ONE_PLUS, 1), (EulerKind.RATIO, 1)]:
        values = [euler_product_partial("2.5", n, kind, 96) for n in range(1, 40)]
        assert all(sign * (b - a) > 0 for a, b in zip(values, values[1:]))


def test_euler_domain():
    with pytest.raises(DomainError):
        euler_product_partial(1, 10, EulerKind.RATIO)
    with pytest.raises(DomainError):
        lemma1_limit_check("0.9", 10)


@pytest.mark.parametrize("s, n", [(2, 1), (2, 100), (3, 50), ("1.5", 500), ("7.25", 20)])
def test_lemma1_limit_check(s, n):
    assert lemma1_limit_check(s, n, PREC) <= mpmath.ldexp(1, -PREC + 16)
