import math
import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from ramanujan_products.identities import telescope_linear
from ramanujan_products.numerics import (
    QuadratureConfig,
    bernoulli,
    gamma_ratio_float,
    integral_sqrt_log,
    lngamma,
    zeta,
)
from ramanujan_products.rational_core import DomainError, to_bigfloat

PREC = 128


def close(a, b, bits):
    with mpmath.workprec(PREC + 32):
        return abs(a - b) <= mpmath.ldexp(1, -bits)


def test_bernoulli():
    assert [bernoulli(k) for k in (0, 1, 2, 4, 6, 8, 16)] == [
        1, Fraction(-1, 2), Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
        Fraction(-3617, 510),
    ]


def test_lngamma_examples():
    assert close(lngamma(1, PREC), 0, PREC - 8)
    with mpmath.workprec(PREC + 32):
        assert close(lngamma(5, PREC), mpmath.log(24), PREC - 8)
        # reflection: Gamma(1/2)^2 = pi / sin(pi/2)
        assert close(lngamma(mpmath.mpf(0.5), PREC), mpmath.log(mpmath.pi) / 2, PREC - 8)
    with pytest.raises(DomainError):
        lngamma(0)


def test_lngamma_against_factorials():
    for n in range(1, 60):
        with mpmath.workprec(PREC + 32):
            assert close(lngamma(n, PREC), mpmath.log(math.factorial(n - 1)), PREC - 10)


def test_lngamma_functional_equation():
    rng = random.Random(11)
    for _ in range(1000):
        x = to_bigfloat(Fraction(rng.randint(1, 10**6), 10**4), PREC)
        with mpmath.workprec(PREC + 32):
            gap = lngamma(x + 1, PREC) - lngamma(x, PREC) - mpmath.log(x)
        assert abs(gap) <= mpmath.ldexp(1, -PREC + 12)


def test_lngamma_against_library():
    for x in ("0.001", "0.3", "2.5", "17.25", "99.9"):
        with mpmath.workprec(PREC + 32):
            assert close(lngamma(mpmath.mpf(x), PREC), mpmath.loggamma(mpmath.mpf(x)), PREC - 10)


@pytest.mark.parametrize("u, v, m, n, expected", [(1, 0, 2, 4, 10), (2, 1, 1, 3, 4), (2, 0, 1, 1, 3)])
def test_gamma_ratio_examples(u, v, m, n, expected):
    g = gamma_ratio_float(u, v, m, n, PREC)
    assert abs(g - expected) < 1e-10
    assert telescope_linear(u, v, m, n) == expected


def test_gamma_ratio_rejects_nonpositive():
    with pytest.raises(DomainError):
        gamma_ratio_float(1, 0, 1, 3)  # Gamma(0)


def test_zeta_classical_values():
    with mpmath.workprec(PREC + 32):
        assert close(zeta(2, PREC), mpmath.pi**2 / 6, PREC - 16)
        assert close(zeta(4, PREC), mpmath.pi**4 / 90, PREC - 16)
        assert close(zeta(2, PREC) ** 2 / zeta(4, PREC), mpmath.mpf(5) / 2, 66)
        assert close(zeta(6, PREC), mpmath.pi**6 / 945, PREC - 16)


def test_zeta_against_direct_summation():
    # s = 8: direct sum to 10^4 leaves a tail below 10^-28
    with mpmath.workprec(PREC):
        direct = mpmath.fsum(mpmath.mpf(k) ** -8 for k in range(1, 10**4))
        assert abs(zeta(8, PREC) - direct) < mpmath.mpf(10) ** -27


@pytest.mark.parametrize("s", ["1.001", "1.5", "2.5", "3", "10", "64"])
def test_zeta_against_library(s):
    with mpmath.workprec(PREC + 32):
        ref = mpmath.zeta(mpmath.mpf(s))
        assert abs(zeta(s, PREC) - ref) <= mpmath.ldexp(1, -PREC + 16) * max(1, ref)


def test_zeta_decreasing_and_domain():
    values = [zeta(s, 64) for s in ("1.1", "1.5", "2", "3", "5", "10", "40")]
    assert all(a > b for a, b in zip(values, values[1:]))
    with pytest.raises(DomainError):
        zeta(1)
    with pytest.raises(DomainError):
        zeta("0.5")


def test_zeta_high_precision():
    with mpmath.workprec(300):
        assert abs(zeta(3, 256) - mpmath.zeta(3)) <= mpmath.ldexp(1, -240)


def trapezoid_oracle(a, b, panels=10**7):
    t = np.linspace(a, b, panels + 1)
    f = 1 / np.sqrt(np.log(t))
    h = (b - a) / panels
    return h * (f.sum() - 0.5 * (f[0] + f[-1]))


def test_integral_examples():
    assert integral_sqrt_log(5, 5) == 0
    value = integral_sqrt_log(2, 10)
    assert abs(float(value) - trapezoid_oracle(2.0, 10.0)) < 1e-12
    with pytest.raises(DomainError):
        integral_sqrt_log(1, 10)
    with pytest.raises(DomainError):
        integral_sqrt_log("0.5", 10)


def test_integral_against_tanh_sinh():
    with mpmath.workprec(PREC):
        ref = mpmath.quad(lambda t: 1 / mpmath.sqrt(mpmath.log(t)), [3, 10, 100, 1000])
        assert abs(integral_sqrt_log(3, 1000) - ref) < 1e-12


def test_integral_bracket():
    A, x = 2, 10**6
    value = integral_sqrt_log(A, x)
    with mpmath.workprec(PREC):
        assert (x - A) / mpmath.sqrt(mpmath.log(x)) < value < (x - A) / mpmath.sqrt(mpmath.log(A))


def test_integral_additive():
    tol = mpmath.mpf("1e-12")
    cfg = QuadratureConfig(abs_tolerance=tol)
    whole = integral_sqrt_log(2, 500, cfg)
    parts = integral_sqrt_log(2, 37, cfg) + integral_sqrt_log(37, 500, cfg)
    assert abs(whole - parts) <= 2 * tol


def test_quadrature_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(abs_tolerance=mpmath.mpf(0))
    with pytest.raises(ValueError):
        QuadratureConfig(max_depth=0)
