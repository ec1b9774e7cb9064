"""Multiprecision log-gamma, real zeta and adaptive Simpson quadrature.

All routines take a ``precision_bits`` argument and evaluate inside an
``mpmath.workprec`` block with a few guard bits, rounding the result back to
the requested precision on exit.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .rational_core import DomainError, RationalLike, as_rational, to_bigfloat

DEFAULT_PRECISION = 128
GUARD_BITS = 24


@functools.lru_cache(maxsize=None)
def bernoulli_numbers(count: int) -> tuple[Fraction, ...]:
    """B_0 .. B_{count-1} exactly (B_1 = -1/2 convention), Akiyama-Tanigawa.

    Cached per ``count``; the computation is deterministic, so concurrent
    first calls at worst duplicate work.
    """
    out = []
    row: list[Fraction] = []
    for m in range(count):
        row.append(Fraction(1, m + 1))
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        out.append(row[0])
    if count > 1:
        out[1] = -out[1]
    return tuple(out)


def bernoulli(k: int) -> Fraction:
    return bernoulli_numbers(k + 1)[k]


def _round(x: mpmath.mpf, precision_bits: int) -> mpmath.mpf:
    with mpmath.workprec(precision_bits):
        return +x


def lngamma(x, precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """log Gamma(x) for real x > 0.

    Shifts x upward with Gamma(t+1) = t Gamma(t) until x >= 10 + precision/8,
    then sums the Stirling series until its terms drop below the working
    precision. At that threshold the smallest Stirling term is about
    exp(-2 pi x), far below 2**-precision.
    """
    work = precision_bits + GUARD_BITS
    with mpmath.workprec(work):
        x = mpmath.mpf(x)
        if x <= 0:
            raise DomainError(f"lngamma needs x > 0, got {x}")
        threshold = 10 + precision_bits / 8
        shift = mpmath.mpf(1)
        while x < threshold:
            shift *= x
            x += 1
        result = (x - mpmath.mpf(0.5)) * mpmath.log(x) - x + mpmath.log(2 * mpmath.pi) / 2
        eps = mpmath.ldexp(1, -work)
        inv_x2 = 1 / (x * x)
        power = 1 / x
        k = 1
        prev = None
        while True:
            b = bernoulli(2 * k)
            term = mpmath.mpf(b.numerator) / (b.denominator * (2 * k) * (2 * k - 1)) * power
            if prev is not None and abs(term) > abs(prev):
                break  # asymptotic series started to diverge
            result += term
            if abs(term) < eps * max(1, abs(result)):
                break
            prev = term
            power *= inv_x2
            k += 1
        result -= mpmath.log(shift)
    return _round(result, precision_bits)


@functools.lru_cache(maxsize=8192)
def _lngamma_rational(q: Fraction, precision_bits: int) -> mpmath.mpf:
    return lngamma(to_bigfloat(q, precision_bits + GUARD_BITS), precision_bits + GUARD_BITS)


def gamma_ratio_arguments(u: RationalLike, v: RationalLike, m: int, n: int) -> tuple[Fraction, ...]:
    """(m+(v-1)/u, n+(v+1)/u+1, m+(v+1)/u, n+(v-1)/u+1): numerator pair then denominator pair."""
    u, v = as_rational(u), as_rational(v)
    if u == 0:
        raise DomainError("u must be nonzero")
    lo, hi = (v - 1) / u, (v + 1) / u
    return (m + lo, n + hi + 1, m + hi, n + lo + 1)


def gamma_ratio_float(u: RationalLike, v: RationalLike, m: int, n: int,
                      precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Gamma(m+v/u-1/u) Gamma(n+v/u+1/u+1) / (Gamma(m+v/u+1/u) Gamma(n+v/u-1/u+1))."""
    args = gamma_ratio_arguments(u, v, m, n)
    for t in args:
        if t <= 0:
            raise DomainError(f"gamma argument {t} is not positive")
    work = precision_bits + GUARD_BITS
    lg = [_lngamma_rational(t, precision_bits) for t in args]
    with mpmath.workprec(work):
        value = mpmath.exp(lg[0] + lg[1] - lg[2] - lg[3])
    return _round(value, precision_bits)


def _pochhammer(s: mpmath.mpf, j: int) -> mpmath.mpf:
    acc = mpmath.mpf(1)
    for i in range(j):
        acc *= s + i
    return acc


def _em_term(s, k: int, big_n) -> mpmath.mpf:
    b = bernoulli(2 * k)
    coeff = mpmath.mpf(b.numerator) / b.denominator / mpmath.factorial(2 * k)
    return coeff * _pochhammer(s, 2 * k - 1) * big_n ** (-s - 2 * k + 1)


def zeta(s, precision_bits: int = DEFAULT_PRECISION, bernoulli_terms: int = 8,
         max_direct_terms: int = 1 << 16) -> mpmath.mpf:
    """Riemann zeta for real s > 1 by Euler-Maclaurin summation.

    Sums n^-s for n < N directly, then adds the integral tail, the half
    endpoint term and ``bernoulli_terms`` corrections (B_2 .. B_16 by
    default). N is doubled until the first omitted correction is below the
    working precision; more corrections are used only if N would exceed
    ``max_direct_terms``.
    """
    work = precision_bits + GUARD_BITS
    with mpmath.workprec(work):
        s = mpmath.mpf(s)
        if s <= 1:
            raise DomainError(f"zeta needs real s > 1, got {s}")
        eps = mpmath.ldexp(1, -work)
        terms = bernoulli_terms
        big_n = 8
        while abs(_em_term(s, terms + 1, mpmath.mpf(big_n))) > eps:
            if big_n >= max_direct_terms:
                terms += 4
                big_n = 8
            else:
                big_n *= 2
        total = mpmath.fsum(mpmath.mpf(k) ** (-s) for k in range(1, big_n))
        nn = mpmath.mpf(big_n)
        total += nn ** (1 - s) / (s - 1) + nn ** (-s) / 2
        for k in range(1, terms + 1):
            total += _em_term(s, k, nn)
    return _round(total, precision_bits)


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tolerance: mpmath.mpf = field(default_factory=lambda: mpmath.mpf("1e-12"))
    max_depth: int = 60

    def __post_init__(self) -> None:
        if not self.abs_tolerance > 0:
            raise ValueError("abs_tolerance must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")


def adaptive_simpson(f, a, b, abs_tolerance, max_depth: int = 60):
    """Adaptive Simpson with interval halving and Richardson correction.

    Works on whatever number type ``f`` and the endpoints use; the caller
    sets the precision context.
    """
    fa, fb = f(a), f(b)
    mid = (a + b) / 2
    fm = f(mid)
    whole = (b - a) / 6 * (fa + 4 * fm + fb)
    return _simpson_step(f, a, b, fa, fm, fb, whole, abs_tolerance, max_depth)


def _simpson_step(f, a, b, fa, fm, fb, whole, tol, depth):
    mid = (a + b) / 2
    lm, rm = (a + mid) / 2, (mid + b) / 2
    flm, frm = f(lm), f(rm)
    left = (mid - a) / 6 * (fa + 4 * flm + fm)
    right = (b - mid) / 6 * (fm + 4 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15 * tol:
        return left + right + delta / 15
    return (_simpson_step(f, a, mid, fa, flm, fm, left, tol / 2, depth - 1)
            + _simpson_step(f, mid, b, fm, frm, fb, right, tol / 2, depth - 1))


def integral_sqrt_log(A, x, config: QuadratureConfig | None = None,
                      precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Integral of 1/sqrt(log t) over [A, x], for 1 < A <= x."""
    config = config or QuadratureConfig()
    with mpmath.workprec(precision_bits + 8):
        A, x = mpmath.mpf(A), mpmath.mpf(x)
        if A <= 1:
            raise DomainError(f"integrand is singular at t = 1; need A > 1, got {A}")
        if x < A:
            raise DomainError(f"need A <= x, got A={A}, x={x}")
        if x == A:
            return mpmath.mpf(0)

        def integrand(t):
            return 1 / mpmath.sqrt(mpmath.log(t))

        value = adaptive_simpson(integrand, A, x, mpmath.mpf(config.abs_tolerance), config.max_depth)
    return _round(value, precision_bits)
