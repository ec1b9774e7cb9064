"""Exact checks of the Ramanujan-type product identities.

Every check works on the squared equation in exact rationals: an identity
``sqrt(P) = Q`` is accepted when ``P == Q**2`` and the signs agree. No square
root is ever extracted numerically here.

The central family is, for a rational parameter ``a``,

    sqrt((a+1)/(a-1) (1-1/a^2) prod_L (1-1/L^2)) = prod_L (1+1/L),

with ``L`` running over the linear forms ``2a+1, 3a+2, 6a+1``. At ``a = 3``
this is Ramanujan's ``sqrt(2(1-1/3^2)(1-1/7^2)(1-1/11^2)(1-1/19^2))
= (1+1/7)(1+1/11)(1+1/19)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .rational_core import (
    DomainError,
    LinearForm,
    RationalLike,
    RationalPoly,
    as_rational,
    poly_equal,
)

RAMANUJAN_TRIPLE = (LinearForm(2, 1), LinearForm(3, 2), LinearForm(6, 1))
ALTERNATIVE_TRIPLES = (
    (LinearForm(2, 1), LinearForm(3, 1), LinearForm(6, 5)),
    (LinearForm(2, 1), LinearForm(4, 1), LinearForm(4, 3)),
)
PAPER_TRIPLES = (RAMANUJAN_TRIPLE,) + ALTERNATIVE_TRIPLES

# Points where some literal denominator of the squared equation vanishes.
FULL_EXCLUDED = frozenset(Fraction(x) for x in ("-2/3", "-1/2", "-1/6", "0", "1"))
ALTERNATIVE_EXCLUDED = FULL_EXCLUDED - {Fraction(1)}
ZERO_POINTS = frozenset({Fraction(-1), Fraction(-1, 3)})


class DomainStatus(enum.Enum):
    VALID = "Valid"
    ZERO_CASE = "ZeroCase"
    EXCLUDED = "Excluded"


class Form(enum.Enum):
    FULL = "Full"
    ALTERNATIVE = "Alternative"


class TelescopeCase(enum.Enum):
    """The three telescoping families: denominators k, 2k and 2k+1."""

    SHIFT0 = "Shift0"
    EVEN = "Even"
    ODD = "Odd"


@dataclass(frozen=True)
class IdentityCheckResult:
    """Both sides of a checked identity, squared where a root is involved.

    ``lhs_sign`` is the sign of the unsquared left side (0, 1 or -1); it is
    1 for a bare square root and matters only when a rational prefactor
    multiplies the root.
    """

    lhs_squared: Fraction
    rhs: Fraction
    rhs_squared: Fraction
    holds: bool
    domain: DomainStatus
    lhs_sign: int = 1


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def _require_nonzero(value: Fraction, label: str, a: Fraction) -> None:
    if value == 0:
        raise DomainError(f"factor {label} vanishes at a = {a}")


def _in_theorem1_union(a: Fraction) -> bool:
    return (
        a < Fraction(-2, 3)
        or Fraction(-1, 2) < a <= Fraction(-1, 3)
        or a > Fraction(-1, 6)
    )


def theorem1_domain(a: RationalLike) -> DomainStatus:
    """Classify ``a`` against (-inf,-2/3) u (-1/2,-1/3] u ((-1/6,inf) minus {0,1})."""
    a = as_rational(a)
    if not _in_theorem1_union(a) or a in (0, 1):
        return DomainStatus.EXCLUDED
    if a in ZERO_POINTS:
        return DomainStatus.ZERO_CASE
    return DomainStatus.VALID


def remark_alt_domain(a: RationalLike) -> DomainStatus:
    """Same union as :func:`theorem1_domain` but only 0 is removed."""
    a = as_rational(a)
    if not _in_theorem1_union(a) or a == 0:
        return DomainStatus.EXCLUDED
    if a in ZERO_POINTS:
        return DomainStatus.ZERO_CASE
    return DomainStatus.VALID


def _denominator_product(a: Fraction, forms: Sequence[LinearForm]) -> Fraction:
    acc = Fraction(1)
    for form in forms:
        d = form(a)
        _require_nonzero(d, str(form), a)
        acc *= 1 - 1 / (d * d)
    return acc


def _rhs(a: Fraction, forms: Sequence[LinearForm]) -> Fraction:
    acc = Fraction(1)
    for form in forms:
        d = form(a)
        _require_nonzero(d, str(form), a)
        acc *= 1 + 1 / d
    return acc


def _full_radicand(a: Fraction, forms: Sequence[LinearForm]) -> Fraction:
    _require_nonzero(a - 1, "a-1", a)
    _require_nonzero(a, "a", a)
    return (a + 1) / (a - 1) * (1 - 1 / (a * a)) * _denominator_product(a, forms)


def theorem1_lhs_squared(a: RationalLike) -> Fraction:
    """Exact radicand of the left side of the generalized identity."""
    return _full_radicand(as_rational(a), RAMANUJAN_TRIPLE)


def theorem1_rhs(a: RationalLike) -> Fraction:
    """Exact value of (1+1/(2a+1))(1+1/(3a+2))(1+1/(6a+1))."""
    return _rhs(as_rational(a), RAMANUJAN_TRIPLE)


def verify_theorem1(a: RationalLike) -> IdentityCheckResult:
    a = as_rational(a)
    status = theorem1_domain(a)
    if status is DomainStatus.EXCLUDED:
        raise DomainError(f"a = {a} is outside the domain of the generalized identity")
    lhs2 = theorem1_lhs_squared(a)
    rhs = theorem1_rhs(a)
    rhs2 = rhs * rhs
    return IdentityCheckResult(
        lhs_squared=lhs2,
        rhs=rhs,
        rhs_squared=rhs2,
        holds=lhs2 == rhs2 and rhs >= 0,
        domain=status,
        lhs_sign=_sign(lhs2),
    )


def verify_remark_alt(a: RationalLike) -> IdentityCheckResult:
    """Check ``(a+1)/a * sqrt(prod (1-1/L^2)) = prod (1+1/L)``.

    The prefactor ``(a+1)/a`` is negative on (-1, 0), so on the parts
    (-1, -2/3) and (-1/2, -1/3) of the stated domain only the squared
    equation holds and ``holds`` comes back False.
    """
    a = as_rational(a)
    status = remark_alt_domain(a)
    if status is DomainStatus.EXCLUDED:
        raise DomainError(f"a = {a} is outside the domain of the alternative form")
    prefactor = (a + 1) / a
    root_part = _denominator_product(a, RAMANUJAN_TRIPLE)
    lhs2 = prefactor * prefactor * root_part
    rhs = _rhs(a, RAMANUJAN_TRIPLE)
    rhs2 = rhs * rhs
    lhs_sign = _sign(prefactor) * (1 if root_part > 0 else 0)
    return IdentityCheckResult(
        lhs_squared=lhs2,
        rhs=rhs,
        rhs_squared=rhs2,
        holds=lhs2 == rhs2 and lhs_sign == _sign(rhs),
        domain=status,
        lhs_sign=lhs_sign,
    )


def squared_holds_for_forms(
    a: RationalLike,
    forms: Sequence[LinearForm] = RAMANUJAN_TRIPLE,
    form: Form = Form.FULL,
) -> bool:
    """Squared equation for an arbitrary triple of denominators.

    Used both by :func:`verify_squared` and by mutation tests that perturb the
    triple. Raises DomainError where a denominator vanishes.
    """
    a = as_rational(a)
    rhs = _rhs(a, forms)
    if form is Form.FULL:
        lhs2 = _full_radicand(a, forms)
    else:
        _require_nonzero(a, "a", a)
        lhs2 = ((a + 1) / a) ** 2 * _denominator_product(a, forms)
    return lhs2 == rhs * rhs


def verify_squared(a: RationalLike, form: Form = Form.FULL) -> bool:
    """Squared identity, valid off a finite exceptional set."""
    a = as_rational(a)
    excluded = FULL_EXCLUDED if form is Form.FULL else ALTERNATIVE_EXCLUDED
    if a in excluded:
        raise DomainError(f"a = {a} is an excluded point for the {form.value} form")
    return squared_holds_for_forms(a, RAMANUJAN_TRIPLE, form)


def verify_theorem1_float(a, precision_bits: int = 128) -> bool:
    """Float-mode check for real (possibly irrational) ``a``.

    Evaluates both unsquared sides at ``precision_bits`` and accepts a relative
    mismatch of at most ``2**(-precision_bits/2)``. Exact mode is the
    reference; this exists for parameters such as ``a = sqrt(2)``.
    """
    with mpmath.workprec(precision_bits):
        a = mpmath.mpf(a)
        if not (a < mpmath.mpf(-2) / 3 or (mpmath.mpf(-1) / 2 < a <= mpmath.mpf(-1) / 3)
                or a > mpmath.mpf(-1) / 6) or a == 0 or a == 1:
            raise DomainError(f"a = {a} is outside the domain of the generalized identity")
        radicand = (a + 1) / (a - 1) * (1 - 1 / a**2)
        rhs = mpmath.mpf(1)
        for form in RAMANUJAN_TRIPLE:
            d = mpmath.mpf(form.u.numerator) / form.u.denominator * a + (
                mpmath.mpf(form.v.numerator) / form.v.denominator
            )
            radicand *= 1 - 1 / d**2
            rhs *= 1 + 1 / d
        tol = mpmath.ldexp(1, -(precision_bits // 2))
        # rounding can push a zero radicand slightly negative
        lhs = mpmath.sqrt(radicand) if radicand > 0 else mpmath.mpf(0)
        return bool(abs(lhs - rhs) <= tol * max(1, abs(rhs)))


def _check_lemma_element(x: Fraction) -> None:
    if abs(x) <= 1:
        raise DomainError(f"sequence element {x} has absolute value <= 1")


def verify_lemma1(seq: Sequence[RationalLike]) -> IdentityCheckResult:
    """Check sqrt(prod (a+1)/(a-1) * prod (1-1/a^2)) = prod (1+1/a) for |a_k| > 1."""
    if not seq:
        raise DomainError("sequence must be nonempty")
    values = [as_rational(x) for x in seq]
    ratio = Fraction(1)
    shrink = Fraction(1)
    rhs = Fraction(1)
    for x in values:
        _check_lemma_element(x)
        ratio *= (x + 1) / (x - 1)
        shrink *= 1 - 1 / (x * x)
        rhs *= 1 + 1 / x
    lhs2 = ratio * shrink
    rhs2 = rhs * rhs
    return IdentityCheckResult(lhs2, rhs, rhs2, lhs2 == rhs2 and rhs > 0, DomainStatus.VALID)


def _check_linear_admissible(u: Fraction, v: Fraction, m: int, n: int) -> None:
    if not (isinstance(m, int) and isinstance(n, int)) or not n >= m >= 1:
        raise DomainError(f"need integers n >= m >= 1, got m={m}, n={n}")
    if u == 0:
        raise DomainError("u must be nonzero")
    # uk+v is monotone in k, so the endpoints decide
    ends = (u * m + v, u * n + v)
    if u > 0 and not all(e > 1 for e in ends):
        raise DomainError(f"need uk+v > 1 for k in [{m}, {n}] when u > 0")
    if u < 0 and not all(e < -1 for e in ends):
        raise DomainError(f"need uk+v < -1 for k in [{m}, {n}] when u < 0")


def telescope_linear(u: RationalLike, v: RationalLike, m: int, n: int) -> Fraction:
    """Exact value of the four-gamma ratio for prod_{k=m}^n (uk+v+1)/(uk+v-1).

    Gamma(n+1+c)/Gamma(m+c) collapses to the rising product prod_{j=0}^{n-m} (m+j+c),
    since the arguments differ by the integer n-m+1; here c = (v+1)/u over c = (v-1)/u.
    """
    u, v = as_rational(u), as_rational(v)
    _check_linear_admissible(u, v, m, n)
    c_plus = (v + 1) / u
    c_minus = (v - 1) / u
    num = Fraction(1)
    den = Fraction(1)
    for j in range(n - m + 1):
        num *= m + j + c_plus
        den *= m + j + c_minus
    return num / den


def direct_linear_product(u: RationalLike, v: RationalLike, m: int, n: int) -> Fraction:
    """prod_{k=m}^n (uk+v+1)/(uk+v-1), factor by factor in ascending k."""
    u, v = as_rational(u), as_rational(v)
    acc = Fraction(1)
    for k in range(m, n + 1):
        d = u * k + v
        acc *= (d + 1) / (d - 1)
    return acc


def _lemma_check(prefactor: Fraction, denominators: Sequence[Fraction],
                 closed_form_ok: bool) -> IdentityCheckResult:
    shrink = Fraction(1)
    rhs = Fraction(1)
    for d in denominators:
        shrink *= 1 - 1 / (d * d)
        rhs *= 1 + 1 / d
    lhs2 = prefactor * shrink
    rhs2 = rhs * rhs
    holds = lhs2 == rhs2 and rhs > 0 and closed_form_ok
    return IdentityCheckResult(lhs2, rhs, rhs2, holds, DomainStatus.VALID)


def telescope_prefactor(case: TelescopeCase, m: int, n: int) -> Fraction:
    if case is TelescopeCase.SHIFT0:
        return Fraction(n * (n + 1), m * (m - 1))
    if case is TelescopeCase.EVEN:
        return Fraction(2 * n + 1, 2 * m - 1)
    return Fraction(n + 1, m)


def verify_theorem3(case: TelescopeCase, m: int, n: int) -> IdentityCheckResult:
    """One of the three telescoping identities with denominators k, 2k, 2k+1.

    ``holds`` also requires the closed-form prefactor to equal the direct
    product of (d+1)/(d-1).
    """
    lower = 2 if case is TelescopeCase.SHIFT0 else 1
    if not n >= m >= lower:
        raise DomainError(f"{case.value} needs n >= m >= {lower}, got m={m}, n={n}")
    scale, shift = {
        TelescopeCase.SHIFT0: (1, 0),
        TelescopeCase.EVEN: (2, 0),
        TelescopeCase.ODD: (2, 1),
    }[case]
    denominators = [Fraction(scale * k + shift) for k in range(m, n + 1)]
    prefactor = telescope_prefactor(case, m, n)
    closed_ok = prefactor == direct_linear_product(scale, shift, m, n)
    return _lemma_check(prefactor, denominators, closed_ok)


def verify_theorem4(u: RationalLike, v: RationalLike, m: int, n: int) -> IdentityCheckResult:
    u, v = as_rational(u), as_rational(v)
    prefactor = telescope_linear(u, v, m, n)
    closed_ok = prefactor == direct_linear_product(u, v, m, n)
    denominators = [u * k + v for k in range(m, n + 1)]
    return _lemma_check(prefactor, denominators, closed_ok)


def cubic_prefactor(m: int, n: int) -> Fraction:
    """Quotient of two superparticular ratios closing prod (k^3+1)/(k^3-1)."""
    return Fraction(m * (m - 1) + 1, m * (m - 1)) * Fraction(n * (n + 1), n * (n + 1) + 1)


def verify_theorem5_cubic(m: int, n: int) -> IdentityCheckResult:
    if not n >= m >= 2:
        raise DomainError(f"need n >= m >= 2, got m={m}, n={n}")
    prefactor = cubic_prefactor(m, n)
    direct = Fraction(1)
    for k in range(m, n + 1):
        direct *= Fraction(k**3 + 1, k**3 - 1)
    denominators = [Fraction(k**3) for k in range(m, n + 1)]
    return _lemma_check(prefactor, denominators, prefactor == direct)


def triple_family_polys(forms: Sequence[LinearForm]) -> tuple[RationalPoly, RationalPoly]:
    """Cross-multiplied sides a^2 prod (L+1) and (a+1)^2 prod (L-1)."""
    a = RationalPoly.x()
    one = RationalPoly.constant(1)
    left = a * a
    right = (a + one) * (a + one)
    for form in forms:
        p = form.as_poly()
        left = left * (p + one)
        right = right * (p - one)
    return left, right


def verify_triple_family(forms: Sequence[LinearForm]) -> bool:
    """Decide prod (L_i(a)+1)/(L_i(a)-1) == ((a+1)/a)^2 as rational functions."""
    forms = list(forms)
    if len(forms) != 3:
        raise DomainError(f"need exactly 3 linear forms, got {len(forms)}")
    for form in forms:
        if not isinstance(form, LinearForm):
            raise TypeError("forms must be LinearForm instances")
    left, right = triple_family_polys(forms)
    return poly_equal(left, right)
