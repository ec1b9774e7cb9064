"""Landau-Ramanujan constant by truncated Euler product, and zeta Euler products.

K = (1/sqrt 2) prod_{p = 3 mod 4} (1 - p^-2)^(-1/2). Truncating after the
first n such primes gives K_n = 1 / sqrt(2 prod (1 - p^-2)); K_4 = 1463/1920
is the reciprocal of Ramanujan's identity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import mpmath
from mpmath.libmp import from_rational, round_nearest, to_rational

from .numerics import DEFAULT_PRECISION, GUARD_BITS, zeta
from .primes import first_primes_in_class
from .rational_core import DomainError, isqrt, to_bigfloat

K_REFERENCE_DIGITS = "0.76422365358922066299"
MAX_REFERENCE_DECIMALS = 20


def k_reference(precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """The 20 printed digits of K, rounded to ``precision_bits``."""
    return to_bigfloat(Fraction(K_REFERENCE_DIGITS), precision_bits)


def correct_decimals(abs_error, cap: int = MAX_REFERENCE_DECIMALS) -> int:
    """Largest d <= cap with abs_error < 0.5 * 10^-d (0 if none)."""
    if isinstance(abs_error, Fraction):
        err = abs_error
    else:
        err = Fraction(*to_rational(mpmath.mpf(abs_error)._mpf_))
    d = 0
    while d < cap and err < Fraction(1, 2 * 10 ** (d + 1)):
        d += 1
    return d


@dataclass(frozen=True)
class KPartial:
    """Truncated product over the first ``num_primes`` primes = 3 (mod 4).

    The radicand 2 prod (1 - p^-2) equals ``2 * num / primorial**2`` where
    ``num = prod (p^2 - 1)``; it is carried exactly as integers.
    """

    num_primes: int
    num: int
    primorial: int

    def exact(self) -> Fraction | None:
        """K_n as an exact rational when the radicand is a rational square.

        The denominator primorial**2 is already a square, so that happens
        exactly when ``2 * num`` is a perfect square.
        """
        root, is_square = isqrt(2 * self.num)
        return Fraction(self.primorial, root) if is_square else None

    def value(self, precision_bits: int) -> mpmath.mpf:
        exact = self.exact()
        if exact is not None:
            return to_bigfloat(exact, precision_bits)
        work = precision_bits + GUARD_BITS
        with mpmath.workprec(work):
            k_squared = mpmath.mp.make_mpf(
                from_rational(self.primorial**2, 2 * self.num, work, round_nearest)
            )
            k = mpmath.sqrt(k_squared)
        with mpmath.workprec(precision_bits):
            return +k


def _k_partials(checkpoints: Iterable[int]) -> Iterator[KPartial]:
    """Yield the exact partial products at each checkpoint, in one ascending pass."""
    marks = list(checkpoints)
    if not marks:
        return
    if any(c < 1 for c in marks) or any(b <= a for a, b in zip(marks, marks[1:])):
        raise ValueError("checkpoints must be strictly ascending positive integers")
    primes = first_primes_in_class(marks[-1], 4, 3)
    num = 1
    primorial = 1
    it = iter(marks)
    target = next(it)
    for count, p in enumerate(primes, start=1):
        num *= p * p - 1
        primorial *= p
        if count == target:
            yield KPartial(count, num, primorial)
            target = next(it, None)
            if target is None:
                return


def landau_ramanujan_partial(num_primes: int, precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    if num_primes < 1:
        raise ValueError("num_primes must be at least 1")
    (partial,) = _k_partials([num_primes])
    return partial.value(precision_bits)


def landau_ramanujan_partial_exact(num_primes: int) -> Fraction | None:
    """K_n exactly, or None when K_n is irrational."""
    if num_primes < 1:
        raise ValueError("num_primes must be at least 1")
    (partial,) = _k_partials([num_primes])
    return partial.exact()


@dataclass(frozen=True)
class ConvergenceRow:
    num_primes: int
    value: mpmath.mpf
    abs_error: mpmath.mpf
    correct_decimals: int
    exact: Fraction | None = None


@dataclass(frozen=True)
class ConvergenceReport:
    rows: tuple[ConvergenceRow, ...]
    reference: mpmath.mpf
    precision_bits: int


def k_convergence_report(checkpoints: Sequence[int],
                         precision_bits: int = DEFAULT_PRECISION) -> ConvergenceReport:
    reference = k_reference(precision_bits)
    ref_exact = Fraction(K_REFERENCE_DIGITS)
    rows = []
    for partial in _k_partials(checkpoints):
        value = partial.value(precision_bits)
        exact = partial.exact()
        with mpmath.workprec(precision_bits):
            err = abs(value - reference)
        # exact partials are scored exactly, so K_4 = 1463/1920 is not blurred by rounding
        err_for_score = abs(exact - ref_exact) if exact is not None else err
        rows.append(ConvergenceRow(
            num_primes=partial.num_primes,
            value=value,
            abs_error=err,
            correct_decimals=correct_decimals(err_for_score),
            exact=exact,
        ))
    return ConvergenceReport(tuple(rows), reference, precision_bits)


def reciprocal_k_expansion_check(num_head_primes: int, num_tail_primes: int,
                                 precision_bits: int = DEFAULT_PRECISION) -> bool:
    """Regroup 1/K_n as sqrt(2 prod_head) * sqrt(prod_tail) and compare.

    The head is the four-prime radicand of Ramanujan's identity, taken
    exactly; the tail is accumulated in floating point.
    """
    if num_head_primes != 4:
        raise ValueError("the head of the expansion is fixed at 4 primes")
    if num_tail_primes < 0:
        raise ValueError("num_tail_primes must be nonnegative")
    primes = first_primes_in_class(num_head_primes + num_tail_primes, 4, 3)
    head_sq = Fraction(2)
    for p in primes[:num_head_primes]:
        head_sq *= 1 - Fraction(1, p * p)
    work = precision_bits + GUARD_BITS
    with mpmath.workprec(work):
        tail = mpmath.mpf(1)
        for p in primes[num_head_primes:]:
            tail *= 1 - mpmath.mpf(1) / (p * p)
        lhs = mpmath.sqrt(to_bigfloat(head_sq, work)) * mpmath.sqrt(tail)
        rhs = 1 / landau_ramanujan_partial(num_head_primes + num_tail_primes, work)
        return bool(abs(lhs - rhs) <= mpmath.ldexp(1, -precision_bits + 16))


class EulerKind(enum.Enum):
    ONE_MINUS = "OneMinus"  # prod (1 - p^-2s) -> 1/zeta(2s)
    RATIO = "Ratio"  # prod (p^s+1)/(p^s-1) -> zeta(s)^2/zeta(2s)
    ONE_PLUS = "OnePlus"  # prod (1 + p^-s) -> zeta(s)/zeta(2s)


def _check_s(s) -> mpmath.mpf:
    s = mpmath.mpf(s)
    if not s > 1:
        raise DomainError(f"Euler products need real s > 1, got {s}")
    return s


def euler_product_partial(s, num_primes: int, kind: EulerKind,
                          precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Partial product over the first ``num_primes`` primes, ascending."""
    if num_primes < 1:
        raise ValueError("num_primes must be at least 1")
    work = precision_bits + GUARD_BITS
    primes = first_primes_in_class(num_primes)
    with mpmath.workprec(work):
        s = _check_s(s)
        acc = mpmath.mpf(1)
        for p in primes:
            ps = mpmath.mpf(p) ** s
            if kind is EulerKind.ONE_MINUS:
                acc *= 1 - 1 / (ps * ps)
            elif kind is EulerKind.RATIO:
                acc *= (ps + 1) / (ps - 1)
            else:
                acc *= 1 + 1 / ps
    with mpmath.workprec(precision_bits):
        return +acc


def euler_product_limit(s, kind: EulerKind, precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Closed-form limit of the infinite product in terms of zeta."""
    work = precision_bits + GUARD_BITS
    with mpmath.workprec(work):
        s = _check_s(s)
        z2s = zeta(2 * s, work)
        if kind is EulerKind.ONE_MINUS:
            value = 1 / z2s
        else:
            zs = zeta(s, work)
            value = zs * zs / z2s if kind is EulerKind.RATIO else zs / z2s
    with mpmath.workprec(precision_bits):
        return +value


def lemma1_limit_check(s, num_primes: int, precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """|sqrt(Ratio * OneMinus) - OnePlus| at one truncation; zero up to rounding."""
    work = precision_bits + GUARD_BITS
    ratio = euler_product_partial(s, num_primes, EulerKind.RATIO, work)
    one_minus = euler_product_partial(s, num_primes, EulerKind.ONE_MINUS, work)
    one_plus = euler_product_partial(s, num_primes, EulerKind.ONE_PLUS, work)
    with mpmath.workprec(work):
        diff = abs(mpmath.sqrt(ratio * one_minus) - one_plus)
    with mpmath.workprec(precision_bits):
        return +diff
