"""Exact rational arithmetic, square-root detection and polynomials over Q.

Rationals are plain :class:`fractions.Fraction` values, which are kept in
lowest terms with a positive denominator on construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import mpmath
from mpmath.libmp import from_rational, round_nearest

BigRational = Fraction
RationalLike = Union[Fraction, int]


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


def as_rational(value: RationalLike | str) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected on purpose: they would smuggle rounding into exact code.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"expected an exact rational, got {type(value).__name__}")
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"not an exact rational literal: {value!r}")
        try:
            return Fraction(text)
        except ValueError as exc:
            raise ValueError(f"malformed rational: {value!r}") from exc
    return Fraction(value)


def isqrt(n: int) -> tuple[int, bool]:
    """Return ``(floor(sqrt(n)), n is a perfect square)``."""
    if n < 0:
        raise DomainError(f"isqrt of negative integer {n}")
    root = math.isqrt(n)
    return root, root * root == n


def exact_sqrt(q: RationalLike) -> Fraction | None:
    """Nonnegative rational square root of ``q``, or None if q is not a rational square."""
    q = Fraction(q)
    if q < 0:
        raise DomainError(f"square root of negative rational {q}")
    num_root, num_exact = isqrt(q.numerator)
    if not num_exact:
        return None
    den_root, den_exact = isqrt(q.denominator)
    if not den_exact:
        return None
    return Fraction(num_root, den_root)


def to_bigfloat(q: RationalLike, precision_bits: int) -> mpmath.mpf:
    """Round ``q`` to nearest (ties to even) at ``precision_bits`` bits."""
    if precision_bits < 16:
        raise ValueError("precision_bits must be at least 16")
    q = Fraction(q)
    raw = from_rational(q.numerator, q.denominator, precision_bits, round_nearest)
    return mpmath.mp.make_mpf(raw)


class RationalPoly:
    """Univariate polynomial with Fraction coefficients, lowest degree first.

    Trailing zero coefficients are stripped, so two polynomials are equal iff
    their coefficient tuples are equal. The zero polynomial has no
    coefficients and degree ``-inf``.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[RationalLike] = ()):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, c: RationalLike) -> RationalPoly:
        return cls([c])

    @classmethod
    def x(cls) -> RationalPoly:
        return cls([0, 1])

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> float:
        return len(self._coeffs) - 1 if self._coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other: RationalPoly) -> RationalPoly:
        n = max(len(self._coeffs), len(other._coeffs))
        a = self._coeffs + (Fraction(0),) * (n - len(self._coeffs))
        b = other._coeffs + (Fraction(0),) * (n - len(other._coeffs))
        return RationalPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> RationalPoly:
        return RationalPoly(-c for c in self._coeffs)

    def __sub__(self, other: RationalPoly) -> RationalPoly:
        return self + (-other)

    def __mul__(self, other: RationalPoly) -> RationalPoly:
        if not self._coeffs or not other._coeffs:
            return RationalPoly()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return RationalPoly(out)

    def __pow__(self, k: int) -> RationalPoly:
        if k < 0:
            raise ValueError("negative exponent")
        result = RationalPoly.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, a: RationalLike) -> Fraction:
        return poly_eval(self, a)

    def __repr__(self) -> str:
        if not self._coeffs:
            return "RationalPoly(0)"
        terms = []
        for k, c in enumerate(self._coeffs):
            if c == 0:
                continue
            terms.append(f"{c}" if k == 0 else f"{c}*a^{k}")
        return "RationalPoly(" + " + ".join(terms) + ")"


def poly_equal(p: RationalPoly, q: RationalPoly) -> bool:
    return p.coefficients == q.coefficients


def poly_mul(p: RationalPoly, q: RationalPoly) -> RationalPoly:
    return p * q


def poly_sub(p: RationalPoly, q: RationalPoly) -> RationalPoly:
    return p - q


def poly_eval(p: RationalPoly, a: RationalLike) -> Fraction:
    """Evaluate by Horner's scheme."""
    a = Fraction(a)
    acc = Fraction(0)
    for c in reversed(p.coefficients):
        acc = acc * a + c
    return acc


@dataclass(frozen=True)
class LinearForm:
    """The affine map ``a -> u*a + v`` with ``u != 0``."""

    u: Fraction
    v: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", as_rational(self.u))
        object.__setattr__(self, "v", as_rational(self.v))
        if self.u == 0:
            raise DomainError("linear form needs a nonzero slope")

    def __call__(self, a: RationalLike) -> Fraction:
        return self.u * Fraction(a) + self.v

    def as_poly(self) -> RationalPoly:
        return RationalPoly([self.v, self.u])

    def root(self) -> Fraction:
        """The parameter value where the form vanishes."""
        return -self.v / self.u

    def __str__(self) -> str:
        sign = "-" if self.v < 0 else "+"
        return f"{self.u}a{sign}{abs(self.v)}"


def product(values: Sequence[Fraction]) -> Fraction:
    """Left-to-right product; exact, so order only matters for speed."""
    acc = Fraction(1)
    for v in values:
        acc *= v
    return acc
