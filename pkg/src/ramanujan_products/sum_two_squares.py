"""Counting B(x), the positive integers <= x that are sums of two squares.

Two independent counters are provided. ``MarkSieve`` marks every a^2 + b^2
directly; ``FactorSieve`` factors each n with a smallest-prime-factor table
and applies the classical criterion: n is a sum of two squares iff every
prime p = 3 (mod 4) divides n to an even power. Zero is an allowed square,
so B(1) = 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .constants import k_reference
from .numerics import DEFAULT_PRECISION, QuadratureConfig, integral_sqrt_log
from .primes import sieve
from .rational_core import DomainError

DEFAULT_MAX_X = 10**8
DEFAULT_MEMORY_MB = 2048


class CountMethod(enum.Enum):
    MARK_SIEVE = "MarkSieve"
    FACTOR_SIEVE = "FactorSieve"


@dataclass(frozen=True)
class BCountResult:
    x: int
    count: int
    method: CountMethod


@dataclass(frozen=True)
class ThetaResult:
    A: int
    x: int
    range_count: int
    integral_value: mpmath.mpf
    theta: mpmath.mpf

    @property
    def relative_theta(self) -> mpmath.mpf:
        """|theta| / (K * integral)."""
        return abs(self.theta) / (k_reference() * self.integral_value)


def is_sum_two_squares(n: int) -> bool:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    while n % 2 == 0:
        n //= 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if p % 4 == 3 and e % 2:
                return False
        p += 2
    return n % 4 != 3


def _check_x(x: int, max_x: int, bytes_per_entry: int, memory_mb: float) -> None:
    if not 1 <= x <= max_x:
        raise ValueError(f"x must lie in [1, {max_x}], got {x}")
    need = (x + 1) * bytes_per_entry
    if need > memory_mb * 2**20:
        raise MemoryError(
            f"counting up to {x} needs about {need / 2**20:.0f} MB, budget is {memory_mb} MB"
        )


def representable_mask_mark(x: int, max_x: int = DEFAULT_MAX_X,
                            memory_mb: float = DEFAULT_MEMORY_MB) -> np.ndarray:
    """Boolean array r with r[n] True iff n = a^2 + b^2, for 0 <= n <= x."""
    _check_x(x, max_x, 1, memory_mb)
    marks = np.zeros(x + 1, dtype=bool)
    for a in range(math.isqrt(x) + 1):
        a2 = a * a
        b = np.arange(a, math.isqrt(x - a2) + 1, dtype=np.int64)
        marks[a2 + b * b] = True
    return marks


def smallest_prime_factors(x: int) -> np.ndarray:
    """spf[n] = least prime dividing n, for 2 <= n <= x (entries 0, 1 are 0, 1)."""
    spf = np.zeros(x + 1, dtype=np.int32)
    if x >= 1:
        spf[1] = 1
    if x >= 4:
        for p in sieve(max(2, math.isqrt(x))).primes().tolist():
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    return spf


def representable_mask_factor(x: int, max_x: int = DEFAULT_MAX_X,
                              memory_mb: float = DEFAULT_MEMORY_MB) -> np.ndarray:
    """Same mask as :func:`representable_mask_mark`, by the prime criterion."""
    # spf, remaining cofactor and the working index arrays, all 4 bytes wide
    _check_x(x, max_x, 13, memory_mb)
    spf = smallest_prime_factors(x)
    good = np.ones(x + 1, dtype=bool)
    good[0] = True  # 0 = 0^2 + 0^2; never counted
    rem = np.arange(x + 1, dtype=np.int32)
    idx = np.arange(2, x + 1, dtype=np.int32)
    while idx.size:
        q = rem[idx]
        p = spf[q]
        q = q // p
        odd = np.ones(idx.size, dtype=bool)
        divisible = np.flatnonzero(q % p == 0)
        while divisible.size:
            q[divisible] //= p[divisible]
            odd[divisible] ^= True
            divisible = divisible[q[divisible] % p[divisible] == 0]
        bad = odd & (p % 4 == 3)
        good[idx[bad]] = False
        rem[idx] = q
        idx = idx[(q > 1) & ~bad]
    return good


def _count(mask: np.ndarray) -> int:
    return int(np.count_nonzero(mask[1:]))


def b_count_mark(x: int, max_x: int = DEFAULT_MAX_X,
                 memory_mb: float = DEFAULT_MEMORY_MB) -> BCountResult:
    return BCountResult(x, _count(representable_mask_mark(x, max_x, memory_mb)), CountMethod.MARK_SIEVE)


def b_count_factor(x: int, max_x: int = DEFAULT_MAX_X,
                   memory_mb: float = DEFAULT_MEMORY_MB) -> BCountResult:
    return BCountResult(x, _count(representable_mask_factor(x, max_x, memory_mb)), CountMethod.FACTOR_SIEVE)


def b_count(x: int, method: CountMethod = CountMethod.MARK_SIEVE, **kwargs) -> BCountResult:
    counter = b_count_mark if method is CountMethod.MARK_SIEVE else b_count_factor
    return counter(x, **kwargs)


def landau_ratio(x: int, precision_bits: int = DEFAULT_PRECISION,
                 count: int | None = None) -> mpmath.mpf:
    """B(x) sqrt(log x) / x, which tends to K. ``count`` skips recounting."""
    if x < 2:
        raise ValueError(f"x must be at least 2, got {x}")
    if count is None:
        count = b_count_mark(x).count
    with mpmath.workprec(precision_bits):
        return mpmath.mpf(count) * mpmath.sqrt(mpmath.log(x)) / x


def theta_remainder(A: int, x: int, precision_bits: int = DEFAULT_PRECISION,
                    config: QuadratureConfig | None = None,
                    method: CountMethod = CountMethod.MARK_SIEVE) -> ThetaResult:
    """Remainder theta = #{A < n <= x representable} - K * integral_A^x dt/sqrt(log t)."""
    if A < 2:
        raise DomainError(f"A must be at least 2 (integrand singular at t = 1), got {A}")
    if x <= A:
        raise DomainError(f"need A < x, got A={A}, x={x}")
    mask = (representable_mask_mark if method is CountMethod.MARK_SIEVE
            else representable_mask_factor)(x)
    range_count = int(np.count_nonzero(mask[A + 1 :]))
    integral = integral_sqrt_log(A, x, config, precision_bits)
    with mpmath.workprec(precision_bits):
        theta = range_count - k_reference(precision_bits) * integral
    return ThetaResult(A, x, range_count, integral, theta)
