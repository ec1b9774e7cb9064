"""Sieve of Eratosthenes with residue-class filtering."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_CEILING = 2**32


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Primality flags for [2, limit], stored for odd numbers only.

    ``odd_flags[i]`` is True iff ``2*i + 1`` is prime.
    """

    limit: int
    odd_flags: np.ndarray

    def is_prime(self, n: int) -> bool:
        if n > self.limit:
            raise ValueError(f"{n} exceeds sieve limit {self.limit}")
        if n < 2:
            return False
        if n % 2 == 0:
            return n == 2
        return bool(self.odd_flags[n // 2])

    def primes(self) -> np.ndarray:
        odd = 2 * np.flatnonzero(self.odd_flags).astype(np.int64) + 1
        return np.concatenate(([2], odd)).astype(np.int64)

    def count(self) -> int:
        return 1 + int(np.count_nonzero(self.odd_flags))


def sieve(limit: int, ceiling: int = DEFAULT_CEILING) -> PrimeTable:
    if not 2 <= limit <= ceiling:
        raise ValueError(f"sieve limit must lie in [2, {ceiling}], got {limit}")
    size = limit // 2 + 1 if limit % 2 else limit // 2
    flags = np.ones(size, dtype=bool)
    flags[0] = False  # 1 is not prime
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if flags[i]:
            p = 2 * i + 1
            flags[p * p // 2 :: p] = False
    flags.setflags(write=False)
    return PrimeTable(limit=limit, odd_flags=flags)


def primes_in_class(table: PrimeTable, modulus: int, residue: int) -> list[int]:
    """Ascending primes p <= table.limit with p = residue (mod modulus)."""
    if modulus < 1 or not 0 <= residue < modulus:
        raise ValueError(f"need modulus >= 1 and 0 <= residue < modulus, got {modulus}, {residue}")
    ps = table.primes()
    return ps[ps % modulus == residue].tolist()


def _initial_limit(n: int, modulus: int) -> int:
    # prime-counting heuristic for the n-th prime, stretched by the modulus
    if n < 6:
        return max(100, 15 * modulus)
    ln = math.log(n)
    return max(100, int(n * (ln + math.log(ln)) * modulus))


def first_primes_in_class(count: int, modulus: int = 1, residue: int = 0,
                          ceiling: int = DEFAULT_CEILING) -> list[int]:
    """The first ``count`` primes in the class, growing the sieve by doubling."""
    if count < 1:
        raise ValueError("count must be positive")
    limit = _initial_limit(count, modulus)
    while True:
        limit = min(limit, ceiling)
        found = primes_in_class(sieve(limit, ceiling), modulus, residue)
        if len(found) >= count:
            return found[:count]
        if limit >= ceiling:
            raise ValueError(
                f"fewer than {count} primes = {residue} mod {modulus} below {ceiling}"
            )
        limit *= 2


def nth_prime_in_class(n: int, modulus: int = 1, residue: int = 0,
                       ceiling: int = DEFAULT_CEILING) -> int:
    return first_primes_in_class(n, modulus, residue, ceiling)[-1]
