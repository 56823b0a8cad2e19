"""Prime and smallest-prime-factor tables, segmented factorization, phi and sigma.

The SPF table only has to reach sqrt of the largest integer being
factored; everything above that is handled segment by segment, where a
cofactor left over after removing the sieving primes is either 1 or prime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import CapacityError, DomainError

#: Largest n accepted anywhere in the package; sigma(n) < n(1 + ln n) < 2**63 below it.
X_CAP = 10**11
#: Default memory cap for an in-memory SPF table (entries; 4 bytes each).
SPF_LIMIT_CAP = 2 * 10**8
#: Default number of integers per sieve segment.
DEFAULT_SEGMENT_SIZE = 1 << 20

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer together with its prime factorization.

    ``factors`` holds ``(prime, exponent)`` pairs sorted by prime.
    """

    value: int
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.value < 1:
            raise DomainError(f"FactoredInteger needs a positive value, got {self.value}")
        prod = 1
        last = 1
        for p, k in self.factors:
            if p <= last or k < 1:
                raise DomainError(f"malformed factorization {self.factors!r}")
            last = p
            prod *= p**k
        if prod != self.value:
            raise DomainError(f"factors {self.factors!r} multiply to {prod}, not {self.value}")

    @classmethod
    def from_factors(cls, factors) -> FactoredInteger:
        factors = tuple(sorted((int(p), int(k)) for p, k in factors))
        return cls(math.prod(p**k for p, k in factors), factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


@dataclass(frozen=True, eq=False)
class SpfTable:
    """Smallest prime factor of every n in [2, limit]."""

    limit: int
    spf: np.ndarray = field(repr=False)

    def __getitem__(self, n: int) -> int:
        return int(self.spf[n])

    def primes(self, upto: int | None = None) -> np.ndarray:
        """All primes <= ``upto`` (default: the whole table) as int64."""
        stop = self.limit if upto is None else min(upto, self.limit)
        idx = np.arange(stop + 1)
        return idx[2:][self.spf[2 : stop + 1] == idx[2:]].astype(np.int64)


def build_spf_table(limit: int, cap: int = SPF_LIMIT_CAP) -> SpfTable:
    """Sieve the smallest prime factor of every integer up to ``limit``."""
    limit = int(limit)
    if limit < 2:
        raise DomainError(f"SPF table limit must be >= 2, got {limit}")
    if limit > cap:
        raise CapacityError(f"SPF table limit {limit} exceeds the memory cap of {cap} entries")
    return SpfTable(limit, _kernels.spf_sieve(limit))


@lru_cache(maxsize=8)
def primes_upto(limit: int) -> np.ndarray:
    """Primes <= limit, ascending, int64 (cached; treat as read-only)."""
    if limit < 2:
        return np.zeros(0, np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    out = np.flatnonzero(is_prime).astype(np.int64)
    out.flags.writeable = False
    return out


_trial_primes: list[int] = []


def _trial_divisors(upto: int) -> list[int]:
    """Python list of primes covering at least ``upto``; grows by doubling."""
    global _trial_primes
    if not _trial_primes or _trial_primes[-1] < upto:
        bound = 1 << max(10, int(upto).bit_length() + 1)
        _trial_primes = primes_upto(bound).tolist()
    return _trial_primes


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division (fine for n up to ~1e12)."""
    n = int(n)
    if n < 2:
        return False
    for p in _trial_divisors(math.isqrt(n)):
        if p * p > n:
            break
        if n % p == 0:
            return n == p
    return True


def trial_factorize(m: int) -> FactoredInteger:
    """Factor ``m`` by trial division; meant for m up to about 1e12."""
    m = int(m)
    if m < 1:
        raise DomainError(f"cannot factor {m}; m must be positive")
    factors = []
    rest = m
    for r in _trial_divisors(math.isqrt(m)):
        if r * r > rest:
            break
        if rest % r == 0:
            k = 0
            while rest % r == 0:
                rest //= r
                k += 1
            factors.append((r, k))
    if rest > 1:
        factors.append((rest, 1))
    return FactoredInteger(m, tuple(factors))


def factorize(n: int, table: SpfTable) -> FactoredInteger:
    """Factor ``n`` by walking the SPF chain of ``table``."""
    n = int(n)
    if n < 1:
        raise DomainError(f"cannot factor {n}; n must be positive")
    if n > table.limit:
        raise CapacityError(f"n={n} is beyond the SPF table limit {table.limit}")
    factors = []
    m = n
    while m > 1:
        p = int(table.spf[m])
        k = 0
        while m % p == 0:
            m //= p
            k += 1
        factors.append((p, k))
    return FactoredInteger(n, tuple(factors))


@dataclass(frozen=True, eq=False)
class SieveSegment:
    """Factorizations of every n in the half-open range [lo, hi).

    Row ``i`` of the arrays describes ``n = lo + i``: ``nf[i]`` distinct
    primes in ``fp[i, :nf[i]]`` with exponents ``fe[i, :nf[i]]``.
    ``sigma`` and ``phi`` come for free from the same pass.
    """

    lo: int
    hi: int
    fp: np.ndarray = field(repr=False)
    fe: np.ndarray = field(repr=False)
    nf: np.ndarray = field(repr=False)
    sigma: np.ndarray = field(repr=False)
    phi: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return self.hi - self.lo

    @property
    def values(self) -> np.ndarray:
        return np.arange(self.lo, self.hi, dtype=np.int64)

    def factored(self, n: int) -> FactoredInteger:
        if not self.lo <= n < self.hi:
            raise DomainError(f"{n} is outside segment [{self.lo}, {self.hi})")
        i = n - self.lo
        c = int(self.nf[i])
        return FactoredInteger(
            int(n), tuple(zip(self.fp[i, :c].tolist(), self.fe[i, :c].tolist()))
        )

    def __iter__(self):
        for n in range(self.lo, self.hi):
            yield self.factored(n)


def _check_range(lo: int, hi: int) -> None:
    if lo < 1 or hi <= lo:
        raise DomainError(f"need 1 <= lo < hi, got lo={lo}, hi={hi}")
    if hi - 1 > X_CAP:
        raise CapacityError(f"range end {hi - 1} exceeds the global cap {X_CAP}")


def sieve_range(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> SieveSegment:
    """Factor every n in [lo, hi).

    Work is split into chunks of ``segment_size``; the result does not
    depend on the chunking.
    """
    lo, hi = int(lo), int(hi)
    _check_range(lo, hi)
    if segment_size < 1:
        raise DomainError("segment_size must be positive")
    base = primes_upto(math.isqrt(hi - 1) + 1)
    parts = [
        _kernels.factor_segment(a, min(a + segment_size, hi), base)
        for a in range(lo, hi, segment_size)
    ]
    if len(parts) == 1:
        return SieveSegment(lo, hi, *parts[0])
    return SieveSegment(lo, hi, *(np.concatenate(arrs) for arrs in zip(*parts)))


def phi(f: FactoredInteger) -> int:
    """Euler's totient: the product of p**(k-1) * (p-1) over p**k || n."""
    out = 1
    for p, k in f.factors:
        out *= p ** (k - 1) * (p - 1)
    return out


def sigma_prime_power(p: int, k: int) -> int:
    return (p ** (k + 1) - 1) // (p - 1)


def sigma(f: FactoredInteger) -> int:
    """Sum of divisors; raises CapacityError above the 64-bit guarantee."""
    out = 1
    for p, k in f.factors:
        out *= sigma_prime_power(p, k)
    if out > INT64_MAX:
        raise CapacityError(f"sigma({f.value}) = {out} exceeds the 64-bit guarantee")
    return out
