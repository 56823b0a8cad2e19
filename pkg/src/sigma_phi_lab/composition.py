"""Factorization of sigma(n) and the composition phi(sigma(n)).

sigma is multiplicative, so sigma(n) factors as the merge of the
factorizations of sigma(p**k) over p**k || n.  Each sigma(p**k) is below
2 * p**k, so trial division by primes up to sqrt(2x) always finishes it.
"""

from __future__ import annotations

from collections import Counter

from .errors import DomainError
from .sieve import FactoredInteger, is_prime, sigma_prime_power, trial_factorize


class PrimePowerSigmaCache:
    """Append-only memo of the factorization of sigma(p**k), keyed by (p, k).

    One instance per worker; nothing is shared between workers.
    """

    def __init__(self):
        self._entries: dict[tuple[int, int], FactoredInteger] = {}
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key) -> bool:
        return key in self._entries

    def get(self, p: int, k: int) -> FactoredInteger:
        key = (p, k)
        entry = self._entries.get(key)
        if entry is None:
            self.misses += 1
            entry = trial_factorize(sigma_prime_power(p, k))
            self._entries[key] = entry
        else:
            self.hits += 1
        return entry

    def items(self):
        return self._entries.items()


def sigma_factored(f: FactoredInteger, cache: PrimePowerSigmaCache | None = None) -> FactoredInteger:
    """Full factorization of sigma(n) from the factorization of n."""
    if cache is None:
        cache = PrimePowerSigmaCache()
    merged: Counter[int] = Counter()
    value = 1
    for p, k in f.factors:
        part = cache.get(p, k)
        value *= part.value
        for r, e in part.factors:
            merged[r] += e
    return FactoredInteger(value, tuple(sorted(merged.items())))


def phi_sigma(f: FactoredInteger, cache: PrimePowerSigmaCache | None = None) -> int:
    """phi(sigma(n)) = sigma(n) * prod over r | sigma(n) of (1 - 1/r), exactly."""
    s = sigma_factored(f, cache)
    out = s.value
    for r, _ in s.factors:
        out = out // r * (r - 1)
    return out


def divides_sigma(p: int, f: FactoredInteger) -> bool:
    """True iff the prime ``p`` divides sigma(n).

    Works residue by residue on 1 + q + ... + q**k without building
    sigma(n); when q = 1 (mod p) that sum is k + 1 (mod p).
    """
    if not is_prime(p):
        raise DomainError(f"divides_sigma needs a prime modulus, got {p}")
    for q, k in f.factors:
        qm = q % p
        if qm == 0:
            continue  # sigma(p**k) = 1 (mod p)
        if qm == 1:
            part = (k + 1) % p
        else:
            part = (pow(qm, k + 1, p) - 1) * pow(qm - 1, -1, p) % p
        if part == 0:
            return True
    return False
