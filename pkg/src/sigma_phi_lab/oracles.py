"""Brute-force reference tables that never factor anything.

sigma comes from divisor enumeration (every d adds itself to its
multiples); phi from Gauss's identity sum_{d|n} phi(d) = n, also run over
divisors.  Both are O(N log N) and independent of the sieve code paths.
"""

from __future__ import annotations

import math

import numpy as np


def divisor_sum_table(limit: int) -> np.ndarray:
    """sigma(n) for 0 <= n <= limit (entry 0 unused)."""
    sig = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        sig[d::d] += d
    return sig


def totient_table(limit: int) -> np.ndarray:
    """phi(n) for 0 <= n <= limit via phi(n) = n - sum of phi(d) over proper divisors d."""
    phi = np.arange(limit + 1, dtype=np.int64)
    for d in range(1, limit // 2 + 1):
        phi[2 * d :: d] -= phi[d]
    return phi


def totient_gcd_count(n: int) -> int:
    """phi(n) straight from the definition: #{1 <= m <= n : gcd(m, n) = 1}."""
    return sum(1 for m in range(1, n + 1) if math.gcd(m, n) == 1)


def divisor_sum_direct(n: int) -> int:
    return sum(d for d in range(1, n + 1) if n % d == 0)


def phi_sigma_table(limit: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(sigma, phi, phi o sigma) tables for 0 <= n <= limit."""
    sig = divisor_sum_table(limit)
    top = int(sig.max())
    phi_big = totient_table(top)
    return sig, phi_big[: limit + 1].copy(), phi_big[sig]
