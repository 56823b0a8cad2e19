"""Compiled inner loops for segment factorization and phi(sigma(n)).

Every kernel is ``nogil`` so disjoint segments can run on a thread pool.
All arithmetic is int64; callers guarantee values stay below 2**63.
"""

import numba
import numpy as np

# n <= 1e11 has at most 10 distinct prime factors (2*3*...*31 > 1e11).
MAX_DISTINCT = 12


@numba.njit(nogil=True, cache=True)
def factor_segment(lo, hi, primes):
    """Factor every n in [lo, hi) with the sieving primes ``primes``.

    ``primes`` must contain every prime <= isqrt(hi - 1), ascending.
    Returns (fp, fe, nf, sigma, phi); row i describes n = lo + i.
    """
    size = hi - lo
    rem = np.empty(size, np.int64)
    for i in range(size):
        rem[i] = lo + i
    fp = np.zeros((size, MAX_DISTINCT), np.int64)
    fe = np.zeros((size, MAX_DISTINCT), np.int64)
    nf = np.zeros(size, np.int64)
    sigma = np.ones(size, np.int64)
    phi = np.ones(size, np.int64)
    for j in range(primes.shape[0]):
        p = primes[j]
        if p * p > hi - 1:
            break
        start = ((lo + p - 1) // p) * p
        for m in range(start, hi, p):
            i = m - lo
            r = rem[i]
            k = 0
            pk = 1
            while r % p == 0:
                r //= p
                k += 1
                pk *= p
            rem[i] = r
            c = nf[i]
            fp[i, c] = p
            fe[i, c] = k
            nf[i] = c + 1
            sigma[i] *= (pk * p - 1) // (p - 1)
            phi[i] *= (pk // p) * (p - 1)
    for i in range(size):
        r = rem[i]
        if r > 1:
            c = nf[i]
            fp[i, c] = r
            fe[i, c] = 1
            nf[i] = c + 1
            sigma[i] *= r + 1
            phi[i] *= r - 1
    return fp, fe, nf, sigma, phi


@numba.njit(nogil=True, cache=True)
def _strip(rem, r):
    while rem % r == 0:
        rem //= r
    return rem


@numba.njit(nogil=True, cache=True)
def phi_of_sigma(fp, fe, nf, sigma, primes):
    """phi(sigma(n)) for each row, from the factorization of n.

    sigma(n) is the product of sigma(p**k) over p**k || n.  Each component
    is trial-divided by ``primes`` (which must reach isqrt(2 * max n));
    a prime r of sigma(n) is applied once, the first time it is met, by
    stripping it from a running cofactor of sigma(n).
    """
    size = sigma.shape[0]
    out = np.empty(size, np.int64)
    nprimes = primes.shape[0]
    for i in range(size):
        val = sigma[i]
        left = val
        for c in range(nf[i]):
            if left == 1:
                break
            p = fp[i, c]
            k = fe[i, c]
            t = 1
            pk = 1
            for _ in range(k):
                pk *= p
                t += pk
            for j in range(nprimes):
                r = primes[j]
                if r * r > t:
                    break
                if t % r == 0:
                    t = _strip(t, r)
                    if left % r == 0:
                        val = (val // r) * (r - 1)
                        left = _strip(left, r)
            if t > 1 and left % t == 0:
                val = (val // t) * (t - 1)
                left = _strip(left, t)
        out[i] = val
    return out


@numba.njit(nogil=True, cache=True)
def spf_sieve(limit):
    """Smallest-prime-factor table of length limit + 1 (entries 0, 1 are 0)."""
    spf = np.zeros(limit + 1, np.uint32)
    p = 2
    while p <= limit:
        if spf[p] == 0:
            spf[p] = p
            if p * p <= limit:
                for m in range(p * p, limit + 1, p):
                    if spf[m] == 0:
                        spf[m] = p
        p += 1
    return spf
