"""Oracle and property suites behind ``sigma-phi-lab verify``.

Each check returns None on success or a one-line counterexample.
"""

from __future__ import annotations

import math

import numpy as np

from .analytic import mertens_product
from .composition import divides_sigma
from .counting import ScanConfig, markov_check, phi_sigma_range, run_scan, verify_inclusion
from .errors import InvariantViolation
from .oracles import phi_sigma_table
from .sieve import primes_upto, sieve_range

ORACLE_LIMIT_MAX = 10**6


def oracle_suite(limit: int) -> str | None:
    """phi, sigma and phi(sigma) for n <= limit against the brute-force tables."""
    sig_o, phi_o, ps_o = phi_sigma_table(limit)
    seg = sieve_range(1, limit + 1)
    n, sig, ps = phi_sigma_range(1, limit + 1)
    for name, got, want in (
        ("sigma", seg.sigma, sig_o[1:]),
        ("phi", seg.phi, phi_o[1:]),
        ("sigma (composition path)", sig, sig_o[1:]),
        ("phi(sigma)", ps, ps_o[1:]),
    ):
        bad = np.flatnonzero(got != want)
        if bad.size:
            i = int(bad[0])
            return f"{name}({i + 1}) = {int(got[i])}, oracle says {int(want[i])}"
    return None


def check_inclusion(limit: int) -> str | None:
    for y in (2, 3, 5, 7, 11, 13):
        for c in ("1", "1/2", "1/5", "3"):
            cfg = ScanConfig(x=limit, y=y, c=c, p_list=())
            bad = verify_inclusion(cfg)
            if bad:
                return f"inclusion fails at n={bad[0]} for y={y}, c={c}, delta={cfg.delta_fraction}"
    return None


def check_markov(limit: int) -> str | None:
    for delta in ("1", "3/2", "2", "5/2", "3", "4"):
        ev = markov_check(delta, limit)
        if ev.empirical > ev.theoretical:
            return f"Markov fails at delta={delta}: count {ev.empirical} > {ev.theoretical}"
    return None


def check_mertens(limit: int) -> str | None:
    for y in primes_upto(limit).tolist():
        try:
            mertens_product(y)
        except InvariantViolation as exc:
            return str(exc)
    return None


def check_multiplicativity(limit: int) -> str | None:
    seg = sieve_range(1, limit + 1)
    top = math.isqrt(limit)
    for m in range(1, top + 1):
        for k in range(1, limit // m + 1):
            if math.gcd(m, k) != 1:
                continue
            mk = m * k
            if seg.phi[mk - 1] != seg.phi[m - 1] * seg.phi[k - 1]:
                return f"phi({m}*{k}) is not phi({m}) phi({k})"
            if seg.sigma[mk - 1] != seg.sigma[m - 1] * seg.sigma[k - 1]:
                return f"sigma({m}*{k}) is not sigma({m}) sigma({k})"
    return None


def check_sandwich(limit: int) -> str | None:
    if limit < 2:
        return None
    seg = sieve_range(2, limit + 1)
    n = seg.values.astype(np.float64)
    r = seg.phi.astype(np.float64) * seg.sigma.astype(np.float64) / (n * n)
    bad = np.flatnonzero(~((r > 6 / math.pi**2) & (r <= 1)))
    if bad.size:
        return f"phi(n) sigma(n) / n^2 = {r[bad[0]]!r} at n={int(n[bad[0]])}"
    return None


def check_complementarity(limit: int) -> str | None:
    rep = run_scan(ScanConfig(x=limit, p_list=(2, 3, 5, 7, 11, 13)), need_phi_sigma=False)
    for p, s in rep.sp_counts.items():
        if s + rep.sp_divisible[p] != limit:
            return f"S_{p} + #(p | sigma) = {s + rep.sp_divisible[p]} != {limit}"
    return None


def check_predicate(limit: int) -> str | None:
    top = min(limit, 20_000)
    seg = sieve_range(1, top + 1)
    for f in seg:
        s = int(seg.sigma[f.value - 1])
        for p in (2, 3, 5, 7, 11, 13):
            if divides_sigma(p, f) != (s % p == 0):
                return f"divides_sigma({p}, {f.value}) disagrees with sigma = {s}"
    return None


PROPERTY_CHECKS = {
    "inclusion": check_inclusion,
    "markov": check_markov,
    "mertens": check_mertens,
    "multiplicativity": check_multiplicativity,
    "sandwich": check_sandwich,
    "complementarity": check_complementarity,
    "predicate": check_predicate,
}
