"""Analytic quantities next to their empirical counterparts.

Run:  python demos/03_analytic_baselines.py
"""
import math

from sigma_phi_lab import (
    PrimeSetProfile,
    ap_sum_comparison,
    brun_proportion,
    count_sp,
    iterated_log,
    lemma4_bound_shape,
    li,
    mertens_product,
    siegel_walfisz_check,
    square_multiple_count,
)

x = 10**6

# %% Mertens: prod (1 - 1/p) sits well under 1/ln y (close to e^-gamma / ln y)
for y in (2, 3, 10, 100, 10**4):
    m = mertens_product(y)
    print(f"y={y:>6}: product {m:.6f}  1/ln y {1 / math.log(y):.6f}  ratio {m * math.log(y):.4f}")

# %% Primes in progressions against li(x)/phi(q)
print(f"li({x}) = {li(x):.3f}")
for p in (3, 5, 7, 11):
    ev = siegel_walfisz_check(x, p, p - 1)
    print(f"  pi(x; {p}, -1) = {ev.empirical:.0f}  main term {ev.theoretical:.1f}  rel {ev.relative_deviation:+.4f}")

# %% Reciprocal sum over q = -1 (mod 3) in (ln x, x); ln x > e^3 fails here, so the label says so
print(" ", ap_sum_comparison(3, x, enforce_hypothesis=False))
print("  square-multiple correction:", square_multiple_count(3, math.log(x), x), "vs x/ln x =", round(x / math.log(x)))

# %% Sieving out a prime set P: proportion free of P against exp(-A(x))
for k in range(2, 6):
    ev = brun_proportion(PrimeSetProfile.residue_class(3, 2, hi=10**k + 1), x)
    print(f"  P = {{q = 2 mod 3, q <= 1e{k}}}: free {ev.empirical:.5f}  exp(-A) {ev.theoretical:.5f}  ratio {ev.ratio:.3f}")

# %% S_p(x) against its bound shape (implied constant unknown, so only ratios)
for p in (3, 5, 7):
    print(f"  S_{p}(x) / shape = {count_sp(p, x) / lemma4_bound_shape(p, x):.4f}")

# %% Iterated logs: log_4 only turns positive past e^(e^e) ~ 3.8e6
for xx in (1e6, 1e7, 1e11):
    print(f"  log_4({xx:.0e}) = {iterated_log(4, xx):+.4f}")
