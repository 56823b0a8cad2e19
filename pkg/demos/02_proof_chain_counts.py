"""Each count in the argument that phi(sigma(n)) < c n for almost all n.

Run:  python demos/02_proof_chain_counts.py [x]
"""
import math
import sys

from sigma_phi_lab import ScanConfig, run_scan

x = int(float(sys.argv[1])) if len(sys.argv) > 1 else 10**6

# %% One scan produces every count at once
cfg = ScanConfig(x=x, y=5, c=1, p_list=(2, 3, 5, 7))
rep = run_scan(cfg)
print(f"x = {x}, y = {cfg.y}, c = {cfg.c_fraction}, delta = {cfg.delta_fraction} (c ln y rounded down)")

# %% S_p(x): sigma(n) escapes divisibility by p only rarely, and less often as x grows
for p, s in rep.sp_counts.items():
    print(f"  S_{p}(x)/x = {s / x:.5f}")

# %% Every prime <= y divides sigma(n) for most n ...
print(f"  #{{P(y) | sigma(n)}} / x = {rep.primorial_count / x:.5f}")

# %% ... while sigma(n) >= delta n is controlled by the mean value of sigma(n)/n
mk = rep.markov
print(f"  #{{sigma(n) >= delta n}} = {mk.empirical}  <=  (1/delta) sum sigma(n)/n = {mk.theoretical:.1f}")
print(f"  sum sigma(n)/n / x = {rep.sigma_over_n_sum / x:.6f}   pi^2/6 = {math.pi ** 2 / 6:.6f}")

# %% The two conditions together force phi(sigma(n)) < c n: no exceptions exist
print(f"  inclusion violations: {len(rep.inclusion_violations)}")
print(f"  #{{phi(sigma(n)) >= c n}} = {rep.threshold_count}  ({rep.threshold_count / x:.5f} of x)")

# %% Shrinking c leaves more n above the threshold
for c in ("1/2", "1/5", "1/10"):
    r = run_scan(ScanConfig(x=x, y=5, c=c, p_list=()))
    print(f"  c = {c:>4}: #{{phi(sigma(n)) >= c n}} / x = {r.threshold_count / x:.5f}, "
          f"violations {len(r.inclusion_violations)}")
