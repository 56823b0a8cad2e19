"""Factor a range, then follow n -> sigma(n) -> phi(sigma(n)).

Run:  python demos/01_sieve_and_composition.py
"""
from sigma_phi_lab import (
    PrimePowerSigmaCache,
    build_spf_table,
    divides_sigma,
    factorize,
    phi,
    phi_sigma,
    sieve_range,
    sigma,
    sigma_factored,
)

# %% A small SPF table and a few factorizations
table = build_spf_table(10**5)
for n in (1, 12, 97, 8, 9, 720):
    f = factorize(n, table)
    print(f"{n:>4} = {f.factors}  phi={phi(f)}  sigma={sigma(f)}")

# %% sigma(n) factored from the pieces sigma(p^k), without factoring sigma(n) itself
cache = PrimePowerSigmaCache()
for n in (6, 8, 9, 720, 99991):
    f = factorize(n, table)
    s = sigma_factored(f, cache)
    print(f"sigma({n}) = {s.value} = {s.factors};  phi(sigma({n})) = {phi_sigma(f, cache)}")
print(f"cache: {len(cache)} prime powers, {cache.hits} hits")

# %% The n with phi(sigma(n)) >= n below 50 (closed comparison, so n = 8 counts)
print([n for n in range(1, 51) if phi_sigma(factorize(n, table), cache) >= n])

# %% A prime q = -1 (mod p) appearing to the first power forces p | sigma(n)
for n in (19, 19 * 4, 19 * 7 * 3):
    print(n, divides_sigma(5, factorize(n, table)))

# %% Segments far from the origin only need primes up to sqrt(hi)
seg = sieve_range(10**10, 10**10 + 8)
for f in seg:
    print(f.value, f.factors)
