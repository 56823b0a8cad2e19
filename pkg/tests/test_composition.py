import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sigma_phi_lab import (
    DomainError,
    FactoredInteger,
    PrimePowerSigmaCache,
    build_spf_table,
    divides_sigma,
    factorize,
    phi,
    phi_sigma,
    phi_sigma_range,
    sigma,
    sigma_factored,
)
from sigma_phi_lab.sieve import primes_upto, trial_factorize


@pytest.fixture(scope="module")
def table():
    return build_spf_table(10**5)


def fi(*factors):
    return FactoredInteger.from_factors(factors)


def test_sigma_factored_examples():
    assert sigma_factored(fi((2, 1), (3, 1))) == fi((2, 2), (3, 1))
    assert sigma_factored(FactoredInteger(1)) == FactoredInteger(1)
    assert sigma_factored(fi((2, 2))) == fi((7, 1))


def test_phi_sigma_examples():
    assert phi_sigma(fi((2, 1), (3, 1))) == 4
    assert phi_sigma(FactoredInteger(1)) == 1
    assert phi_sigma(fi((2, 3))) == 8


def test_divides_sigma_examples():
    assert divides_sigma(3, fi((2, 1)))
    assert not divides_sigma(3, fi((2, 2)))
    assert divides_sigma(5, fi((19, 1)))
    with pytest.raises(DomainError):
        divides_sigma(4, fi((2, 1)))


def test_cache_entries_are_geometric_sums():
    cache = PrimePowerSigmaCache()
    for p in (2, 3, 5, 7, 97):
        for k in range(1, 8):
            assert cache.get(p, k).value == sum(p**j for j in range(k + 1))
    assert len(cache) == 35
    cache.get(2, 3)
    assert cache.hits == 1 and cache.misses == 35


def test_consistency_with_sieve_path(table, oracle_1e5):
    sig_o, _, ps_o = oracle_1e5
    cache = PrimePowerSigmaCache()
    big = build_spf_table(int(sig_o.max()))
    for n in range(1, 10**5 + 1, 7):
        f = factorize(n, table)
        s = sigma_factored(f, cache)
        assert s.value == sigma(f) == sig_o[n]
        assert phi_sigma(f, cache) == phi(factorize(s.value, big)) == ps_o[n]


def test_cold_and_warm_cache_agree(table):
    warm = PrimePowerSigmaCache()
    ns = list(range(1, 3000))
    first = [phi_sigma(factorize(n, table), warm) for n in ns]
    second = [phi_sigma(factorize(n, table), warm) for n in ns]
    cold = [phi_sigma(factorize(n, table), PrimePowerSigmaCache()) for n in ns]
    assert first == second == cold


def test_predicate_agreement(table, oracle_1e5):
    sig_o = oracle_1e5[0]
    for n in range(1, 10**5 + 1, 3):
        f = factorize(n, table)
        for p in (2, 3, 5, 7, 11, 13):
            assert divides_sigma(p, f) == (sig_o[n] % p == 0)


def test_q_exactly_dividing_n_forces_divisibility():
    # prime q = -1 (mod p) with q || n gives p | sigma(n), for every cofactor m
    qs = primes_upto(1000).tolist()
    for p in (2, 3, 5, 7, 11, 13):
        for q in (q for q in qs if q % p == p - 1):
            for m in range(1, 1001, 37):
                if math.gcd(q, m) != 1:
                    continue
                assert divides_sigma(p, trial_factorize(q * m))


@given(st.integers(1, 10**9), st.sampled_from([2, 3, 5, 7, 11, 13, 101]))
def test_divides_sigma_matches_sigma_mod_p(n, p):
    f = trial_factorize(n)
    assert divides_sigma(p, f) == (sigma(f) % p == 0)


@given(st.integers(1, 10**9))
def test_sigma_factored_large(n):
    f = trial_factorize(n)
    s = sigma_factored(f)
    assert s == trial_factorize(sigma(f))
    assert phi_sigma(f) == phi(s)


def test_range_kernel_matches_per_integer_path(table):
    n, sig, ps = phi_sigma_range(1, 20001)
    cache = PrimePowerSigmaCache()
    expect = np.array([phi_sigma(factorize(int(v), table), cache) for v in n])
    assert np.array_equal(ps, expect)
    assert np.array_equal(sig, [sigma(factorize(int(v), table)) for v in n])


def test_range_kernel_high_window():
    lo = 10**10
    n, sig, ps = phi_sigma_range(lo, lo + 500)
    for v, s, q in zip(n.tolist(), sig.tolist(), ps.tolist()):
        f = trial_factorize(v)
        assert s == sigma(f)
        assert q == phi(trial_factorize(s))
