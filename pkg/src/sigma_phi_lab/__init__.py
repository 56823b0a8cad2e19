"""Sieve-based computation of phi(sigma(n)) and exact checks of the
counting arguments showing phi(sigma(n)) < c n for almost all n."""

__version__ = "0.1.0"

from .analytic import (
    BoundEvaluation,
    PrimeSetProfile,
    ap_reciprocal_sum,
    ap_sum_comparison,
    brun_proportion,
    iterated_log,
    lemma4_bound_shape,
    li,
    mertens_product,
    prime_count_ap,
    siegel_walfisz_check,
    square_multiple_count,
)
from .composition import PrimePowerSigmaCache, divides_sigma, phi_sigma, sigma_factored
from .counting import (
    CountReport,
    ScanConfig,
    count_primorial_divisible,
    count_sigma_ratio,
    count_sp,
    count_threshold,
    markov_check,
    phi_sigma_range,
    run_scan,
    sigma_over_n_sum,
    verify_inclusion,
)
from .errors import CacheFormatError, CapacityError, ConfigError, DomainError, InvariantViolation
from .sieve import (
    FactoredInteger,
    SieveSegment,
    SpfTable,
    build_spf_table,
    factorize,
    phi,
    sieve_range,
    sigma,
)
