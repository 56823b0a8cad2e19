"""Range scans: every counting function built on sigma(n) and phi(sigma(n)).

A scan splits [1, x] into fixed-size segments, tallies each segment on a
thread pool and merges the tallies in ascending segment order.  Integer
counts merge by addition; float sums are fsum'd per segment and then
fsum'd across segments in index order, so the report does not depend on
the number of workers.

Threshold comparisons are closed (">=") and exact: a real constant c is
replaced by a fraction a/b with b <= 10**6 and phi(sigma(n)) >= c n is
tested as b * phi(sigma(n)) >= a * n in int64.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .analytic import BoundEvaluation, iterated_log, mean_value_main_term, sigma_sum_main_term
from .errors import CapacityError, ConfigError, DomainError
from .sieve import DEFAULT_SEGMENT_SIZE, INT64_MAX, X_CAP, is_prime, primes_upto

MAX_DENOMINATOR = 10**6

#: Threshold functions: "const" means c*n; the others mean n / f(n).
F_CHOICES = ("const", "log", "loglog", "log5")


def _exact(value) -> Fraction:
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def as_fraction(value) -> Fraction:
    """Fraction used for exact comparisons.

    Ints, Fractions and strings ("1/5", "0.2", "1e6") are exact; floats,
    and anything whose denominator exceeds 10**6, become the nearest
    fraction with denominator <= 10**6.
    """
    frac = _exact(value)
    if isinstance(value, float) or frac.denominator > MAX_DENOMINATOR:
        frac = frac.limit_denominator(MAX_DENOMINATOR)
    return frac


def fraction_below(value: float, max_den: int = MAX_DENOMINATOR) -> Fraction:
    """Closest fraction <= value with denominator <= max_den."""
    exact = Fraction(value)
    if exact.denominator <= max_den:
        return exact
    p0, q0, p1, q1 = 0, 1, 1, 0
    n, d = exact.numerator, exact.denominator
    while True:
        a = n // d
        q2 = q0 + a * q1
        if q2 > max_den:
            break
        p0, q0, p1, q1 = p1, q1, p0 + a * p1, q2
        n, d = d, n - a * d
    k = (max_den - q0) // q1
    # the two candidates straddle value
    return min(Fraction(p0 + k * p1, q0 + k * q1), Fraction(p1, q1))


@dataclass(frozen=True)
class ScanConfig:
    """Parameters of one scan.

    ``delta=None`` means the largest value the inclusion argument allows,
    c * ln y, rounded down to a fraction.
    """

    x: int
    y: float = 3.0
    c: Fraction | float | int | str = 1
    delta: Fraction | float | int | str | None = None
    f_choice: str = "const"
    p_list: tuple[int, ...] = (3, 5, 7)
    segment_size: int = DEFAULT_SEGMENT_SIZE
    worker_count: int = 1

    def __post_init__(self):
        object.__setattr__(self, "x", int(self.x))
        object.__setattr__(self, "p_list", tuple(int(p) for p in self.p_list))
        if self.x < 1:
            raise ConfigError(f"x must be >= 1, got {self.x}")
        if self.x > X_CAP:
            raise CapacityError(f"x={self.x} exceeds the global cap {X_CAP}")
        if not self.y >= 2:
            raise ConfigError(f"y must be >= 2, got {self.y}")
        if self.c_fraction <= 0:
            raise ConfigError(f"c must be positive, got {self.c}")
        if self.delta_fraction <= 0:
            raise ConfigError(f"delta must be positive, got {self.delta}")
        if self.f_choice not in F_CHOICES:
            raise ConfigError(f"f_choice must be one of {F_CHOICES}, got {self.f_choice!r}")
        if self.f_choice == "log5":
            # log_5 n is positive only for n > e^e^e^e^e, far beyond any scannable x
            try:
                ok = iterated_log(5, self.x) > 0
            except DomainError:
                ok = False
            if not ok:
                raise ConfigError(
                    f"f = log_5 is not positive on [1, {self.x}]; "
                    "it needs x > exp(exp(exp(exp(e))))"
                )
        bad = [p for p in self.p_list if not is_prime(p)]
        if bad:
            raise ConfigError(f"p_list entries must be prime: {bad}")
        if self.segment_size < 1 or self.worker_count < 1:
            raise ConfigError("segment_size and worker_count must be >= 1")
        # int64 headroom: phi(sigma(n)) <= sigma(n) < n (1 + ln n)
        sigma_max = self.x * (1 + math.log(self.x))
        for frac in (self.c_fraction, self.delta_fraction):
            if frac.numerator * self.x > INT64_MAX or frac.denominator * sigma_max > INT64_MAX:
                raise CapacityError(f"exact comparison with {frac} at x={self.x} overflows int64")

    @property
    def c_fraction(self) -> Fraction:
        return as_fraction(self.c)

    @property
    def delta_fraction(self) -> Fraction:
        """delta as compared: rounded down, and capped at c ln y when the
        supplied values satisfy delta <= c ln y."""
        cap = fraction_below(float(self.c_fraction) * math.log(self.y))
        if self.delta is None:
            return cap
        exact = _exact(self.delta)
        d = exact if exact.denominator <= MAX_DENOMINATOR else fraction_below(float(exact))
        if self.side_condition_holds() and d > cap:
            d = cap
        return d

    @property
    def small_primes(self) -> tuple[int, ...]:
        """Primes p <= y, whose product is P(y)."""
        return tuple(primes_upto(int(math.floor(self.y))).tolist())

    def side_condition_holds(self) -> bool:
        """delta <= c ln y for the supplied values, i.e. 1 / ln y <= c / delta."""
        if self.delta is None:
            return True
        return float(_exact(self.delta)) <= float(_exact(self.c)) * math.log(self.y) * (1 + 1e-12)

    def require_side_condition(self) -> None:
        if not self.side_condition_holds():
            raise ConfigError(
                f"inclusion check needs delta <= c ln y; got delta={float(_exact(self.delta)):.6g} > "
                f"c ln y = {float(_exact(self.c)) * math.log(self.y):.6g}"
            )


@dataclass
class CountReport:
    """Merged result of a scan of [1, x]."""

    x: int
    config: ScanConfig
    sp_counts: dict[int, int] = field(default_factory=dict)
    sp_divisible: dict[int, int] = field(default_factory=dict)
    primorial_count: int = 0
    threshold_count: int = 0
    sigma_ratio_count: int = 0
    sigma_over_n_sum: float = 0.0
    sigma_sum: int = 0
    inclusion_violations: list[int] | None = None

    @property
    def markov(self) -> BoundEvaluation:
        d = self.config.delta_fraction
        return BoundEvaluation.compare(
            f"#{{sigma(n) >= {d} n}} vs (1/delta) sum sigma(n)/n",
            self.sigma_ratio_count,
            self.sigma_over_n_sum / float(d),
        )

    @property
    def mean_value(self) -> BoundEvaluation:
        return BoundEvaluation.compare(
            "sum sigma(n)/n vs (pi^2/6) x", self.sigma_over_n_sum, mean_value_main_term(self.x)
        )

    @property
    def sigma_sum_check(self) -> BoundEvaluation:
        return BoundEvaluation.compare(
            "sum sigma(n) vs (pi^2/12) x^2", float(self.sigma_sum), sigma_sum_main_term(self.x)
        )

    def invariant_failures(self) -> list[str]:
        """Facts that hold for every x; an empty list means all is well."""
        out = []
        for name in ("primorial_count", "threshold_count", "sigma_ratio_count"):
            v = getattr(self, name)
            if not 0 <= v <= self.x:
                out.append(f"{name}={v} outside [0, {self.x}]")
        for p, s in self.sp_counts.items():
            if s + self.sp_divisible[p] != self.x:
                out.append(f"S_{p} + #{{p | sigma(n)}} = {s + self.sp_divisible[p]} != x")
        if self.sigma_ratio_count > self.markov.theoretical:
            out.append(f"Markov bound broken: {self.markov}")
        if self.inclusion_violations:
            out.append(f"inclusion violated at n = {self.inclusion_violations[:10]}")
        return out


@dataclass(frozen=True)
class _Plan:
    cfg: ScanConfig
    need_phi_sigma: bool
    check_inclusion: bool
    trial_primes: np.ndarray = field(repr=False)


@dataclass
class _Tally:
    sp_divisible: list[int]
    sp_free: list[int]
    primorial: int
    threshold: int
    sigma_ratio: int
    sigma_over_n: float
    sigma_sum: int
    violations: list[int]


def phi_sigma_range(lo: int, hi: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(n, sigma(n), phi(sigma(n))) as int64 arrays for n in [lo, hi)."""
    if lo < 1 or hi <= lo:
        raise DomainError(f"need 1 <= lo < hi, got lo={lo}, hi={hi}")
    if hi - 1 > X_CAP:
        raise CapacityError(f"range end {hi - 1} exceeds the global cap {X_CAP}")
    primes = primes_upto(math.isqrt(2 * hi) + 1)
    fp, fe, nf, sig, _ = _kernels.factor_segment(lo, hi, primes)
    return np.arange(lo, hi, dtype=np.int64), sig, _kernels.phi_of_sigma(fp, fe, nf, sig, primes)


def _threshold_mask(cfg: ScanConfig, n: np.ndarray, ps: np.ndarray) -> np.ndarray:
    if cfg.f_choice == "const":
        c = cfg.c_fraction
        return c.denominator * ps >= c.numerator * n
    # phi(sigma(n)) >= n / f(n) is tested as phi(sigma(n)) f(n) >= n,
    # so n where f(n) <= 0 never qualify.
    nf = n.astype(np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        f = np.log(nf)
        if cfg.f_choice == "loglog":
            f = np.log(f)
    f = np.where(np.isfinite(f), f, -1.0)
    return (f > 0) & (ps * f >= nf)


def _exact_int_sum(a: np.ndarray) -> int:
    return sum(int(v) for v in np.add.reduceat(a, np.arange(0, a.size, 1 << 16)))


def _tally(plan: _Plan, lo: int, hi: int) -> _Tally:
    cfg = plan.cfg
    fp, fe, nf, sig, _ = _kernels.factor_segment(lo, hi, plan.trial_primes)
    n = np.arange(lo, hi, dtype=np.int64)

    residues = [sig % p for p in cfg.p_list]
    sp_div = [int(np.count_nonzero(r == 0)) for r in residues]
    sp_free = [int(np.count_nonzero(r != 0)) for r in residues]
    prim = np.ones(hi - lo, dtype=bool)
    for r in cfg.small_primes:
        prim &= sig % r == 0
    d = cfg.delta_fraction
    big = d.denominator * sig >= d.numerator * n

    threshold = 0
    violations: list[int] = []
    if plan.need_phi_sigma:
        ps = _kernels.phi_of_sigma(fp, fe, nf, sig, plan.trial_primes)
        threshold = int(np.count_nonzero(_threshold_mask(cfg, n, ps)))
        if plan.check_inclusion:
            c = cfg.c_fraction
            bad = (c.denominator * ps >= c.numerator * n) & ~big & prim
            violations = n[bad].tolist()
    return _Tally(
        sp_divisible=sp_div,
        sp_free=sp_free,
        primorial=int(np.count_nonzero(prim)),
        threshold=threshold,
        sigma_ratio=int(np.count_nonzero(big)),
        sigma_over_n=math.fsum((sig / n).tolist()),
        sigma_sum=_exact_int_sum(sig),
        violations=violations,
    )


def run_scan(
    cfg: ScanConfig,
    need_phi_sigma: bool = True,
    check_inclusion: bool | None = None,
    base_primes: np.ndarray | None = None,
) -> CountReport:
    """Scan [1, cfg.x] and return every count.

    The inclusion check runs by default whenever delta <= c ln y; when it
    does not run ``inclusion_violations`` is None.  ``base_primes`` (e.g.
    from the SPF cache) must cover sqrt(2x + 2); otherwise they are sieved.
    """
    if check_inclusion is None:
        check_inclusion = need_phi_sigma and cfg.side_condition_holds()
    elif check_inclusion:
        cfg.require_side_condition()
        need_phi_sigma = True
    need = math.isqrt(2 * cfg.x + 2) + 1
    if base_primes is None or base_primes.size == 0 or base_primes[-1] < need:
        base_primes = primes_upto(need)
    else:
        base_primes = base_primes[: np.searchsorted(base_primes, need, side="right")]
    plan = _Plan(cfg, need_phi_sigma, check_inclusion, np.ascontiguousarray(base_primes, np.int64))
    bounds = [(a, min(a + cfg.segment_size, cfg.x + 1)) for a in range(1, cfg.x + 1, cfg.segment_size)]
    if cfg.worker_count == 1 or len(bounds) == 1:
        tallies = [_tally(plan, a, b) for a, b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=cfg.worker_count) as pool:
            tallies = list(pool.map(lambda ab: _tally(plan, *ab), bounds))

    report = CountReport(x=cfg.x, config=cfg)
    for i, p in enumerate(cfg.p_list):
        report.sp_divisible[p] = sum(t.sp_divisible[i] for t in tallies)
        report.sp_counts[p] = sum(t.sp_free[i] for t in tallies)
    report.primorial_count = sum(t.primorial for t in tallies)
    report.threshold_count = sum(t.threshold for t in tallies)
    report.sigma_ratio_count = sum(t.sigma_ratio for t in tallies)
    report.sigma_over_n_sum = math.fsum(t.sigma_over_n for t in tallies)
    report.sigma_sum = sum(t.sigma_sum for t in tallies)
    if check_inclusion:
        report.inclusion_violations = [v for t in tallies for v in t.violations]
    return report


def count_sp(p: int, x: int, **opts) -> int:
    """S_p(x) = #{n <= x : p does not divide sigma(n)}."""
    if not is_prime(p):
        raise DomainError(f"count_sp needs a prime, got {p}")
    cfg = ScanConfig(x=x, p_list=(p,), **opts)
    return run_scan(cfg, need_phi_sigma=False).sp_counts[p]


def count_primorial_divisible(y: float, x: int, **opts) -> int:
    """#{n <= x : every prime p <= y divides sigma(n)}."""
    return run_scan(ScanConfig(x=x, y=y, p_list=(), **opts), need_phi_sigma=False).primorial_count


def count_threshold(cfg: ScanConfig) -> int:
    """#{n <= x : phi(sigma(n)) >= c n}, or >= n / f(n) for the other f choices."""
    return run_scan(cfg, check_inclusion=False).threshold_count


def count_sigma_ratio(delta, x: int, **opts) -> int:
    """#{n <= x : sigma(n) >= delta n}."""
    cfg = ScanConfig(x=x, delta=delta, p_list=(), **opts)
    return run_scan(cfg, need_phi_sigma=False).sigma_ratio_count


def sigma_over_n_sum(x: int, **opts) -> float:
    """sum_{n <= x} sigma(n) / n."""
    return run_scan(ScanConfig(x=x, p_list=(), **opts), need_phi_sigma=False).sigma_over_n_sum


def verify_inclusion(cfg: ScanConfig) -> list[int]:
    """Every n <= x with phi(sigma(n)) >= c n, sigma(n) < delta n and P(y) | sigma(n).

    Whenever delta <= c ln y this list is empty: such n would need
    phi(sigma(n)) <= sigma(n) prod_{p<=y}(1 - 1/p) < delta n / ln y <= c n.
    """
    cfg.require_side_condition()
    return run_scan(cfg, check_inclusion=True).inclusion_violations


def markov_check(delta, x: int, **opts) -> BoundEvaluation:
    """#{n <= x : sigma(n) >= delta n} against (1/delta) sum sigma(n)/n."""
    cfg = ScanConfig(x=x, delta=delta, p_list=(), **opts)
    return run_scan(cfg, need_phi_sigma=False).markov
