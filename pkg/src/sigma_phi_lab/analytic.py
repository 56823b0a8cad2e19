"""Analytic comparison quantities: Mertens products, li(x), primes in
progressions, reciprocal sums over primes, iterated logarithms, the
Brun-type sieve proportion and the S_p bound shape.

All logarithms are natural.  Where a bound carries an unknown implied
constant only its shape is returned; comparisons are reported as ratios.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import CapacityError, DomainError, InvariantViolation
from .sieve import X_CAP, is_prime, primes_upto, trial_factorize
from .sieve import phi as _phi

PI2_OVER_6 = math.pi**2 / 6


@dataclass(frozen=True)
class BoundEvaluation:
    """An empirical quantity paired with the analytic value it is compared to."""

    label: str
    empirical: float
    theoretical: float
    deviation: float
    relative_deviation: float

    @classmethod
    def compare(cls, label: str, empirical: float, theoretical: float) -> BoundEvaluation:
        deviation = empirical - theoretical
        rel = deviation / theoretical if theoretical != 0 else math.copysign(math.inf, deviation)
        return cls(label, empirical, theoretical, deviation, rel)

    @property
    def ratio(self) -> float:
        if self.theoretical == 0:
            return math.inf if self.empirical else 1.0
        return self.empirical / self.theoretical


def mertens_product(y: float) -> float:
    """prod over primes p <= y of (1 - 1/p), multiplied from the largest prime down.

    Raises InvariantViolation if the result is not strictly below 1/ln y.
    """
    if y < 2:
        raise DomainError(f"mertens_product needs y >= 2, got {y}")
    ps = primes_upto(int(math.floor(y)))
    out = math.prod((1.0 - 1.0 / ps[::-1]).tolist())
    bound = 1.0 / math.log(y)
    if not out < bound:
        raise InvariantViolation(f"Mertens product {out!r} is not below 1/ln({y}) = {bound!r}")
    return out


def _adaptive_simpson(f: Callable[[float], float], a: float, b: float, tol: float) -> float:
    """Adaptive Simpson on [a, b]; a panel is accepted once |S2 - S1| / 15 < tol."""
    fa, fm, fb = f(a), f((a + b) / 2), f(b)
    whole = (b - a) / 6 * (fa + 4 * fm + fb)
    pieces = []
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    while stack:
        a, b, fa, fm, fb, whole, tol, depth = stack.pop()
        m = (a + b) / 2
        lm, rm = (a + m) / 2, (m + b) / 2
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6 * (fa + 4 * flm + fm)
        right = (b - m) / 6 * (fm + 4 * frm + fb)
        err = left + right - whole
        if abs(err) < 15 * tol or depth >= 60:
            pieces.append((a, left + right + err / 15))
        else:
            # right half pushed first so the left half is finished first
            stack.append((m, b, fm, frm, fb, right, tol / 2, depth + 1))
            stack.append((a, m, fa, flm, fm, left, tol / 2, depth + 1))
    return math.fsum(v for _, v in sorted(pieces))


def li(x: float) -> float:
    """Offset logarithmic integral, the integral of 1/ln t over [2, x]."""
    if x < 2:
        raise DomainError(f"li is defined here for x >= 2, got {x}")
    if x == 2:
        return 0.0
    return _adaptive_simpson(lambda t: 1.0 / math.log(t), 2.0, float(x), 1e-9)


def totient(q: int) -> int:
    return _phi(trial_factorize(q))


def prime_count_ap(x: int, q: int, a: int) -> int:
    """Number of primes p <= x with p = a (mod q)."""
    x, q, a = int(x), int(q), int(a)
    if q < 1 or math.gcd(a, q) != 1:
        raise DomainError(f"prime_count_ap needs gcd(a, q) = 1, got a={a}, q={q}")
    if x < 2:
        raise DomainError(f"prime_count_ap needs x >= 2, got {x}")
    ps = primes_upto(x)
    return int(np.count_nonzero(ps % q == a % q))


def siegel_walfisz_check(x: int, q: int, a: int) -> BoundEvaluation:
    """pi(x; q, a) against its main term li(x) / phi(q)."""
    return BoundEvaluation.compare(
        f"pi({x};{q},{a}) vs li/phi(q)", prime_count_ap(x, q, a), li(x) / totient(q)
    )


def ap_reciprocal_sum(p: int, lo: float, hi: float) -> float:
    """Sum of 1/q over primes lo < q < hi with q = -1 (mod p), in ascending order."""
    if not is_prime(p):
        raise DomainError(f"ap_reciprocal_sum needs a prime modulus, got {p}")
    if not 2 <= lo < hi:
        raise DomainError(f"ap_reciprocal_sum needs 2 <= lo < hi, got lo={lo}, hi={hi}")
    ps = primes_upto(int(math.ceil(hi)))
    qs = ps[(ps > lo) & (ps < hi) & (ps % p == p - 1)]
    return math.fsum((1.0 / qs).tolist())


def iterated_log(k: int, x: float) -> float:
    """log applied k times; DomainError as soon as an argument is <= 0."""
    if k < 1:
        raise DomainError(f"iterated_log needs k >= 1, got {k}")
    v = float(x)
    for i in range(1, k + 1):
        if v <= 0:
            raise DomainError(
                f"log_{k}({x}) is undefined: iteration {i} would take log of {v!r} <= 0"
            )
        v = math.log(v)
    return v


def ap_sum_leading_term(p: int, x: float) -> float:
    """(log_2 x - log_3 x) / (p - 1), the main term of the reciprocal sum."""
    return (iterated_log(2, x) - iterated_log(3, x)) / (p - 1)


def ap_sum_comparison(p: int, x: float, enforce_hypothesis: bool = True) -> BoundEvaluation:
    """Reciprocal sum over (ln x, x) of primes = -1 (mod p) vs its main term.

    The partial-summation argument needs ln x > e**p.  With
    ``enforce_hypothesis`` that is checked; otherwise the comparison is
    still made and the label records that the hypothesis is not met.
    """
    met = math.log(x) > math.exp(p)
    if enforce_hypothesis and not met:
        raise DomainError(
            f"the reciprocal-sum estimate assumes ln x > e^p; ln({x}) = {math.log(x):.4f} "
            f"<= e^{p} = {math.exp(p):.4f}"
        )
    label = f"ap_sum p={p} x={x:g}" + ("" if met else " (ln x <= e^p)")
    return BoundEvaluation.compare(
        label, ap_reciprocal_sum(p, math.log(x), x), ap_sum_leading_term(p, x)
    )


@dataclass(frozen=True)
class PrimeSetProfile:
    """A set P of primes given by a vectorized membership test.

    ``member_test`` maps an int64 array of primes to a boolean mask.
    """

    description: str
    member_test: Callable[[np.ndarray], np.ndarray]

    def members(self, x: int) -> np.ndarray:
        ps = primes_upto(int(x))
        return ps[np.asarray(self.member_test(ps), dtype=bool)]

    def A(self, x: int) -> float:
        """Sum of 1/p over members p <= x."""
        return math.fsum((1.0 / self.members(x)).tolist())

    @classmethod
    def residue_class(cls, q: int, a: int, lo: float = 0, hi: float = math.inf) -> PrimeSetProfile:
        """Primes r with r = a (mod q) and lo < r < hi."""
        return cls(
            f"r = {a} mod {q}, {lo:g} < r < {hi:g}",
            lambda ps: (ps % q == a % q) & (ps > lo) & (ps < hi),
        )

    @classmethod
    def finite(cls, primes) -> PrimeSetProfile:
        ps = np.asarray(sorted(primes), dtype=np.int64)
        return cls(f"{{{', '.join(map(str, ps.tolist()))}}}", lambda arr: np.isin(arr, ps))


def free_count(members: np.ndarray, x: int) -> int:
    """#{n <= x : no prime from ``members`` divides n}."""
    free = np.ones(x + 1, dtype=bool)
    free[0] = False
    for q in members.tolist():
        free[q::q] = False
    return int(np.count_nonzero(free))


def brun_proportion(profile: PrimeSetProfile, x: int) -> BoundEvaluation:
    """Proportion of n <= x free of primes from P, against exp(-A(x))."""
    x = int(x)
    if x < 1:
        raise DomainError(f"brun_proportion needs x >= 1, got {x}")
    if x > X_CAP:
        raise CapacityError(f"x={x} exceeds the global cap {X_CAP}")
    members = profile.members(x)
    empirical = free_count(members, x) / x
    return BoundEvaluation.compare(
        f"P-free proportion [{profile.description}] x={x}",
        empirical,
        math.exp(-math.fsum((1.0 / members).tolist())),
    )


def lemma4_bound_shape(p: int, x: float) -> float:
    """x * (ln ln x / ln x) ** (1 / (p - 1)), without its implied constant.

    Only defined for x >= e**p.
    """
    if not is_prime(p):
        raise DomainError(f"bound shape needs a prime p, got {p}")
    if x < math.exp(p):
        raise DomainError(f"the S_p bound holds for x >= e^p; got x={x} < e^{p}")
    lx = math.log(x)
    return x * (math.log(lx) / lx) ** (1.0 / (p - 1))


def square_multiple_count(p: int, lo: float, x: int) -> int:
    """#{n <= x : q**2 | n for some prime q = -1 (mod p) with lo < q < x}."""
    if not is_prime(p):
        raise DomainError(f"square_multiple_count needs a prime p, got {p}")
    if lo < 2:
        raise DomainError(f"square_multiple_count needs lo >= 2, got {lo}")
    x = int(x)
    if x > X_CAP:
        raise CapacityError(f"x={x} exceeds the global cap {X_CAP}")
    qs = primes_upto(math.isqrt(x))
    qs = qs[(qs > lo) & (qs < x) & (qs % p == p - 1)]
    hit = np.zeros(x + 1, dtype=bool)
    for q in qs.tolist():
        hit[q * q :: q * q] = True
    return int(np.count_nonzero(hit))


def mean_value_main_term(x: int) -> float:
    """(pi**2 / 6) x, the main term of sum_{n<=x} sigma(n)/n."""
    return PI2_OVER_6 * x


def sigma_sum_main_term(x: int) -> float:
    """(pi**2 / 12) x**2, the main term of sum_{n<=x} sigma(n)."""
    return math.pi**2 / 12 * x * x
