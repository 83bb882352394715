"""Exact closed-form counts and probabilities for missing sums and differences.

Everything here is arbitrary-precision: probabilities are Fractions and the
combinatorial counts are Python integers.  Floating point appears only in the
log-domain gauge functions and in the regime targets, where the quantities are
compared against Monte Carlo output.

Two conventions used throughout:

* binomial(a, b) = 0 whenever b < 0, b > a, or a < 0, which makes every
  series below total without case splits;
* series over subset sizes run until their binomial coefficients vanish,
  so no admissible subset is ever dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError

__all__ = [
    "binomial",
    "path_count",
    "cycle_count",
    "lucas",
    "f_series",
    "expected_missing_sums",
    "expected_missing_sums_asymptotic",
    "prob_diff_missing",
    "prob_diff_missing_composite",
    "prob_both_sums_missing",
    "expected_missing_diffs",
    "MissingDiffExpectation",
    "gauge_functions",
    "gauge_g_squared_exact",
    "GaugeValues",
    "theoretical_targets",
    "Targets",
]


def binomial(a: int, b: int) -> int:
    """C(a, b) with the total convention: 0 outside 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def _as_probability(p) -> Fraction:
    f = Fraction(p)
    if not 0 <= f <= 1:
        raise ParameterError(f"p={p!r} outside [0, 1]")
    return f


def path_count(m: int, r: int) -> int:
    """Number of r-subsets of a path of m vertices with no two adjacent.

    Equals C(m - r + 1, r); zero as soon as r exceeds ceil(m/2).
    """
    if m < 0 or r < 0:
        raise ParameterError("m and r must be nonnegative")
    return binomial(m - r + 1, r)


def cycle_count(n: int, k: int) -> int:
    """Number of k-subsets of an n-cycle with no two adjacent.

    Equals C(n-k+1, k) - C(n-k-1, k-2); the count is 1 at k = 0 and vanishes
    for k > n/2 by pigeonhole.
    """
    if n < 2:
        raise ParameterError("cycle needs n >= 2")
    if k < 0:
        raise ParameterError("k must be nonnegative")
    return binomial(n - k + 1, k) - binomial(n - k - 1, k - 2)


def lucas(n: int) -> int:
    """Lucas number L_n (L_0 = 2, L_1 = 1, L_n = L_{n-1} + L_{n-2})."""
    if n < 0:
        raise ParameterError("n must be nonnegative")
    a, b = 2, 1
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, a + b
    return b


def _mat_pow_2x2(t: int, u: int, e: int) -> tuple[int, int, int, int]:
    """[[t, u], [1, 0]] ** e by binary exponentiation, exact integers."""
    r00, r01, r10, r11 = 1, 0, 0, 1
    b00, b01, b10, b11 = t, u, 1, 0
    while e:
        if e & 1:
            r00, r01, r10, r11 = (r00 * b00 + r01 * b10, r00 * b01 + r01 * b11,
                                  r10 * b00 + r11 * b10, r10 * b01 + r11 * b11)
        e >>= 1
        if e:
            b00, b01, b10, b11 = (b00 * b00 + b01 * b10, b00 * b01 + b01 * b11,
                                  b10 * b00 + b11 * b10, b10 * b01 + b11 * b11)
    return r00, r01, r10, r11


def f_series(n: int, p) -> Fraction:
    """The tail series F(n) = sum_{r=0}^{floor(n/2)} C(n-r, r) p^r (1-p)^(n-r), exactly.

    The sum is the Fibonacci-type polynomial G_n(x) = G_{n-1} + x G_{n-2}
    evaluated at x = p/(1-p) and scaled by (1-p)^n, so with p = a/b and
    d = b - a the integer sequence W_m = d^m G_m(a/d) obeys
    W_m = d W_{m-1} + a d W_{m-2} and F(n) = W_n / b^n.  Computing W_n by a
    matrix power keeps this fast even for n in the tens of thousands with
    64-fractional-bit probabilities.
    """
    if n < 0:
        raise ParameterError("n must be nonnegative")
    p = _as_probability(p)
    if p == 1:
        return Fraction(1 if n == 0 else 0)
    if n == 0:
        return Fraction(1)
    a, b = p.numerator, p.denominator
    d = b - a
    m00, m01, _, _ = _mat_pow_2x2(d, a * d, n - 1)
    return Fraction(m00 * d + m01, b ** n)


def _f_series_reference(n: int, p) -> Fraction:
    """Direct term-by-term sum; cross-validation for f_series."""
    p = _as_probability(p)
    q = 1 - p
    return sum((binomial(n - r, r) * p ** r * q ** (n - r)
                for r in range(0, n // 2 + 1)), Fraction(0))


def f_series_log(n: int, p) -> float:
    """log F(n) in floating point, usable far beyond exact-arithmetic scales.

    Uses the closed form of the two-term recurrence: with x = p/(1-p) and
    roots alpha, beta = (1 +- sqrt(1 + 4x))/2,

        F(n) = (1-p)^n (alpha^(n+1) - beta^(n+1)) / (alpha - beta).
    """
    if n < 0:
        raise ParameterError("n must be nonnegative")
    pf = float(p)
    if not 0 < pf < 1:
        raise ParameterError("log-domain F(n) needs 0 < p < 1")
    x = pf / (1.0 - pf)
    root = math.sqrt(1.0 + 4.0 * x)
    alpha = (1.0 + root) / 2.0
    beta = (1.0 - root) / 2.0  # negative, |beta| < alpha
    ratio_log = (n + 1) * (math.log(-beta) - math.log(alpha))
    sign = -1.0 if (n + 1) % 2 == 0 else 1.0  # -(beta/alpha)^(n+1)
    correction = math.log1p(sign * math.exp(ratio_log)) if ratio_log < -1e-12 else 0.0
    return (n * math.log1p(-pf) + (n + 1) * math.log(alpha)
            - math.log(root) + correction)


def expected_missing_sums(n: int, p) -> Fraction:
    """Exact expected number of residues missing from A+A, for odd n.

    Each residue s has (n-1)/2 disjoint two-element representations plus the
    single self-representation h + h = s, so

        P(s not in A+A) = (1 - p)(1 - p^2)^((n-1)/2)

    and the expectation is n times that.  (The often-quoted form
    n (1-p^2)^((n+1)/2) treats the self-representation as an independent
    pair and is off by a factor 1+p; see expected_missing_sums_asymptotic.)
    """
    if n % 2 == 0:
        raise ParameterError("expected_missing_sums requires odd n")
    p = _as_probability(p)
    return n * (1 - p) * (1 - p * p) ** ((n - 1) // 2)


def expected_missing_sums_asymptotic(n: int, p) -> Fraction:
    """The first-order form n (1 - p^2)^((n+1)/2).

    Equals (1+p) times the exact expectation: asymptotically equivalent as
    p -> 0 but not equal to the enumeration value at fixed (n, p).
    """
    if n % 2 == 0:
        raise ParameterError("expected_missing_sums_asymptotic requires odd n")
    p = _as_probability(p)
    return n * (1 - p * p) ** ((n + 1) // 2)


def prob_diff_missing(n: int, p) -> Fraction:
    """P(k not in A-A) for prime n and any fixed k != 0, conditioned on A nonempty.

    A misses the difference k exactly when A is independent in the n-cycle
    obtained by joining a to a+k, so the probability is the weighted count of
    nonempty independent sets:

        sum_{r=1}^{floor(n/2)} [C(n-r+1, r) - C(n-r-1, r-2)] p^r (1-p)^(n-r).

    Starting at r = 1 excludes the empty set; adding (1-p)^n (the r = 0 term)
    recovers the unconditioned probability over all subsets.
    """
    if n < 2:
        raise ParameterError("n must be >= 2")
    p = _as_probability(p)
    q = 1 - p
    return sum((cycle_count(n, r) * p ** r * q ** (n - r)
                for r in range(1, n // 2 + 1)), Fraction(0))


def prob_diff_missing_composite(n: int, k: int, p) -> Fraction:
    """P(k not in A-A) for general n, per the disjoint-cycle product formula.

    With d = gcd(n, k), the difference graph splits into d cycles of length
    n/d, and the formula conditions each cycle on a nonempty intersection:

        ( sum_{r=1}^{floor(n/(2d))} [C(n/d-r+1, r) - C(n/d-r-1, r-2)]
              p^r (1-p)^(n/d - r) )^d.

    For prime n (d = 1) this equals prob_diff_missing.  For composite n the
    per-cycle nonemptiness makes it deviate from the enumerated probability;
    it is reported, not asserted, against the oracle.
    """
    if n < 2:
        raise ParameterError("n must be >= 2")
    if k % n == 0:
        raise ParameterError("k must be a nonzero residue")
    k %= n
    p = _as_probability(p)
    d = math.gcd(n, k)
    m = n // d
    q = 1 - p
    cycle_sum = sum((cycle_count(m, r) * p ** r * q ** (m - r)
                     for r in range(1, m // 2 + 1)), Fraction(0))
    return cycle_sum ** d


def prob_both_sums_missing(n: int, p) -> Fraction:
    """P(i not in A+A and j not in A+A) for prime n and any fixed i != j.

    The pair graph on the two target sums is a path of n vertices with a loop
    on each endpoint: the endpoints must stay out of A (factor (1-p)^2) and
    the n-2 interior vertices must form an independent set of the path:

        (1-p)^2 * sum_r C(n-2-r+1, r) p^r (1-p)^(n-2-r),

    with r running until the path count vanishes (r <= ceil((n-2)/2)).
    """
    if n < 2:
        raise ParameterError("n must be >= 2")
    p = _as_probability(p)
    q = 1 - p
    m = n - 2
    inner = sum((path_count(m, r) * p ** r * q ** (m - r)
                 for r in range(0, (m + 1) // 2 + 1)), Fraction(0))
    return q * q * inner


@dataclass(frozen=True)
class MissingDiffExpectation:
    """Exact E[D^c] together with its series upper bound 2 n F(n)."""

    value: Fraction
    bound: Fraction


def expected_missing_diffs(n: int, p) -> MissingDiffExpectation:
    """E[D^c] = (n-1) P(k not in A-A) for prime n, with the bound 2 n F(n).

    The returned record carries both the exact value and the bound; the
    value never exceeds the bound.
    """
    value = (n - 1) * prob_diff_missing(n, p)
    bound = 2 * n * f_series(n, p)
    if value > bound:
        raise AssertionError("E[D^c] exceeded its series bound 2 n F(n)")
    return MissingDiffExpectation(value=value, bound=bound)


@dataclass(frozen=True)
class GaugeValues:
    """Decay gauges: G = n (1-p^2)^(n/2) and h = 2 n^4 (e^p - p e^p)^n."""

    G: float
    h: float
    log_G: float
    log_h: float


def gauge_functions(n: int, p) -> GaugeValues:
    """Evaluate both decay gauges in log domain (natural log), underflow-free.

    log G = log n + (n/2) log(1 - p^2),
    log h = log 2 + 4 log n + n (p + log(1 - p)).

    Their signs separate the slow-decay window (both -> -inf) from the
    intermediate window below sqrt(log n / n) (both -> +inf).
    """
    pf = float(p)
    if not 0 < pf < 1:
        raise ParameterError(f"gauge functions need 0 < p < 1, got {p!r}")
    log_g = math.log(n) + 0.5 * n * math.log1p(-pf * pf)
    log_h = math.log(2.0) + 4.0 * math.log(n) + n * (pf + math.log1p(-pf))
    return GaugeValues(G=_safe_exp(log_g), h=_safe_exp(log_h),
                       log_G=log_g, log_h=log_h)


def _safe_exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def gauge_g_squared_exact(n: int, p) -> Fraction:
    """Exact G(n)^2 = n^2 (1 - p^2)^n, the rational cross-check for log_G.

    (G itself involves a half power, so the square is the exact object.)
    Intended for n up to ~2*10^4; cost grows with denom(p)^n.
    """
    p = _as_probability(p)
    if not 0 < p < 1:
        raise ParameterError("need 0 < p < 1")
    return n * n * (1 - p * p) ** n


@dataclass(frozen=True)
class Targets:
    """Limit-law targets for |A+A|, |A-A| and their ratio in one decay regime."""

    S_target: float
    D_target: float
    ratio_target: float


def theoretical_targets(regime: str, n: int, *, c: float | None = None,
                        delta: float | None = None) -> Targets:
    """Targets per decay regime.

    fast (p = n^-delta, delta > 1/2):  ((np)^2 / 2, (np)^2, 2)
    critical (p = c n^-1/2):           (n(1-e^(-c^2/2)), n(1-e^(-c^2)), 1+e^(-c^2/2))
    slow (p = n^-delta, delta < 1/2):  (n, n, 1)

    The critical difference-set target is n(1 - exp(-c^2)), the form that the
    alternating series and the ratio law 1 + exp(-c^2/2) both agree with.
    """
    if n < 1:
        raise ParameterError("n must be >= 1")
    if regime == "fast":
        if delta is None or not delta > 0.5:
            raise ParameterError("fast regime needs delta > 1/2")
        np_ = n ** (1.0 - delta)
        return Targets(0.5 * np_ * np_, np_ * np_, 2.0)
    if regime == "critical":
        if c is None or not c > 0:
            raise ParameterError("critical regime needs c > 0")
        e_half = math.exp(-0.5 * c * c)
        e_full = math.exp(-c * c)
        return Targets(n * (1.0 - e_half), n * (1.0 - e_full), 1.0 + e_half)
    if regime == "slow":
        if delta is not None and not 0 < delta < 0.5:
            raise ParameterError("slow regime needs 0 < delta < 1/2")
        return Targets(float(n), float(n), 1.0)
    raise ParameterError(f"unknown regime {regime!r} (expected fast/critical/slow)")
