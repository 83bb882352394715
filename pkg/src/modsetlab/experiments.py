"""Deterministic Monte Carlo sweeps across the decay regimes.

Every trial is a pure function of (base_seed, trial_index), so a sweep can be
split across any number of worker processes and still produce byte-identical
output: records are sorted by (n, trial_index) and all aggregate statistics
are assembled from exact integer / rational accumulators, with divisions
performed once at the end.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable

from . import exact
from .errors import ParameterError
from .multiplicity import inclusion_exclusion_size, multiplicity_profile, x_k, y_k
from .sets import SampleSpec, difference_set, dyadic64, sample_subset, sumset

SCHEMA_VERSION = "1"
REGIMES = ("fast", "critical", "slow", "intermediate", "fixed")
SPOT_CHECK_EVERY = 100  # per-trial identity check on 1% of trials

__all__ = [
    "RegimeSpec",
    "TrialRecord",
    "SweepAggregate",
    "SweepResult",
    "ReportRow",
    "is_prime",
    "next_prime",
    "realized_p",
    "run_trial",
    "run_sweep",
    "convergence_report",
    "write_trials_csv",
    "report_as_dict",
]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 2^64 (and well beyond 3*10^24)."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    if n < 2:
        return 2
    c = n
    while not is_prime(c):
        c += 1
    return c


@dataclass(frozen=True)
class RegimeSpec:
    """One sweep: a decay regime, its parameter, moduli, and trial budget.

    regime/parameter pairs:
      fast         p = n^-delta, delta > 1/2
      critical     p = c * n^-1/2, c > 0
      slow         p = n^-delta, 0 < delta < 1/2
      intermediate p = gamma * sqrt(log n / n), gamma > 0
      fixed        p = p_fixed in [0, 1]
    """

    regime: str
    n_values: tuple[int, ...]
    trials: int
    base_seed: int
    delta: float | None = None
    c: float | None = None
    gamma: float | None = None
    p_fixed: Fraction | None = None
    require_prime: bool = False
    k_max: int = 0
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        if self.regime not in REGIMES:
            raise ParameterError(f"unknown regime {self.regime!r}")
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise ParameterError("n_values must be nonempty positive integers")
        if self.trials < 1:
            raise ParameterError("trials must be >= 1")
        if self.k_max < 0:
            raise ParameterError("k_max must be >= 0")
        if self.workers < 1:
            raise ParameterError("workers must be >= 1")
        if self.regime == "fast" and (self.delta is None or not self.delta > 0.5):
            raise ParameterError("fast regime needs delta > 1/2")
        if self.regime == "slow" and (self.delta is None or not 0 < self.delta < 0.5):
            raise ParameterError("slow regime needs 0 < delta < 1/2")
        if self.regime == "critical" and (self.c is None or not self.c > 0):
            raise ParameterError("critical regime needs c > 0")
        if self.regime == "intermediate" and (self.gamma is None or not self.gamma > 0):
            raise ParameterError("intermediate regime needs gamma > 0")
        if self.regime == "fixed":
            if self.p_fixed is None:
                raise ParameterError("fixed regime needs p_fixed")
            object.__setattr__(self, "p_fixed", Fraction(self.p_fixed))
            if not 0 <= self.p_fixed <= 1:
                raise ParameterError("p_fixed outside [0, 1]")
        if self.require_prime:
            for n in self.n_values:
                if not is_prime(n):
                    raise ParameterError(f"require_prime is set but n={n} is composite")


def realized_p(spec: RegimeSpec, n: int) -> Fraction:
    """The exact rational inclusion probability used for modulus n (2^-64 grid)."""
    if spec.regime == "fast" or spec.regime == "slow":
        return dyadic64(n ** -spec.delta)
    if spec.regime == "critical":
        return dyadic64(spec.c / math.sqrt(n))
    if spec.regime == "intermediate":
        return dyadic64(spec.gamma * math.sqrt(math.log(n) / n))
    return dyadic64(spec.p_fixed)


@dataclass(frozen=True)
class TrialRecord:
    """One Monte Carlo outcome; ratio is None when S = 0 (empty A)."""

    n: int
    p: Fraction
    p_float: float
    trial_index: int
    card: int
    S: int
    D: int
    S_missing: int
    D_missing: int
    ratio: Fraction | None
    xk: tuple[int, ...] = ()
    yk: tuple[int, ...] = ()


def run_trial(n: int, p: Fraction, base_seed: int, trial_index: int,
              k_max: int = 0, spot_check: bool = False) -> TrialRecord:
    """Sample trial `trial_index` and measure its set sizes (and x_k/y_k if asked)."""
    A = sample_subset(SampleSpec(n=n, p=p, base_seed=base_seed, trial_index=trial_index))
    s = sumset(A).cardinality
    d = difference_set(A).cardinality
    xk: tuple[int, ...] = ()
    yk: tuple[int, ...] = ()
    if k_max > 0 or spot_check:
        profile = multiplicity_profile(A)
        if k_max > 0:
            xk = tuple(x_k(profile, k) for k in range(1, k_max + 1))
            yk = tuple(y_k(profile, k) for k in range(1, k_max + 1))
        if spot_check:
            if inclusion_exclusion_size(profile, "sum") != s:
                raise AssertionError(f"inclusion-exclusion mismatch for sums "
                                     f"(n={n}, trial={trial_index})")
            if inclusion_exclusion_size(profile, "difference") != d:
                raise AssertionError(f"inclusion-exclusion mismatch for differences "
                                     f"(n={n}, trial={trial_index})")
    return TrialRecord(
        n=n, p=p, p_float=float(p), trial_index=trial_index, card=A.cardinality,
        S=s, D=d, S_missing=n - s, D_missing=n - d,
        ratio=Fraction(d, s) if s else None, xk=xk, yk=yk,
    )


def _run_chunk(args) -> list[TrialRecord]:
    n, p, base_seed, start, stop, k_max = args
    return [run_trial(n, p, base_seed, t, k_max,
                      spot_check=(t % SPOT_CHECK_EVERY == 0))
            for t in range(start, stop)]


@dataclass(frozen=True)
class SweepAggregate:
    """Order-independent summary of all trials at one modulus."""

    n: int
    p: Fraction
    p_float: float
    trials: int
    mean_card: float
    mean_S: float
    var_S: float
    se_S: float
    mean_D: float
    var_D: float
    se_D: float
    mean_Sc: float
    mean_Dc: float
    frac_S_full: float
    frac_D_full: float
    ratio_count: int
    mean_ratio: float | None
    var_ratio: float | None
    se_ratio: float | None
    mean_xk: tuple[float, ...] = ()
    mean_yk: tuple[float, ...] = ()

    def as_dict(self) -> dict:
        d = {
            "n": self.n,
            "p": f"{self.p.numerator}/{self.p.denominator}",
            "p_float": self.p_float,
            "trials": self.trials,
            "mean_card": self.mean_card,
            "mean_S": self.mean_S, "var_S": self.var_S, "se_S": self.se_S,
            "mean_D": self.mean_D, "var_D": self.var_D, "se_D": self.se_D,
            "mean_Sc": self.mean_Sc, "mean_Dc": self.mean_Dc,
            "frac_S_full": self.frac_S_full, "frac_D_full": self.frac_D_full,
            "ratio_count": self.ratio_count, "mean_ratio": self.mean_ratio,
            "var_ratio": self.var_ratio, "se_ratio": self.se_ratio,
        }
        if self.mean_xk:
            d["mean_xk"] = list(self.mean_xk)
            d["mean_yk"] = list(self.mean_yk)
        return d


def _sample_stats(total, total_sq, count: int) -> tuple[float, float, float]:
    """(mean, sample variance, standard error) from exact sums."""
    mean = Fraction(total, count)
    if count > 1:
        var = (Fraction(total_sq) - count * mean * mean) / (count - 1)
    else:
        var = Fraction(0)
    se = math.sqrt(float(var) / count)
    return float(mean), float(var), se


def _aggregate(n: int, p: Fraction, records: list[TrialRecord]) -> SweepAggregate:
    m = len(records)
    sum_card = sum(r.card for r in records)
    sum_s = sum(r.S for r in records)
    sum_s2 = sum(r.S * r.S for r in records)
    sum_d = sum(r.D for r in records)
    sum_d2 = sum(r.D * r.D for r in records)
    full_s = sum(1 for r in records if r.S == n)
    full_d = sum(1 for r in records if r.D == n)
    mean_s, var_s, se_s = _sample_stats(sum_s, sum_s2, m)
    mean_d, var_d, se_d = _sample_stats(sum_d, sum_d2, m)

    ratios = [r.ratio for r in records if r.ratio is not None]
    if ratios:
        rsum = sum(ratios, Fraction(0))
        rsq = sum((x * x for x in ratios), Fraction(0))
        mean_r, var_r, se_r = _sample_stats(rsum, rsq, len(ratios))
    else:
        mean_r = var_r = se_r = None

    k_max = len(records[0].xk) if records else 0
    mean_xk = tuple(float(Fraction(sum(r.xk[i] for r in records), m))
                    for i in range(k_max))
    mean_yk = tuple(float(Fraction(sum(r.yk[i] for r in records), m))
                    for i in range(k_max))

    return SweepAggregate(
        n=n, p=p, p_float=float(p), trials=m,
        mean_card=float(Fraction(sum_card, m)),
        mean_S=mean_s, var_S=var_s, se_S=se_s,
        mean_D=mean_d, var_D=var_d, se_D=se_d,
        mean_Sc=float(n) - mean_s, mean_Dc=float(n) - mean_d,
        frac_S_full=float(Fraction(full_s, m)), frac_D_full=float(Fraction(full_d, m)),
        ratio_count=len(ratios), mean_ratio=mean_r, var_ratio=var_r, se_ratio=se_r,
        mean_xk=mean_xk, mean_yk=mean_yk,
    )


@dataclass(frozen=True)
class SweepResult:
    records: list[TrialRecord]
    aggregates: list[SweepAggregate]


def run_sweep(spec: RegimeSpec) -> SweepResult:
    """Run trials x n_values; records come back sorted by (n, trial_index).

    Identical output for any worker count: per-trial streams depend only on
    (base_seed, trial_index), and aggregates are exact sums.
    """
    records: list[TrialRecord] = []
    aggregates: list[SweepAggregate] = []
    workers = min(spec.workers, spec.trials)
    for n in spec.n_values:
        p = realized_p(spec, n)
        if workers == 1:
            recs = _run_chunk((n, p, spec.base_seed, 0, spec.trials, spec.k_max))
        else:
            step = -(-spec.trials // workers)
            chunks = [(n, p, spec.base_seed, s, min(s + step, spec.trials), spec.k_max)
                      for s in range(0, spec.trials, step)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                recs = [r for part in pool.map(_run_chunk, chunks) for r in part]
        recs.sort(key=lambda r: r.trial_index)
        records.extend(recs)
        aggregates.append(_aggregate(n, p, recs))
    records.sort(key=lambda r: (r.n, r.trial_index))
    return SweepResult(records=records, aggregates=aggregates)


@dataclass(frozen=True)
class ReportRow:
    """One empirical-vs-target comparison."""

    n: int
    metric: str
    empirical: float
    target: float
    rel_error: float | None
    std_error: float | None
    note: str = ""

    def as_dict(self) -> dict:
        return {"n": self.n, "metric": self.metric, "empirical": self.empirical,
                "target": self.target, "rel_error": self.rel_error,
                "std_error": self.std_error, "note": self.note}


def _rel(emp: float, target: float) -> float | None:
    return (emp - target) / target if target else None


def convergence_report(aggregates: Iterable[SweepAggregate],
                       spec: RegimeSpec) -> list[ReportRow]:
    """Empirical means vs regime targets (or exact expectations), one row per metric."""
    rows: list[ReportRow] = []
    for agg in aggregates:
        n = agg.n
        if spec.regime in ("fast", "critical", "slow"):
            tg = exact.theoretical_targets(spec.regime, n, c=spec.c, delta=spec.delta)
            rows.append(ReportRow(n, "mean_S", agg.mean_S, tg.S_target,
                                  _rel(agg.mean_S, tg.S_target), agg.se_S))
            note = ("difference target uses 1 - exp(-c^2), the form consistent "
                    "with the alternating series and the ratio law"
                    if spec.regime == "critical" else "")
            rows.append(ReportRow(n, "mean_D", agg.mean_D, tg.D_target,
                                  _rel(agg.mean_D, tg.D_target), agg.se_D, note))
            if agg.mean_ratio is not None:
                rows.append(ReportRow(n, "mean_ratio", agg.mean_ratio, tg.ratio_target,
                                      _rel(agg.mean_ratio, tg.ratio_target), agg.se_ratio))
        if spec.regime == "slow":
            rows.append(ReportRow(n, "frac_S_full", agg.frac_S_full, 1.0,
                                  _rel(agg.frac_S_full, 1.0), None,
                                  "desk-scale slow decay needs delta well below 1/2; "
                                  "near 1/2 the log n = o(n p^2) regime requires "
                                  "astronomically large n"))
            rows.append(ReportRow(n, "frac_D_full", agg.frac_D_full, 1.0,
                                  _rel(agg.frac_D_full, 1.0), None))
        if spec.regime in ("slow", "intermediate", "fixed") and n % 2 == 1:
            esc = float(exact.expected_missing_sums(n, agg.p))
            # a mean over m trials resolves multiples of 1/m, so give the
            # 3-SE window that floor when the sample variance is zero
            tol = max(3 * agg.se_S, 0.5 / agg.trials)
            within = abs(agg.mean_Sc - esc) <= tol
            rows.append(ReportRow(n, "mean_Sc", agg.mean_Sc, esc,
                                  _rel(agg.mean_Sc, esc), agg.se_S,
                                  note=f"exact expectation; within 3 SE: {within}"))
    return rows


# ---------------------------------------------------------------------------
# serialization

CSV_HEADER = "n,p_num,p_den,p_float,trial,card,S,D,Sc,Dc,ratio"


def write_trials_csv(records: Iterable[TrialRecord], out: IO[str],
                     config: dict | None = None) -> None:
    """Stable v1 CSV: two comment lines (schema, resolved config) then the header."""
    out.write(f"# modsetlab trials v{SCHEMA_VERSION}\n")
    out.write(f"# config: {json.dumps(config or {}, sort_keys=True)}\n")
    out.write(CSV_HEADER + "\n")
    for r in sorted(records, key=lambda r: (r.n, r.trial_index)):
        ratio = repr(float(r.ratio)) if r.ratio is not None else ""
        out.write(f"{r.n},{r.p.numerator},{r.p.denominator},{r.p_float!r},"
                  f"{r.trial_index},{r.card},{r.S},{r.D},"
                  f"{r.S_missing},{r.D_missing},{ratio}\n")


def report_as_dict(result: SweepResult, spec: RegimeSpec,
                   config: dict | None = None) -> dict:
    """JSON-ready sweep report: resolved config, aggregates, comparison rows."""
    return {
        "schema": f"modsetlab/sweep-report/v{SCHEMA_VERSION}",
        "config": config or {},
        "aggregates": [a.as_dict() for a in result.aggregates],
        "comparisons": [row.as_dict()
                        for row in convergence_report(result.aggregates, spec)],
    }
