"""Per-residue representation multiplicities and repeated sum/difference statistics.

Conventions (pinned so the alternating inclusion-exclusion identity is exact):

* sum pairs are unordered with a = b allowed, so the multiplicities over all
  residues add up to |A|(|A|+1)/2;
* difference pairs are ordered with (a, a) allowed, so they add up to |A|^2
  and the multiplicity of residue 0 is exactly |A|.

x_k / y_k count k-sets of such pairs sharing one common sum / difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .errors import ParameterError
from .sets import ResidueSet, _SPARSE_BLOCK

__all__ = [
    "MultiplicityProfile",
    "multiplicity_profile",
    "x_k",
    "y_k",
    "inclusion_exclusion_size",
    "xi_counts",
    "expected_x_k",
    "expected_x_k_exact",
    "expected_y_k_exact",
]


@dataclass(frozen=True)
class MultiplicityProfile:
    """m_sum[r] = #unordered pairs {a,b} from A with a+b = r (mod n);
    m_diff[r] = #ordered pairs (a,b) from AxA with a-b = r (mod n)."""

    n: int
    m_sum: np.ndarray
    m_diff: np.ndarray


def multiplicity_profile(A: ResidueSet) -> MultiplicityProfile:
    n = A.n
    idx = A.indices()
    m_diff = np.zeros(n, dtype=np.int64)
    ordered_sum = np.zeros(n, dtype=np.int64)
    c = idx.size
    if c:
        block = max(1, _SPARSE_BLOCK // c)
        for s in range(0, c, block):
            chunk = idx[s:s + block, None]
            t = chunk + idx[None, :]
            t[t >= n] -= n
            ordered_sum += np.bincount(t.ravel(), minlength=n)
            t = chunk - idx[None, :]
            t[t < 0] += n
            m_diff += np.bincount(t.ravel(), minlength=n)
    # unordered pairs: every {a,b} with a != b was counted twice, {a,a} once
    diag = np.bincount((2 * idx) % n, minlength=n).astype(np.int64)
    m_sum = (ordered_sum + diag) // 2
    return MultiplicityProfile(n, m_sum, m_diff)


def _k_sets_with_common_value(mult: np.ndarray, k: int) -> int:
    """Sum over residues of C(multiplicity, k), exactly."""
    if k < 1:
        raise ParameterError("k must be >= 1")
    hist = np.bincount(mult)
    return sum(int(cnt) * comb(v, k)
               for v, cnt in enumerate(hist.tolist()) if cnt and v >= k)


def x_k(profile: MultiplicityProfile, k: int) -> int:
    """Number of k-sets of unordered element pairs that share one common sum."""
    return _k_sets_with_common_value(profile.m_sum, k)


def y_k(profile: MultiplicityProfile, k: int) -> int:
    """Number of k-sets of ordered element pairs that share one common difference."""
    return _k_sets_with_common_value(profile.m_diff, k)


@lru_cache(maxsize=None)
def _alternating_pair_sum(v: int) -> int:
    """sum_{k=1..v} (-1)^(k+1) C(v, k), evaluated term by term."""
    total = 0
    binom = 1
    for k in range(1, v + 1):
        binom = binom * (v - k + 1) // k
        total += binom if k % 2 else -binom
    return total


def inclusion_exclusion_size(profile: MultiplicityProfile, side: str) -> int:
    """Alternating series sum_{k>=1} (-1)^(k+1) X_k (or Y_k).

    The series terminates at the maximum multiplicity (all later terms are
    empty counts) and equals |A+A| (resp. |A-A|) exactly.  Terms are grouped
    by residue multiplicity so large profiles stay cheap.
    """
    if side == "sum":
        mult = profile.m_sum
    elif side == "difference":
        mult = profile.m_diff
    else:
        raise ParameterError(f"side must be 'sum' or 'difference', got {side!r}")
    hist = np.bincount(mult)
    return sum(int(cnt) * _alternating_pair_sum(v)
               for v, cnt in enumerate(hist.tolist()) if cnt and v >= 1)


def xi_counts(n: int, k: int) -> tuple[int, int]:
    """(n * C(ceil(n/2), k), n * C(ceil(n/2), k-1)): tuple counts by type.

    First entry: k-tuples of representation slots with all elements distinct;
    second: tuples where one slot is a repeated element.  Intended for odd n,
    where each residue has exactly ceil(n/2) representations as a sum.
    """
    if k < 1:
        raise ParameterError("k must be >= 1")
    m = (n + 1) // 2
    return n * comb(m, k), n * comb(m, k - 1)


def expected_x_k(n: int, p, k: int) -> Fraction:
    """First-order expected X_k: xi1 * p^(2k) + xi2 * p^(2k-1).

    This is an asymptotic accounting: the repeated-element slot {a, a} is
    double-counted between the two tuple types, so for instance at p = 1 and
    k = 1 it returns n(n+1)/2 + n while the realized X_1 of the full set is
    n(n+1)/2.  See expected_x_k_exact for the exact expectation.
    """
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ParameterError(f"p={p} outside [0, 1]")
    xi1, xi2 = xi_counts(n, k)
    return xi1 * p ** (2 * k) + xi2 * p ** (2 * k - 1)


def expected_x_k_exact(n: int, p, k: int) -> Fraction:
    """Exact E[X_k] for odd n.

    For each residue there are (n-1)/2 disjoint two-element representation
    slots (cost p^2 each) plus one repeated-element slot (cost p), so
    E[X_k] = n * [C((n-1)/2, k) p^(2k) + C((n-1)/2, k-1) p^(2k-1)].
    """
    if n % 2 == 0:
        raise ParameterError("exact E[X_k] requires odd n")
    if k < 1:
        raise ParameterError("k must be >= 1")
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ParameterError(f"p={p} outside [0, 1]")
    half = (n - 1) // 2
    return n * (comb(half, k) * p ** (2 * k) + comb(half, k - 1) * p ** (2 * k - 1))


def _cycle_choose_expectation(L: int, kk: int, p: Fraction) -> Fraction:
    """E[C(m, kk)] where m counts present slots on one cycle of L slots.

    A kk-subset of cycle edges with j runs covers kk + j vertices; choosing
    all L edges covers exactly L vertices.
    """
    if kk == 0:
        return Fraction(1)
    if kk > L:
        return Fraction(0)
    if kk == L:
        return p ** L
    return sum((Fraction(L, j) * comb(kk - 1, j - 1) * comb(L - kk - 1, j - 1)
                * p ** (kk + j) for j in range(1, kk + 1)), Fraction(0))


def _poly_pow_trunc(poly: list[Fraction], e: int, k: int) -> list[Fraction]:
    """poly**e truncated at degree k (polynomials as coefficient lists)."""

    def mul(a, b):
        out = [Fraction(0)] * (k + 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b[:k + 1 - i]):
                    if bj:
                        out[i + j] += ai * bj
        return out

    result = [Fraction(1)] + [Fraction(0)] * k
    base = list(poly)
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def expected_y_k_exact(n: int, p, k: int) -> Fraction:
    """Exact E[Y_k] for any n >= 2.

    Difference 0 is realized only by the |A| diagonal pairs (a, a), giving a
    C(n,k) p^k term.  A nonzero difference r has n slots (b+r, b) whose
    overlap graph is gcd(n,r) disjoint cycles of length n/gcd(n,r); slots on
    distinct cycles touch disjoint elements, so the expectation of
    C(m_r, k) is a truncated convolution power of the one-cycle expectations
    E[C(m, k')] (a k'-subset of cycle edges with j runs covers k'+j
    elements).

    For prime n the diagonal term C(n,k) p^k dominates everything else
    whenever n p^k is small, which is why Y_k for k >= 2 is *not*
    ~ n^(k+1) p^(2k) / k! near p = n^(-1/2).
    """
    if k < 1:
        raise ParameterError("k must be >= 1")
    if n < 2:
        raise ParameterError("n must be >= 2")
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ParameterError(f"p={p} outside [0, 1]")
    total = comb(n, k) * p ** k
    gcd_counts: dict[int, int] = {}
    for r in range(1, n):
        d = math.gcd(r, n)
        gcd_counts[d] = gcd_counts.get(d, 0) + 1
    for d, mult in gcd_counts.items():
        L = n // d
        poly = [_cycle_choose_expectation(L, kk, p) for kk in range(k + 1)]
        total += mult * _poly_pow_trunc(poly, d, k)[k]
    return total
