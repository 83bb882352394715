"""Random subsets of Z/nZ and their sumsets / difference sets.

A subset is stored as an immutable bit mask over the residues 0..n-1.
Sumsets and difference sets are computed either by a dense kernel
(cyclic bit rotations OR-ed together, cost ~ |A| * n / wordsize) or by a
sparse kernel (vectorized pair enumeration, cost ~ |A|^2); ``kernel="auto"``
picks by a size threshold and both kernels produce identical masks.

Sampling is deterministic: the random stream of trial t is derived only
from (base_seed, t), so trials can run in any order, on any number of
workers, and reproduce bit-identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParameterError

_WORD_BITS = 64
_FRAC_BITS = 64          # probabilities are realized on the k / 2**64 grid
_ONE = 1 << _FRAC_BITS
_SPARSE_BLOCK = 1 << 22  # max pair-table entries held in memory at once

__all__ = [
    "ResidueSet",
    "SampleSpec",
    "dyadic64",
    "sample_subset",
    "sumset",
    "difference_set",
    "missing_counts",
]


def dyadic64(p) -> Fraction:
    """Round a probability to the nearest multiple of 2**-64, as an exact Fraction.

    This is the grid on which the sampler actually operates; regime formulas
    (floats) are pushed through this function so that the stored rational p
    is exactly the inclusion probability used.
    """
    f = Fraction(p)
    if not 0 <= f <= 1:
        raise ParameterError(f"probability {p!r} outside [0, 1]")
    num, rem = divmod(f.numerator * _ONE, f.denominator)
    if 2 * rem >= f.denominator:
        num += 1
    return Fraction(num, _ONE)


def _threshold64(p: Fraction) -> int:
    """Inclusion threshold on the 64-bit grid: include iff u < threshold."""
    num, rem = divmod(p.numerator * _ONE, p.denominator)
    if 2 * rem >= p.denominator:
        num += 1
    return num


@dataclass(frozen=True)
class ResidueSet:
    """An immutable subset of Z/nZ, stored as a bit mask (bit r set <=> r in set)."""

    n: int
    mask: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"modulus must be >= 1, got {self.n}")
        if not 0 <= self.mask < (1 << self.n):
            raise ParameterError("mask has bits outside [0, n)")

    @classmethod
    def from_indices(cls, n: int, indices) -> "ResidueSet":
        idx = np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices,
                         dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= n):
            raise ParameterError("indices outside [0, n)")
        bits = np.zeros(n, dtype=np.uint8)
        bits[idx] = 1
        return cls(n, _mask_from_bits(bits))

    @property
    def cardinality(self) -> int:
        return self.mask.bit_count()

    def indices(self) -> np.ndarray:
        """Sorted member residues as an int64 array."""
        nbytes = (self.n + 7) // 8
        raw = self.mask.to_bytes(nbytes, "little")
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8),
                             bitorder="little", count=self.n)
        return np.flatnonzero(bits).astype(np.int64)

    def negated(self) -> "ResidueSet":
        """The set {-a mod n : a in A}."""
        idx = self.indices()
        return ResidueSet.from_indices(self.n, (self.n - idx) % self.n)

    def __contains__(self, r: int) -> bool:
        return 0 <= r < self.n and (self.mask >> r) & 1 == 1

    def __iter__(self):
        return iter(self.indices().tolist())

    def __len__(self) -> int:
        return self.cardinality

    def __repr__(self) -> str:
        members = self.indices().tolist() if self.n <= 64 else f"<{self.cardinality} residues>"
        return f"ResidueSet(n={self.n}, members={members})"


def _mask_from_bits(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


@dataclass(frozen=True)
class SampleSpec:
    """Everything that determines one sampled subset.

    Identical SampleSpec values always produce identical sets, regardless of
    execution order or parallelism: trial t's stream is seeded from
    (base_seed, t) only.
    """

    n: int
    p: Fraction
    base_seed: int
    trial_index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        if self.n < 1:
            raise ParameterError(f"modulus must be >= 1, got {self.n}")
        if not 0 <= self.p <= 1:
            raise ParameterError(f"p={self.p} outside [0, 1]")
        if self.trial_index < 0:
            raise ParameterError("trial_index must be nonnegative")


def _trial_rng(base_seed: int, trial_index: int) -> np.random.Generator:
    seed64 = base_seed & 0xFFFFFFFFFFFFFFFF
    ss = np.random.SeedSequence((seed64, trial_index))
    return np.random.Generator(np.random.PCG64(ss))


def sample_subset(spec: SampleSpec) -> ResidueSet:
    """Sample A subseteq Z/nZ, each residue included independently with probability p.

    The inclusion probability is p rounded to the 2**-64 grid (exact for any
    dyadic p with at most 64 fractional bits, e.g. 1/4, 1/2, 3/4).
    """
    threshold = _threshold64(spec.p)
    if threshold <= 0:
        return ResidueSet(spec.n, 0)
    if threshold >= _ONE:
        return ResidueSet(spec.n, (1 << spec.n) - 1)
    rng = _trial_rng(spec.base_seed, spec.trial_index)
    u = rng.integers(0, _ONE, size=spec.n, dtype=np.uint64)
    bits = (u < np.uint64(threshold)).astype(np.uint8)
    return ResidueSet(spec.n, _mask_from_bits(bits))


# ---------------------------------------------------------------------------
# kernels


def _pick_kernel(A: ResidueSet) -> str:
    # sparse pair enumeration when |A|^2 < n * (n / wordsize), else dense shifts
    c = A.cardinality
    return "sparse" if c * c * _WORD_BITS < A.n * A.n else "dense"


def _rotl(mask: int, s: int, n: int, full: int) -> int:
    return ((mask << s) | (mask >> (n - s))) & full


def _sumset_mask_dense(n: int, mask: int) -> int:
    full = (1 << n) - 1
    acc = 0
    m = mask
    while m:
        lsb = m & -m
        acc |= _rotl(mask, lsb.bit_length() - 1, n, full)
        m ^= lsb
    return acc


def _difference_mask_dense(n: int, mask: int, neg_mask: int) -> int:
    # {a - b} = union over a in A of (-A and then rotate left by a)
    full = (1 << n) - 1
    acc = 0
    m = mask
    while m:
        lsb = m & -m
        acc |= _rotl(neg_mask, lsb.bit_length() - 1, n, full)
        m ^= lsb
    return acc


def _pair_table_mask(n: int, idx: np.ndarray, subtract: bool) -> int:
    """Bit mask of all pairwise sums (or differences) mod n, block-wise."""
    bits = np.zeros(n, dtype=bool)
    c = idx.size
    if c == 0:
        return 0
    block = max(1, _SPARSE_BLOCK // c)
    for s in range(0, c, block):
        chunk = idx[s:s + block, None]
        t = chunk - idx[None, :] if subtract else chunk + idx[None, :]
        if subtract:
            t[t < 0] += n
        else:
            t[t >= n] -= n
        bits[t.ravel()] = True
    return _mask_from_bits(bits.astype(np.uint8))


def sumset(A: ResidueSet, kernel: str = "auto") -> ResidueSet:
    """A+A = {a + b mod n : a, b in A} (a = b allowed)."""
    k = _pick_kernel(A) if kernel == "auto" else kernel
    if k == "dense":
        return ResidueSet(A.n, _sumset_mask_dense(A.n, A.mask))
    if k == "sparse":
        return ResidueSet(A.n, _pair_table_mask(A.n, A.indices(), subtract=False))
    raise ParameterError(f"unknown kernel {kernel!r}")


def difference_set(A: ResidueSet, kernel: str = "auto") -> ResidueSet:
    """A-A = {a - b mod n : a, b in A}; symmetric under negation, contains 0 iff A nonempty."""
    k = _pick_kernel(A) if kernel == "auto" else kernel
    if k == "dense":
        return ResidueSet(A.n, _difference_mask_dense(A.n, A.mask, A.negated().mask))
    if k == "sparse":
        return ResidueSet(A.n, _pair_table_mask(A.n, A.indices(), subtract=True))
    raise ParameterError(f"unknown kernel {kernel!r}")


def missing_counts(A: ResidueSet, kernel: str = "auto") -> tuple[int, int]:
    """(n - |A+A|, n - |A-A|): the missing-sum and missing-difference counts."""
    s = sumset(A, kernel).cardinality
    d = difference_set(A, kernel).cardinality
    return A.n - s, A.n - d
