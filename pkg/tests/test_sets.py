"""Core set sampling and kernel tests."""

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modsetlab import (
    ParameterError,
    ResidueSet,
    SampleSpec,
    difference_set,
    dyadic64,
    missing_counts,
    sample_subset,
    sumset,
)


def brute_sumset(n, members):
    return {(a + b) % n for a in members for b in members}


def brute_diffset(n, members):
    return {(a - b) % n for a in members for b in members}


class TestResidueSet:
    def test_roundtrip(self):
        A = ResidueSet.from_indices(11, [0, 3, 7])
        assert A.indices().tolist() == [0, 3, 7]
        assert A.cardinality == 3
        assert 3 in A and 4 not in A
        assert sorted(A) == [0, 3, 7]

    def test_negated(self):
        A = ResidueSet.from_indices(7, [0, 1, 5])
        assert sorted(A.negated()) == [0, 2, 6]

    def test_validation(self):
        with pytest.raises(ParameterError):
            ResidueSet(0, 0)
        with pytest.raises(ParameterError):
            ResidueSet(3, 1 << 3)
        with pytest.raises(ParameterError):
            ResidueSet.from_indices(5, [5])


class TestDyadic64:
    def test_exact_on_dyadics(self):
        for p in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)):
            assert dyadic64(p) == p

    def test_rounding(self):
        p = dyadic64(Fraction(1, 3))
        assert p.denominator <= 1 << 64
        assert abs(p - Fraction(1, 3)) <= Fraction(1, 2 ** 64)

    def test_range(self):
        with pytest.raises(ParameterError):
            dyadic64(Fraction(3, 2))


class TestSampling:
    def test_p_zero_empty(self):
        A = sample_subset(SampleSpec(n=7, p=Fraction(0), base_seed=1))
        assert A.cardinality == 0

    def test_p_one_full(self):
        A = sample_subset(SampleSpec(n=7, p=Fraction(1), base_seed=1))
        assert A.indices().tolist() == list(range(7))

    def test_deterministic(self):
        spec = SampleSpec(n=503, p=Fraction(1, 3), base_seed=99, trial_index=4)
        assert sample_subset(spec) == sample_subset(spec)

    def test_order_independent(self):
        specs = [SampleSpec(n=101, p=Fraction(1, 2), base_seed=5, trial_index=t)
                 for t in range(6)]
        forward = [sample_subset(s) for s in specs]
        backward = [sample_subset(s) for s in reversed(specs)]
        assert forward == backward[::-1]

    def test_distinct_trials_differ(self):
        a = sample_subset(SampleSpec(n=503, p=Fraction(1, 2), base_seed=5, trial_index=0))
        b = sample_subset(SampleSpec(n=503, p=Fraction(1, 2), base_seed=5, trial_index=1))
        assert a != b

    def test_invalid_params(self):
        with pytest.raises(ParameterError):
            SampleSpec(n=0, p=Fraction(1, 2), base_seed=1)
        with pytest.raises(ParameterError):
            SampleSpec(n=5, p=Fraction(3, 2), base_seed=1)

    def test_binomial_mean_against_reference_sampler(self):
        # mean |A| over 500 trials should sit within 3 SE of n*p, and agree
        # with a plain uniform-threshold reference sampler
        n, trials = 10007, 500
        p = dyadic64(n ** -0.5)
        np_target = float(n * p)
        se = (float(n * p * (1 - p)) / trials) ** 0.5
        cards = [sample_subset(SampleSpec(n=n, p=p, base_seed=123, trial_index=t)).cardinality
                 for t in range(trials)]
        mean = sum(cards) / trials
        assert abs(mean - np_target) < 3 * se

        rng = np.random.default_rng(123)
        ref = sum(int((rng.random(n) < float(p)).sum()) for _ in range(trials)) / trials
        assert abs(ref - np_target) < 3 * se


class TestKernels:
    def test_sumset_examples(self):
        assert sorted(sumset(ResidueSet.from_indices(7, [0]))) == [0]
        assert sorted(sumset(ResidueSet.from_indices(5, [1, 2]))) == [2, 3, 4]
        full = ResidueSet(7, (1 << 7) - 1)
        assert sumset(full) == full

    def test_difference_examples(self):
        assert difference_set(ResidueSet(5, 0)).cardinality == 0
        assert sorted(difference_set(ResidueSet.from_indices(5, [1, 2]))) == [0, 1, 4]
        full = ResidueSet(7, (1 << 7) - 1)
        assert difference_set(full) == full

    def test_missing_counts_examples(self):
        assert missing_counts(ResidueSet(7, (1 << 7) - 1)) == (0, 0)
        assert missing_counts(ResidueSet.from_indices(7, [0])) == (6, 6)
        assert missing_counts(ResidueSet.from_indices(5, [1, 2])) == (2, 2)

    def test_kernels_agree_on_1000_random_instances(self):
        rng = random.Random(2024)
        for _ in range(1000):
            n = rng.randint(1, 512)
            density = rng.choice([0.005, 0.02, 0.1, 0.3, 0.7])
            members = [r for r in range(n) if rng.random() < density]
            A = ResidueSet.from_indices(n, members)
            s_dense = sumset(A, "dense")
            s_sparse = sumset(A, "sparse")
            d_dense = difference_set(A, "dense")
            d_sparse = difference_set(A, "sparse")
            assert s_dense == s_sparse
            assert d_dense == d_sparse
            assert set(s_dense) == brute_sumset(n, members)
            assert set(d_dense) == brute_diffset(n, members)

    @given(n=st.integers(1, 96), bits=st.integers(0, 2 ** 96 - 1))
    @settings(max_examples=300, deadline=None)
    def test_kernel_agreement_and_bounds(self, n, bits):
        A = ResidueSet(n, bits & ((1 << n) - 1))
        c = A.cardinality
        S = sumset(A, "dense")
        D = difference_set(A, "dense")
        assert S == sumset(A, "sparse")
        assert D == difference_set(A, "sparse")
        assert S.cardinality <= min(n, c * (c + 1) // 2)
        assert D.cardinality <= min(n, c * c - c + 1 if c else 0)
        # difference set closed under negation; 0 present iff A nonempty
        assert D == D.negated()
        assert (0 in D) == (c > 0)
