import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latentaug.metrics import (
    boxplot_stats,
    pr_auc,
    roc_auc,
    trimmed_mean,
    wilcoxon_signed_rank,
)

from oracles import enumerate_wilcoxon, pairwise_roc_auc, threshold_pr_auc


def random_scored_set(rng, n_max=1000, with_ties=True):
    n = int(rng.integers(10, n_max + 1))
    if with_ties and rng.random() < 0.5:
        scores = rng.integers(0, 10, size=n).astype(float)  # heavy ties
    else:
        scores = rng.normal(size=n)
    labels = rng.integers(0, 2, size=n)
    if labels.sum() == 0:
        labels[0] = 1
    if labels.sum() == n:
        labels[0] = 0
    return scores, labels


class TestRocAuc:
    def test_hand_case(self):
        assert roc_auc([0.1, 0.4, 0.35, 0.8], [0, 0, 1, 1]) == 0.75

    def test_perfect_separation(self):
        assert roc_auc([1, 2, 3, 10, 11], [0, 0, 0, 1, 1]) == 1.0

    def test_all_ties(self):
        assert roc_auc([5, 5, 5, 5], [0, 1, 0, 1]) == 0.5

    def test_single_class_errors(self):
        with pytest.raises(ValueError):
            roc_auc([1, 2], [1, 1])

    def test_matches_pairwise_oracle(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            scores, labels = random_scored_set(rng)
            assert roc_auc(scores, labels) == pairwise_roc_auc(scores, labels)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_invariant_under_monotone_transform(self, seed):
        rng = np.random.default_rng(seed)
        scores, labels = random_scored_set(rng, n_max=100)
        transformed = np.exp(0.5 * scores)  # strictly increasing
        assert roc_auc(scores, labels) == pytest.approx(
            roc_auc(transformed, labels), abs=1e-12
        )

    def test_flip_labels_negate_scores_symmetry(self):
        rng = np.random.default_rng(1)
        scores, labels = random_scored_set(rng, n_max=200)
        assert roc_auc(scores, labels) == pytest.approx(
            roc_auc(-scores, 1 - labels)
        )


class TestPrAuc:
    def test_perfect_ranker(self):
        assert pr_auc([0.9, 0.8, 0.1, 0.2], [1, 1, 0, 0]) == 1.0

    def test_hand_sweep(self):
        value = pr_auc([0.9, 0.8, 0.7, 0.6], [1, 0, 1, 0])
        assert value == pytest.approx(0.5 * 1.0 + 0.5 * (2 / 3), abs=1e-9)

    def test_worst_case_ranker_matches_oracle(self):
        scores = [4.0, 3.0, 2.0, 1.0]
        labels = [0, 0, 1, 1]
        assert pr_auc(scores, labels) == pytest.approx(
            threshold_pr_auc(np.asarray(scores), np.asarray(labels)), abs=1e-12
        )

    def test_random_scores_near_prevalence(self):
        rng = np.random.default_rng(2)
        scores = rng.random(10**4)
        labels = np.r_[np.ones(5000, int), np.zeros(5000, int)]
        assert pr_auc(scores, labels) == pytest.approx(0.5, abs=0.03)

    def test_matches_threshold_oracle(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            scores, labels = random_scored_set(rng, n_max=300)
            assert pr_auc(scores, labels) == pytest.approx(
                threshold_pr_auc(scores, labels), abs=1e-9
            )


class TestTrimmedMean:
    def test_definitional(self):
        assert trimmed_mean([1, 2, 3, 4, 100]) == 3.0

    def test_constant_invariance(self):
        assert trimmed_mean([7.0] * 10) == 7.0

    def test_ten_repetitions_mean_of_middle_eight(self):
        values = list(range(10))
        assert trimmed_mean(values) == np.mean(range(1, 9))

    def test_permutation_invariant(self):
        rng = np.random.default_rng(0)
        values = rng.normal(size=9)
        assert trimmed_mean(values) == trimmed_mean(rng.permutation(values))

    def test_too_few_values(self):
        with pytest.raises(ValueError):
            trimmed_mean([1, 2])


class TestBoxplotStats:
    def test_linear_interpolation_quartiles(self):
        s = boxplot_stats(list(range(1, 9)))
        assert s.q1 == 2.75 and s.median == 4.5 and s.q3 == 6.25
        assert s.outliers == []
        assert s.lower_whisker == 1 and s.upper_whisker == 8

    def test_single_far_outlier(self):
        values = list(range(1, 9))
        s0 = boxplot_stats(values)
        values.append(s0.q3 + 10 * (s0.q3 - s0.q1))
        s = boxplot_stats(values)
        assert len(s.outliers) == 1

    def test_constant_data(self):
        s = boxplot_stats([3.0] * 6)
        assert s.q1 == s.median == s.q3 == 3.0
        assert s.lower_whisker == s.upper_whisker == 3.0
        assert s.outliers == []

    def test_ordering_invariant(self):
        s = boxplot_stats([5, 1, 3, 2, 4])
        assert s.q1 <= s.median <= s.q3

    def test_too_few(self):
        with pytest.raises(ValueError):
            boxplot_stats([1, 2, 3])


class TestWilcoxon:
    def test_all_positive_differences(self):
        b = np.arange(6, dtype=float)
        w, p = wilcoxon_signed_rank(b + 1, b)
        assert w == 0
        assert p == 2 / 2**6

    def test_mixed_signs_matches_enumeration(self):
        a = np.array([1.0, -2.0, 3.0, -4.0, 5.0, -6.0])
        b = np.zeros(6)
        w, p = wilcoxon_signed_rank(a, b)
        w_ref, p_ref = enumerate_wilcoxon(a, b)
        assert w == w_ref == 9  # min(W+ = 1+3+5 = 9, W- = 2+4+6 = 12)
        assert p == pytest.approx(p_ref, abs=1e-12)

    def test_identical_samples_error(self):
        with pytest.raises(ValueError, match="zero"):
            wilcoxon_signed_rank([1.0, 2.0, 3.0, 4.0, 5.0], [1.0, 2.0, 3.0, 4.0, 5.0])

    def test_too_few_pairs(self):
        with pytest.raises(ValueError):
            wilcoxon_signed_rank([1, 2, 3, 4], [0, 0, 0, 0])

    def test_exact_matches_enumeration_with_ties(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            n = int(rng.integers(5, 11))
            a = rng.integers(-3, 4, size=n).astype(float)
            b = np.zeros(n)
            if not np.any(a):
                a[0] = 1.0
            a = np.where(a == 0, 0.5, a)  # keep n fixed, avoid zero diffs
            w, p = wilcoxon_signed_rank(a, b)
            w_ref, p_ref = enumerate_wilcoxon(a, b)
            assert w == pytest.approx(w_ref)
            assert p == pytest.approx(p_ref, abs=1e-12)

    def test_normal_approx_close_to_exact_at_cutoff(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            a = rng.normal(size=20)
            b = rng.normal(size=20)
            _, p_exact = wilcoxon_signed_rank(a, b, exact_cutoff=20)
            _, p_approx = wilcoxon_signed_rank(a, b, exact_cutoff=0)
            assert abs(p_exact - p_approx) <= 0.02

    def test_shifted_pairs_reject(self):
        rng = np.random.default_rng(6)
        b = rng.normal(size=15)
        _, p = wilcoxon_signed_rank(b + 2.0, b)
        assert p < 0.05
