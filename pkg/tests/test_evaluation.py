import pytest
from hypothesis import given, strategies as st

from lexsumm.corpus import RhetoricalRole
from lexsumm.evaluation import (
    MERGED_RATIO_PRECEDENT,
    RougeScore,
    evaluate,
    evaluate_segmentwise,
    lcs_length,
    paired_t_pvalue,
    rouge_l,
    rouge_n,
)

_tokens = st.lists(st.sampled_from("abcdefg"), min_size=0, max_size=12)


class TestRougeN:
    def test_identity(self):
        score = rouge_n(["a", "b", "c"], ["a", "b", "c"], 2)
        assert score == RougeScore(1.0, 1.0, 1.0)

    def test_hand_counted_bigrams(self):
        score = rouge_n(["a", "b", "c"], ["a", "b", "d"], 2)
        assert score == RougeScore(0.5, 0.5, 0.5)

    def test_empty_candidate(self):
        assert rouge_n([], ["a", "b"], 2) == RougeScore(0.0, 0.0, 0.0)

    def test_empty_reference(self):
        assert rouge_n(["a", "b"], [], 2) == RougeScore(0.0, 0.0, 0.0)

    def test_hand_unigrams_and_bigrams(self):
        cand = ["the", "cat", "sat", "on", "mat"]
        ref = ["the", "cat", "lay", "on", "mat"]
        u = rouge_n(cand, ref, 1)
        assert u.recall == pytest.approx(4 / 5)
        assert u.precision == pytest.approx(4 / 5)
        assert u.f == pytest.approx(4 / 5)
        b = rouge_n(cand, ref, 2)
        assert b == RougeScore(0.5, 0.5, 0.5)

    def test_clipping_with_repeats(self):
        score = rouge_n(["a", "a", "a", "b"], ["a", "a", "c"], 1)
        assert score.recall == pytest.approx(2 / 3)
        assert score.precision == pytest.approx(2 / 4)
        assert score.f == pytest.approx(4 / 7)

    def test_stream_shorter_than_n(self):
        assert rouge_n(["a"], ["a"], 2) == RougeScore(0.0, 0.0, 0.0)

    @given(_tokens, _tokens)
    def test_swap_swaps_recall_precision_keeps_f(self, cand, ref):
        ab = rouge_n(cand, ref, 2)
        ba = rouge_n(ref, cand, 2)
        assert ab.recall == pytest.approx(ba.precision)
        assert ab.precision == pytest.approx(ba.recall)
        assert ab.f == pytest.approx(ba.f)

    @given(_tokens, _tokens, _tokens)
    def test_appending_never_decreases_recall(self, cand, ref, suffix):
        base = rouge_n(cand, ref, 2).recall
        grown = rouge_n(cand + suffix, ref, 2).recall
        assert grown >= base - 1e-12


class TestRougeL:
    def test_identity(self):
        assert rouge_l(["x", "y"], ["x", "y"]) == RougeScore(1.0, 1.0, 1.0)

    def test_hand_lcs(self):
        score = rouge_l(["a", "x", "b"], ["a", "b"])
        assert score.recall == pytest.approx(1.0)
        assert score.precision == pytest.approx(2 / 3)
        assert score.f == pytest.approx(0.8)

    def test_disjoint_vocabularies(self):
        assert rouge_l(["a", "b"], ["c", "d"]) == RougeScore(0.0, 0.0, 0.0)

    def test_hand_lcs_reordered(self):
        score = rouge_l(["a", "b", "c", "d"], ["b", "d", "a"])
        assert lcs_length(["a", "b", "c", "d"], ["b", "d", "a"]) == 2
        assert score.recall == pytest.approx(2 / 3)
        assert score.precision == pytest.approx(2 / 4)
        assert score.f == pytest.approx(4 / 7)

    def test_single_common_token(self):
        assert rouge_l(["x", "y"], ["y", "z"]) == RougeScore(0.5, 0.5, 0.5)

    @given(_tokens, _tokens)
    def test_lcs_bounded_by_stream_lengths(self, a, b):
        ell = lcs_length(a, b)
        assert 0 <= ell <= min(len(a), len(b))

    @given(_tokens, _tokens)
    def test_lcs_symmetric(self, a, b):
        assert lcs_length(a, b) == lcs_length(b, a)

    @given(_tokens, _tokens)
    def test_swap_swaps_recall_precision_keeps_f(self, cand, ref):
        ab = rouge_l(cand, ref)
        ba = rouge_l(ref, cand)
        assert ab.recall == pytest.approx(ba.precision)
        assert ab.precision == pytest.approx(ba.recall)
        assert ab.f == pytest.approx(ba.f)

    def test_lcs_brute_force_cross_check(self):
        # exhaustive subsequence check on tiny streams
        import itertools

        def brute_lcs(a, b):
            best = 0
            for r in range(len(a) + 1):
                for combo in itertools.combinations(range(len(a)), r):
                    sub = [a[i] for i in combo]
                    it = iter(b)
                    if all(tok in it for tok in sub):
                        best = max(best, len(sub))
            return best

        import random

        rng = random.Random(12)
        for _ in range(40):
            a = [rng.choice("abc") for _ in range(rng.randint(0, 7))]
            b = [rng.choice("abc") for _ in range(rng.randint(0, 7))]
            assert lcs_length(a, b) == brute_lcs(a, b)


class TestEvaluate:
    STOP = frozenset({"the", "a", "of"})

    def test_identical_to_single_reference(self):
        score = evaluate("the cat sat on a mat", ["the cat sat on a mat"], self.STOP)
        assert score["rouge2"] == RougeScore(1.0, 1.0, 1.0)
        assert score["rougeL"] == RougeScore(1.0, 1.0, 1.0)

    def test_two_references_are_averaged(self):
        cand = "one two three four"
        full = "one two three four"
        half = "one two nine eight"
        score = evaluate(cand, [full, half], frozenset())
        # vs full: R2 = 1.0; vs half: overlap bigram "one two" of 3 -> 1/3
        assert score["rouge2"].recall == pytest.approx((1.0 + 1 / 3) / 2)

    def test_stopword_only_candidate_scores_zero(self):
        score = evaluate("the of a", ["the cat"], self.STOP)
        assert score["rouge2"] == RougeScore(0.0, 0.0, 0.0)
        assert score["rougeL"] == RougeScore(0.0, 0.0, 0.0)

    def test_stopwords_removed_from_both_sides(self):
        # identical after stopword removal even though raw texts differ
        score = evaluate("cat sat mat", ["the cat sat of the mat"], self.STOP)
        assert score["rougeL"] == RougeScore(1.0, 1.0, 1.0)

    def test_requires_references(self):
        from lexsumm.corpus import NoReferencesError

        with pytest.raises(NoReferencesError):
            evaluate("words", [], self.STOP)


class TestSegmentwise:
    STOP = frozenset()

    def test_matches_manually_filtered_whole_summary(self):
        cand = [
            (RhetoricalRole.FACT, "alpha beta gamma"),
            (RhetoricalRole.FINAL_JUDGEMENT, "delta epsilon"),
            (RhetoricalRole.FACT, "zeta eta"),
        ]
        ref = [
            (RhetoricalRole.FACT, "alpha beta"),
            (RhetoricalRole.FINAL_JUDGEMENT, "delta epsilon"),
        ]
        result = evaluate_segmentwise(cand, ref, self.STOP)
        manual_fact = rouge_l(
            "alpha beta gamma zeta eta".split(), "alpha beta".split()
        )
        manual_fj = rouge_l("delta epsilon".split(), "delta epsilon".split())
        assert result["fact"] == manual_fact
        assert result["final_judgement"] == manual_fj

    def test_missing_candidate_segment_scores_zero(self):
        cand = [(RhetoricalRole.FACT, "alpha")]
        ref = [
            (RhetoricalRole.FACT, "alpha"),
            (RhetoricalRole.ISSUE, "question raised"),
        ]
        result = evaluate_segmentwise(cand, ref, self.STOP)
        assert result["issue"] == RougeScore(0.0, 0.0, 0.0)

    def test_roles_absent_from_reference_omitted(self):
        cand = [(RhetoricalRole.ARGUMENT, "alpha")]
        ref = [(RhetoricalRole.FACT, "alpha")]
        result = evaluate_segmentwise(cand, ref, self.STOP)
        assert set(result) == {"fact"}

    def test_ratio_and_precedent_merge_by_default(self):
        cand = [(RhetoricalRole.RATIO, "alpha beta")]
        ref = [
            (RhetoricalRole.PRECEDENT, "alpha"),
            (RhetoricalRole.RATIO, "beta"),
        ]
        merged = evaluate_segmentwise(cand, ref, self.STOP)
        assert set(merged) == {MERGED_RATIO_PRECEDENT}
        assert merged[MERGED_RATIO_PRECEDENT].recall == pytest.approx(1.0)
        split = evaluate_segmentwise(cand, ref, self.STOP, merge_ratio_precedent=False)
        assert set(split) == {"precedent", "ratio"}


class TestPairedT:
    def test_identical_scores_give_p_one(self):
        assert paired_t_pvalue([0.4, 0.5, 0.6], [0.4, 0.5, 0.6]) == 1.0

    def test_constant_nonzero_difference(self):
        assert paired_t_pvalue([0.5, 0.6], [0.4, 0.5]) == 0.0

    def test_matches_scipy_on_regular_data(self):
        from scipy import stats

        a = [0.41, 0.52, 0.66, 0.47, 0.58]
        b = [0.38, 0.55, 0.60, 0.49, 0.51]
        assert paired_t_pvalue(a, b) == pytest.approx(stats.ttest_rel(a, b).pvalue)

    def test_rejects_mismatched_lengths(self):
        with pytest.raises(ValueError):
            paired_t_pvalue([1.0], [1.0, 2.0])
