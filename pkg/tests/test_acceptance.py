"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines. Expected values come from independent oracles: subset enumeration for
the optimizer, hand-computed fixtures for the metrics, byte comparison for
determinism.
"""

import json
import random
import time
from contextlib import contextmanager
from dataclasses import replace

import pytest

from lexsumm.cli import main
from lexsumm.corpus import RhetoricalRole
from lexsumm.evaluation import RougeScore, evaluate_segmentwise, rouge_l, rouge_n
from lexsumm.ilp import SolveStatus, solve_exact, verify_solution
from lexsumm.baselines import letsum_summarize, lexrank_summarize, luhn_summarize
from lexsumm.robustness import NoiseSpec, report_record, report_table, robustness_report
from lexsumm.summarizer import SummaryRequest, summarize
from lexsumm.synthetic import synth_corpus

from helpers import (
    brute_force,
    brute_objective,
    planted_documents,
    random_instance,
    write_corpus_file,
    write_references_file,
)

TOL = 1e-9

# solver outputs accumulated by the criteria below and re-verified in
# test_feasibility_verification
_SOLVED: list = []


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"\n[ACCEPTANCE] {name}: FAIL")
        raise
    print(f"\n[ACCEPTANCE] {name}: PASS")


def test_ilp_exactness_200_random_instances():
    with criterion("ILP exactness (200 instances, n<=12, m<=15)"):
        start = time.monotonic()
        rng = random.Random(20240601)
        for k in range(200):
            problem = random_instance(rng, max_n=12, max_m=15)
            expected, _ = brute_force(problem)
            solution = solve_exact(problem)
            if expected is None:
                assert solution.status is SolveStatus.INFEASIBLE, f"instance {k}"
            else:
                assert solution.status is SolveStatus.OPTIMAL, f"instance {k}"
                assert abs(solution.objective - expected) <= TOL, (
                    f"instance {k}: {solution.objective} != {expected}"
                )
                _SOLVED.append((problem, solution))
        elapsed = time.monotonic() - start
        assert elapsed < 60.0, f"exactness sweep took {elapsed:.1f}s"


def test_budget_monotonicity():
    with criterion("Budget monotonicity (50 instances, L in 10..100)"):
        rng = random.Random(777)
        for _ in range(50):
            base = random_instance(rng, max_n=12, max_m=12)
            previous = None
            for budget in range(10, 101, 10):
                problem = replace(base, budget=budget)
                solution = solve_exact(problem)
                if solution.status is SolveStatus.INFEASIBLE:
                    assert previous is None, "feasibility is monotone in the budget"
                    continue
                _SOLVED.append((problem, solution))
                if previous is not None:
                    assert solution.objective >= previous - TOL
                previous = solution.objective


def test_feasibility_verification():
    with criterion("Feasibility (independent re-check of all solver outputs)"):
        assert len(_SOLVED) > 400
        for problem, solution in _SOLVED:
            assert verify_solution(problem, solution) == []


def test_argmax_scale_invariance():
    with criterion("Argmax scale-invariance (c in {0.5, 3, 10})"):
        rng = random.Random(31337)
        checked = 0
        while checked < 12:
            problem = random_instance(rng, max_n=10, max_m=10)
            base_best, base_argmax = brute_force(problem)
            if base_best is None:
                continue
            for c in (0.5, 3.0, 10.0):
                scaled = replace(
                    problem,
                    obj_x=tuple(c * v for v in problem.obj_x),
                    obj_y=tuple(c * v for v in problem.obj_y),
                )
                scaled_best, scaled_argmax = brute_force(scaled)
                assert scaled_argmax == base_argmax
                assert abs(scaled_best - c * base_best) <= TOL
                assert abs(solve_exact(scaled).objective - c * solve_exact(problem).objective) <= TOL
            checked += 1


def _with_duplicate(problem, i):
    dup = problem.n
    covers = tuple(cov + (dup,) if i in cov else cov for cov in problem.covers)
    couplings = tuple((s, j) for j, cov in enumerate(covers) for s in cov)
    return replace(
        problem,
        obj_x=problem.obj_x + (problem.obj_x[i],),
        lengths=problem.lengths + (problem.lengths[i],),
        covers=covers,
        couplings=couplings,
    )


def test_redundancy_duplicate_worth_exactly_informativeness():
    with criterion("Redundancy (duplicate adds exactly its informativeness)"):
        rng = random.Random(424242)
        checked = 0
        while checked < 20:
            problem = random_instance(rng, max_n=10, max_m=12)
            best, argmax = brute_force(problem)
            if best is None:
                continue
            chosen = set(next(iter(sorted(argmax, key=sorted))))
            if not chosen:
                continue
            i = min(chosen)
            gain = problem.obj_x[i]
            dup_problem = _with_duplicate(problem, i)
            dup = dup_problem.n - 1
            # adding the twin to any selection moves the objective by exactly
            # I(i): its content words are already covered
            assert abs(
                brute_objective(dup_problem, chosen | {dup})
                - (brute_objective(dup_problem, chosen) + gain)
            ) <= TOL
            # with room for the twin, the optimum splits exactly into
            # "ignore it" vs "original optimum plus its informativeness"
            grown_budget = problem.budget + problem.lengths[i]
            best_grown, _ = brute_force(replace(problem, budget=grown_budget))
            best_dup, _ = brute_force(replace(dup_problem, budget=grown_budget))
            assert abs(best_dup - max(best_grown, best + gain)) <= TOL
            solution = solve_exact(replace(dup_problem, budget=grown_budget))
            assert abs(solution.objective - best_dup) <= TOL
            checked += 1


def test_guideline_quota_satisfaction_100_documents(lexicons):
    with criterion("Quota satisfaction (vital segments complete on 100 docs)"):
        docs, _ = synth_corpus(100, seed=9090, scale=0.8)
        rng = random.Random(3030)
        exceptions = 0
        for doc in docs:
            vital_ids = {
                s.id
                for s in doc.sentences
                if s.role in (RhetoricalRole.FINAL_JUDGEMENT, RhetoricalRole.ISSUE)
            }
            vital_words = sum(
                s.word_count for s in doc.sentences if s.id in vital_ids
            )
            budget = vital_words + rng.randint(0, 40)
            summary, _ = summarize(
                SummaryRequest(doc=doc, target_length=budget), lexicons
            )
            assert summary.word_count <= budget
            if not vital_ids <= set(summary.selected):
                exceptions += 1
        assert exceptions == 0


def test_rouge_hand_fixtures():
    with criterion("ROUGE oracle (hand-computed fixtures)"):
        # 1-2: identity and empty inputs
        assert rouge_n(["a", "b", "c"], ["a", "b", "c"], 2) == RougeScore(1.0, 1.0, 1.0)
        assert rouge_n([], ["a", "b"], 2) == RougeScore(0.0, 0.0, 0.0)
        assert rouge_l(["q", "r"], ["q", "r"]) == RougeScore(1.0, 1.0, 1.0)
        assert rouge_l([], []) == RougeScore(0.0, 0.0, 0.0)
        # 3: worked bigram example
        assert rouge_n(["a", "b", "c"], ["a", "b", "d"], 2) == RougeScore(0.5, 0.5, 0.5)
        # 4: worked LCS example
        score = rouge_l(["a", "x", "b"], ["a", "b"])
        assert score.recall == pytest.approx(1.0)
        assert score.precision == pytest.approx(2 / 3)
        assert score.f == pytest.approx(0.8)
        # 5: unigram overlap with clipping
        score = rouge_n(["a", "a", "a", "b"], ["a", "a", "c"], 1)
        assert (score.recall, score.precision) == (pytest.approx(2 / 3), pytest.approx(0.5))
        assert score.f == pytest.approx(4 / 7)
        # 6: five-token streams, hand-counted unigrams and bigrams
        cand = ["the", "cat", "sat", "on", "mat"]
        ref = ["the", "cat", "lay", "on", "mat"]
        assert rouge_n(cand, ref, 1).f == pytest.approx(4 / 5)
        assert rouge_n(cand, ref, 2) == RougeScore(0.5, 0.5, 0.5)
        # 7: LCS with reordering, hand length 2
        score = rouge_l(["a", "b", "c", "d"], ["b", "d", "a"])
        assert score.recall == pytest.approx(2 / 3)
        assert score.precision == pytest.approx(0.5)
        assert score.f == pytest.approx(4 / 7)
        # 8: disjoint vocabularies
        assert rouge_l(["a", "b"], ["c", "d"]) == RougeScore(0.0, 0.0, 0.0)
        # 9: single shared token
        assert rouge_l(["x", "y"], ["y", "z"]) == RougeScore(0.5, 0.5, 0.5)


def test_segmentwise_matches_manual_filtering():
    with criterion("Segment-wise evaluation (two-role fixture)"):
        cand = [
            (RhetoricalRole.FACT, "alpha beta gamma"),
            (RhetoricalRole.FINAL_JUDGEMENT, "delta epsilon"),
            (RhetoricalRole.FACT, "zeta eta"),
        ]
        ref = [
            (RhetoricalRole.FACT, "alpha beta"),
            (RhetoricalRole.FINAL_JUDGEMENT, "delta epsilon"),
        ]
        result = evaluate_segmentwise(cand, ref, frozenset())
        assert result["fact"] == rouge_l(
            "alpha beta gamma zeta eta".split(), "alpha beta".split()
        )
        assert result["final_judgement"] == rouge_l(
            "delta epsilon".split(), "delta epsilon".split()
        )


def test_planted_optimum_recovery(lexicons):
    with criterion("Planted-optimum recovery (10 documents)"):
        planted = planted_documents(10, seed=60606, lexicons=lexicons)
        assert len(planted) == 10
        for doc, budget, gold_ids in planted:
            summary, _ = summarize(SummaryRequest(doc=doc, target_length=budget), lexicons)
            assert list(summary.selected) == gold_ids, doc.doc_id


def test_robustness_harness(lexicons):
    with criterion("Robustness harness (zero-noise identity, fixed-seed bytes)"):
        docs, refs = synth_corpus(3, seed=515, scale=0.8)
        zero = robustness_report(docs, refs, "india", NoiseSpec(rate=0.0, seed=4), lexicons)
        for row in zero.rows:
            assert row.label_accuracy == 1.0
            for metric in ("rouge2_R", "rouge2_F", "rougeL_R", "rougeL_F"):
                assert row.delta(metric) == 0.0
        spec = NoiseSpec(rate=0.15, seed=4)
        first = robustness_report(docs, refs, "india", spec, lexicons)
        second = robustness_report(docs, refs, "india", spec, lexicons)
        first_bytes = json.dumps(report_record(first), sort_keys=True).encode()
        second_bytes = json.dumps(report_record(second), sort_keys=True).encode()
        assert first_bytes == second_bytes
        assert report_table(first) == report_table(second)


def test_baseline_budget_compliance_and_table(lexicons, tmp_path):
    with criterion("Baseline budget compliance + comparison table shape"):
        docs, _ = synth_corpus(100, seed=2468)
        rng = random.Random(1357)
        for doc in docs:
            budget = rng.randint(0, sum(s.word_count for s in doc.sentences))
            for baseline in (luhn_summarize, lexrank_summarize, letsum_summarize):
                assert baseline(doc, budget, lexicons).word_count <= budget
        small_docs, small_refs = synth_corpus(2, seed=97, scale=0.7)
        corpus = tmp_path / "c.jsonl"
        references = tmp_path / "r.jsonl"
        write_corpus_file(corpus, small_docs)
        write_references_file(references, small_refs)
        out = tmp_path / "cmp"
        assert main(["compare", "--corpus", str(corpus), "--references", str(references),
                     "--out", str(out)]) == 0
        lines = (out / "comparison.txt").read_text().splitlines()
        assert lines[0].split() == ["method", "R2-R", "R2-F", "RL-R", "RL-F"]
        assert [row.split()[0] for row in lines[1:]] == ["ilp", "luhn", "lexrank", "letsum"]


def test_cli_determinism(lexicons, tmp_path):
    with criterion("CLI determinism (byte-identical reruns)"):
        docs, refs = synth_corpus(3, seed=864, scale=0.7)
        corpus = tmp_path / "c.jsonl"
        references = tmp_path / "r.jsonl"
        write_corpus_file(corpus, docs)
        write_references_file(references, refs)

        def read_dir(path):
            return {p.relative_to(path): p.read_bytes()
                    for p in sorted(path.glob("**/*")) if p.is_file()}

        sum_args = ["summarize", "--corpus", str(corpus), "--references", str(references)]
        assert main(sum_args + ["--out", str(tmp_path / "s1")]) == 0
        assert main(sum_args + ["--out", str(tmp_path / "s2")]) == 0
        assert read_dir(tmp_path / "s1") == read_dir(tmp_path / "s2")

        cmp_args = ["compare", "--corpus", str(corpus), "--references", str(references)]
        assert main(cmp_args + ["--out", str(tmp_path / "c1")]) == 0
        assert main(cmp_args + ["--out", str(tmp_path / "c2")]) == 0
        assert read_dir(tmp_path / "c1") == read_dir(tmp_path / "c2")
