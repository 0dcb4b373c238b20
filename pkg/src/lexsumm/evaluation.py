"""ROUGE-2 / ROUGE-L scoring with stopword removal and multi-reference averaging.

Scores are computed on the stopword-filtered token streams of whole
summaries: n-gram overlaps are clipped counts, ROUGE-L uses the longest
common subsequence of the full streams, and F is the harmonic mean of recall
and precision. With several references the per-metric scores are averaged
arithmetically. Segment-wise scoring filters both sides to one rhetorical
role (the default profile buckets the reasoning and precedent roles together)
and applies ROUGE-L to the filtered texts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import stats

from .corpus import NoReferencesError, RhetoricalRole, tokenize

MERGED_RATIO_PRECEDENT = "precedent+ratio"


@dataclass(frozen=True)
class RougeScore:
    recall: float
    precision: float
    f: float

    @classmethod
    def from_counts(cls, overlap: float, ref_total: int, cand_total: int) -> "RougeScore":
        recall = overlap / ref_total if ref_total else 0.0
        precision = overlap / cand_total if cand_total else 0.0
        f = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        return cls(recall=recall, precision=precision, f=f)

    @classmethod
    def zero(cls) -> "RougeScore":
        return cls(0.0, 0.0, 0.0)


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[k : k + n]) for k in range(len(tokens) - n + 1))


def rouge_n(candidate: Sequence[str], reference: Sequence[str], n: int) -> RougeScore:
    """Clipped n-gram overlap scores; empty streams score zero."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cand = _ngrams(candidate, n)
    ref = _ngrams(reference, n)
    overlap = sum(min(count, ref[gram]) for gram, count in cand.items())
    return RougeScore.from_counts(overlap, sum(ref.values()), sum(cand.values()))


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    """Longest common subsequence length via a linear-space rolling row."""
    if not a or not b:
        return 0
    vocab: dict[str, int] = {}
    ids_a = np.array([vocab.setdefault(t, len(vocab)) for t in a], dtype=np.int64)
    ids_b = np.array([vocab.setdefault(t, len(vocab)) for t in b], dtype=np.int64)
    if ids_a.size < ids_b.size:  # roll over the shorter side
        ids_a, ids_b = ids_b, ids_a
    prev = np.zeros(ids_b.size + 1, dtype=np.int64)
    for tok in ids_a:
        matched = np.where(ids_b == tok, prev[:-1] + 1, 0)
        cand = np.maximum(prev[1:], matched)
        prev = np.maximum.accumulate(np.concatenate(([0], cand)))
    return int(prev[-1])


def rouge_l(candidate: Sequence[str], reference: Sequence[str]) -> RougeScore:
    """LCS-based scores over whole token streams; empty streams score zero."""
    ell = lcs_length(candidate, reference)
    return RougeScore.from_counts(ell, len(reference), len(candidate))


def _filtered(text: str, stopwords: frozenset[str] | set[str]) -> list[str]:
    return [t for t in tokenize(text) if t not in stopwords]


def _mean_scores(scores: Sequence[RougeScore]) -> RougeScore:
    k = len(scores)
    return RougeScore(
        recall=sum(s.recall for s in scores) / k,
        precision=sum(s.precision for s in scores) / k,
        f=sum(s.f for s in scores) / k,
    )


def evaluate(
    candidate_text: str,
    reference_texts: Sequence[str],
    stopwords: frozenset[str] | set[str],
) -> dict[str, RougeScore]:
    """ROUGE-2 and ROUGE-L of a summary against each reference, averaged."""
    if not reference_texts:
        raise NoReferencesError("evaluate requires at least one reference")
    cand = _filtered(candidate_text, stopwords)
    r2, rl = [], []
    for ref_text in reference_texts:
        ref = _filtered(ref_text, stopwords)
        r2.append(rouge_n(cand, ref, 2))
        rl.append(rouge_l(cand, ref))
    return {"rouge2": _mean_scores(r2), "rougeL": _mean_scores(rl)}


def _bucket(role: RhetoricalRole, merge_ratio_precedent: bool) -> str:
    if merge_ratio_precedent and role in (RhetoricalRole.PRECEDENT, RhetoricalRole.RATIO):
        return MERGED_RATIO_PRECEDENT
    return role.value


def evaluate_segmentwise(
    candidate_sentences: Iterable[tuple[RhetoricalRole, str]],
    reference_sentences: Iterable[tuple[RhetoricalRole, str]],
    stopwords: frozenset[str] | set[str],
    merge_ratio_precedent: bool = True,
) -> dict[str, RougeScore]:
    """Per-segment ROUGE-L: both sides filtered to one role, then scored.

    Segments absent from the reference are omitted. A segment present in the
    reference but missing from the candidate scores zero.
    """
    cand_parts: dict[str, list[str]] = {}
    for role, text in candidate_sentences:
        cand_parts.setdefault(_bucket(role, merge_ratio_precedent), []).append(text)
    ref_parts: dict[str, list[str]] = {}
    for role, text in reference_sentences:
        ref_parts.setdefault(_bucket(role, merge_ratio_precedent), []).append(text)

    out: dict[str, RougeScore] = {}
    for bucket, ref_texts in ref_parts.items():
        ref = _filtered(" ".join(ref_texts), stopwords)
        cand = _filtered(" ".join(cand_parts.get(bucket, [])), stopwords)
        out[bucket] = rouge_l(cand, ref)
    return out


def paired_t_pvalue(a: Sequence[float], b: Sequence[float]) -> float:
    """Two-sided paired Student's t-test p-value.

    Zero-variance differences are degenerate for the t statistic: identical
    pairings report 1.0, a constant nonzero difference reports 0.0.
    """
    if len(a) != len(b) or not a:
        raise ValueError("paired t-test needs two equal-length nonempty samples")
    diffs = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    if float(np.ptp(diffs)) < 1e-12:
        return 1.0 if abs(float(diffs[0])) < 1e-12 else 0.0
    p = float(stats.ttest_rel(a, b).pvalue)
    return 1.0 if np.isnan(p) else p
