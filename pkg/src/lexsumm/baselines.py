"""Unsupervised baseline summarizers for the comparison harness.

Three rankers share a budget-filling rule: walk the ranking, keep every
sentence that still fits the word budget, and emit the kept sentences in
original document order. Ties rank the earlier sentence first.
"""

from __future__ import annotations

import math
from collections import Counter
from enum import Enum

import numpy as np

from .corpus import LabeledDocument, Lexicons, RhetoricalRole, Summary, SummaryStatus, tokenize


class BaselineKind(Enum):
    LUHN = "luhn"
    LEXRANK = "lexrank"
    LETSUM = "letsum"


# LetSum's four themes and their share of the budget.
LETSUM_THEMES: dict[str, frozenset[RhetoricalRole]] = {
    "introduction": frozenset({RhetoricalRole.FACT}),
    "context": frozenset(
        {RhetoricalRole.ISSUE, RhetoricalRole.ARGUMENT, RhetoricalRole.RULING_BY_LOWER_COURT}
    ),
    "juridical_analysis": frozenset(
        {RhetoricalRole.STATUTE, RhetoricalRole.PRECEDENT, RhetoricalRole.RATIO}
    ),
    "conclusion": frozenset({RhetoricalRole.FINAL_JUDGEMENT}),
}
LETSUM_PROPORTIONS = {
    "introduction": 0.10,
    "context": 0.25,
    "juridical_analysis": 0.60,
    "conclusion": 0.05,
}


def _make_summary(doc: LabeledDocument, chosen_ids: set[int], objective: float) -> Summary:
    picked = [s for s in doc.sentences if s.id in chosen_ids]
    counts = {role: 0 for role in RhetoricalRole}
    for s in picked:
        counts[s.role] += 1
    return Summary(
        doc_id=doc.doc_id,
        selected=tuple(s.id for s in picked),
        word_count=sum(s.word_count for s in picked),
        per_segment_counts=counts,
        objective_value=objective,
        solver_status=SummaryStatus.OPTIMAL,
    )


def _fill_budget(ranked, budget: int):
    """Greedy fill: keep ranked sentences that fit; returns (ids, total score)."""
    chosen: set[int] = set()
    used = 0
    total = 0.0
    for score, _pos, sent in ranked:
        if used + sent.word_count <= budget:
            chosen.add(sent.id)
            used += sent.word_count
            total += score
    return chosen, total


def luhn_scores(doc: LabeledDocument, lexicons: Lexicons,
                min_frequency: int = 2, gap_limit: int = 4) -> list[float]:
    """Significant-word cluster score per sentence.

    A word is significant when its document frequency (stopwords excluded)
    reaches ``min_frequency``; a run of ``gap_limit`` insignificant tokens
    breaks the cluster, which scores significant_count**2 / span. The
    sentence scores its best cluster.
    """
    stop = lexicons.stopwords
    freq = Counter(t for s in doc.sentences for t in tokenize(s.text) if t not in stop)
    significant = {w for w, c in freq.items() if c >= min_frequency}

    def score(sentence) -> float:
        tokens = tokenize(sentence.text)
        marks = [k for k, t in enumerate(tokens) if t in significant]
        best = 0.0
        cluster_start = None
        prev = None
        for k in marks:
            if prev is not None and k - prev - 1 >= gap_limit:
                cluster_start = k
            elif cluster_start is None:
                cluster_start = k
            prev = k
            span = k - cluster_start + 1
            count = sum(1 for q in marks if cluster_start <= q <= k)
            best = max(best, count * count / span)
        return best

    return [score(s) for s in doc.sentences]


def luhn_summarize(doc: LabeledDocument, budget: int, lexicons: Lexicons,
                   min_frequency: int = 2, gap_limit: int = 4) -> Summary:
    scores = luhn_scores(doc, lexicons, min_frequency=min_frequency, gap_limit=gap_limit)
    ranked = sorted(
        (
            (score, s.position, s)
            for score, s in zip(scores, doc.sentences)
            if score > 0
        ),
        key=lambda x: (-x[0], x[1]),
    )
    chosen, total = _fill_budget(ranked, budget)
    return _make_summary(doc, chosen, total)


def _tf_vectors(doc: LabeledDocument, stopwords):
    """Per-sentence term counts (stopwords dropped) and sentence-level IDF."""
    tfs = [Counter(t for t in tokenize(s.text) if t not in stopwords) for s in doc.sentences]
    df = Counter()
    for tf in tfs:
        df.update(tf.keys())
    n = len(tfs)
    idf = {w: math.log(n / c) for w, c in df.items()}
    return tfs, idf


def _idf_cosine(tf_u: Counter, tf_v: Counter, idf) -> float:
    num = sum(tf_u[w] * tf_v[w] * idf[w] ** 2 for w in tf_u.keys() & tf_v.keys())
    den_u = math.sqrt(sum((c * idf[w]) ** 2 for w, c in tf_u.items()))
    den_v = math.sqrt(sum((c * idf[w]) ** 2 for w, c in tf_v.items()))
    if den_u == 0.0 or den_v == 0.0:
        return 0.0
    return num / (den_u * den_v)


def lexrank_scores(doc: LabeledDocument, lexicons: Lexicons, threshold: float = 0.1,
                   damping: float = 0.85, tol: float = 1e-6, max_iter: int = 1000) -> np.ndarray:
    """Degree-normalized power iteration over the thresholded similarity graph."""
    n = doc.n
    tfs, idf = _tf_vectors(doc, lexicons.stopwords)
    adj = np.zeros((n, n))
    for u in range(n):
        for v in range(u + 1, n):
            if _idf_cosine(tfs[u], tfs[v], idf) >= threshold:
                adj[u, v] = adj[v, u] = 1.0
    degree = adj.sum(axis=1)
    # Column-stochastic walk matrix; dangling sentences spread uniformly.
    M = np.full((n, n), 1.0 / n)
    nz = degree > 0
    M[:, nz] = adj[:, nz] / degree[nz]
    p = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        p_next = (1.0 - damping) / n + damping * (M @ p)
        if float(np.abs(p_next - p).max()) < tol:
            p = p_next
            break
        p = p_next
    return p


def lexrank_summarize(doc: LabeledDocument, budget: int, lexicons: Lexicons,
                      threshold: float = 0.1, damping: float = 0.85,
                      tol: float = 1e-6) -> Summary:
    if doc.n == 0:
        return _make_summary(doc, set(), 0.0)
    p = lexrank_scores(doc, lexicons, threshold=threshold, damping=damping, tol=tol)
    ranked = sorted(
        ((float(p[k]), s.position, s) for k, s in enumerate(doc.sentences)),
        key=lambda x: (-x[0], x[1]),
    )
    chosen, total = _fill_budget(ranked, budget)
    return _make_summary(doc, chosen, total)


def tfidf_sentence_scores(doc: LabeledDocument, lexicons: Lexicons) -> list[float]:
    """Sum of tf*idf over a sentence's tokens, with sentence-level IDF."""
    tfs, idf = _tf_vectors(doc, lexicons.stopwords)
    return [sum(c * idf[w] for w, c in tf.items()) for tf in tfs]


def letsum_summarize(doc: LabeledDocument, budget: int, lexicons: Lexicons,
                     themes: dict[str, frozenset[RhetoricalRole]] | None = None) -> Summary:
    """Theme-quota filling: rank sentences by TF-IDF within each of the four
    themes, fill 10/25/60/5 percent word sub-budgets, then spill whatever is
    left to the juridical-analysis theme."""
    themes = themes or LETSUM_THEMES
    scores = tfidf_sentence_scores(doc, lexicons)
    by_theme: dict[str, list[tuple[float, int, object]]] = {name: [] for name in themes}
    role_theme = {role: name for name, roles in themes.items() for role in roles}
    for k, s in enumerate(doc.sentences):
        theme = role_theme.get(s.role)
        if theme is not None:
            by_theme[theme].append((scores[k], s.position, s))
    for name in by_theme:
        by_theme[name].sort(key=lambda x: (-x[0], x[1]))

    chosen: set[int] = set()
    used = 0
    total = 0.0

    def fill(name: str, sub_budget: int) -> None:
        nonlocal used, total
        spent = 0
        for score, _pos, sent in by_theme[name]:
            if sent.id in chosen:
                continue
            if spent + sent.word_count <= sub_budget and used + sent.word_count <= budget:
                chosen.add(sent.id)
                spent += sent.word_count
                used += sent.word_count
                total += score

    for name, share in LETSUM_PROPORTIONS.items():
        fill(name, math.floor(share * budget))
    fill("juridical_analysis", budget - used)
    return _make_summary(doc, chosen, total)


BASELINES = {
    BaselineKind.LUHN: luhn_summarize,
    BaselineKind.LEXRANK: lexrank_summarize,
    BaselineKind.LETSUM: letsum_summarize,
}
