"""Shared test fixtures: brute-force oracle, instance generators, corpus writers.

The oracle enumerates sentence subsets directly from the problem data and
never calls any solver code, so solver bugs cannot leak into expectations.
"""

from __future__ import annotations

import random

from lexsumm.corpus import LabeledDocument, Lexicons, Sentence, tokenize
from lexsumm.ilp import IlpProblem, Quota


def make_lexicons(keywords=(), statutes=(), stopwords=()) -> Lexicons:
    return Lexicons(
        legal_keywords=frozenset(keywords),
        statute_names=tuple(statutes),
        stopwords=frozenset(stopwords),
    )


def make_doc(doc_id: str, rows) -> LabeledDocument:
    """Rows of (text, role); ids and positions assigned in order."""
    sentences = tuple(
        Sentence(
            id=k,
            text=text,
            role=role,
            position=k + 1,
            word_count=len(tokenize(text)),
        )
        for k, (text, role) in enumerate(rows)
    )
    return LabeledDocument(doc_id=doc_id, sentences=sentences)


def brute_force(problem: IlpProblem):
    """Enumerate all sentence subsets; return (best objective, set of optimal
    frozensets) or (None, set()) when no subset is feasible."""
    n = problem.n
    best = None
    argmax: set[frozenset[int]] = set()
    member_sets = [(set(q.members), q.need) for q in problem.quotas]
    cover_sets = [set(cov) for cov in problem.covers]
    for mask in range(1 << n):
        chosen = {i for i in range(n) if mask >> i & 1}
        if sum(problem.lengths[i] for i in chosen) > problem.budget:
            continue
        if any(len(chosen & members) < need for members, need in member_sets):
            continue
        obj = sum(problem.obj_x[i] for i in chosen)
        obj += sum(
            problem.obj_y[j] for j, cov in enumerate(cover_sets) if chosen & cov
        )
        if best is None or obj > best + 1e-12:
            best = obj
            argmax = {frozenset(chosen)}
        elif abs(obj - best) <= 1e-12:
            argmax.add(frozenset(chosen))
    return best, argmax


def brute_objective(problem: IlpProblem, chosen: set[int]) -> float:
    """Objective of a given selection, computed from scratch."""
    obj = sum(problem.obj_x[i] for i in chosen)
    obj += sum(
        problem.obj_y[j]
        for j, cov in enumerate(problem.covers)
        if chosen.intersection(cov)
    )
    return obj


def random_instance(rng: random.Random, max_n: int = 12, max_m: int = 15) -> IlpProblem:
    """Random well-formed instance with integer coefficients and disjoint quotas."""
    n = rng.randint(1, max_n)
    m = rng.randint(0, max_m)
    obj_x = tuple(float(rng.randint(0, 40)) for _ in range(n))
    obj_y = tuple(float(rng.choice([1, 3, 5])) for _ in range(m))
    lengths = tuple(rng.randint(1, 12) for _ in range(n))
    budget = rng.randint(0, sum(lengths))
    covers = []
    for _ in range(m):
        size = rng.randint(1, min(4, n))
        covers.append(tuple(sorted(rng.sample(range(n), size))))
    couplings = tuple((i, j) for j, cov in enumerate(covers) for i in cov)
    ids = list(range(n))
    rng.shuffle(ids)
    quotas = []
    start = 0
    groups = rng.randint(0, 3)
    for k in range(groups):
        if start >= n:
            break
        size = rng.randint(1, max(1, (n - start) // max(1, groups - k)))
        members = tuple(sorted(ids[start : start + size]))
        start += size
        need = rng.randint(0, len(members))
        if need:
            quotas.append(Quota(f"seg{k}", members, need))
    problem = IlpProblem(
        obj_x, obj_y, lengths, budget, couplings, tuple(covers), tuple(quotas)
    )
    problem.validate()
    return problem


def planted_documents(count: int, seed: int, lexicons, profile=None):
    """Small documents whose selection program has a unique brute-force
    optimum; yields (doc, budget, gold sentence ids). Uniqueness is verified
    by enumeration at construction time."""
    from dataclasses import replace

    from lexsumm.content import build_content_index
    from lexsumm.guidelines import INDIA
    from lexsumm.ilp import build_problem, quota_min_length
    from lexsumm.synthetic import synth_document

    profile = profile or INDIA
    out = []
    attempt = 0
    while len(out) < count:
        attempt += 1
        assert attempt < 400, "planted-corpus construction should converge quickly"
        rng = random.Random(f"plant:{seed}:{attempt}")
        doc = synth_document(f"plant{len(out):02d}", rng, scale=0.3)
        if doc.n > 10:
            continue
        index = build_content_index(doc, lexicons, profile.content_scores)
        problem = build_problem(doc, index, profile, sum(s.word_count for s in doc.sentences))
        qmin = quota_min_length(problem)
        total = sum(problem.lengths)
        if qmin >= total:
            continue
        budget = rng.randint(qmin, total - 1)
        problem = replace(problem, budget=budget)
        best, argmax = brute_force(problem)
        if best is None or len(argmax) != 1:
            continue
        chosen = sorted(next(iter(argmax)))
        gold_ids = [doc.sentences[i].id for i in chosen]
        out.append((doc, budget, gold_ids))
    return out


def write_corpus_file(path, docs) -> None:
    from lexsumm.corpus import write_corpus

    write_corpus(docs, path)


def write_references_file(path, references) -> None:
    from lexsumm.corpus import write_references

    write_references(references, path)
