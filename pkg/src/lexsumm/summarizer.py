"""End-to-end summarization: index, profile, program, solve, emit.

When the segment quotas cannot fit the word budget they are relaxed one
sentence at a time, always taking from the lowest-weight segment first (ties
broken by role declaration order), so the most important segments keep their
guaranteed representation the longest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

from .content import build_content_index
from .corpus import (
    EmptyDocumentError,
    LabeledDocument,
    NoReferencesError,
    ReferenceSummary,
    RhetoricalRole,
    ROLE_ORDER,
    Summary,
    SummaryStatus,
    Lexicons,
)
from .guidelines import GuidelineProfile, resolve_profile
from .ilp import (
    IlpProblem,
    Quota,
    SolveStatus,
    build_problem,
    quota_min_length,
    solve_exact,
    verify_solution,
)


class SolverInvariantError(RuntimeError):
    """A solver output failed independent verification."""


@dataclass(frozen=True)
class SummaryRequest:
    doc: LabeledDocument
    profile: str | GuidelineProfile = "india"
    target_length: int | None = None
    references: Sequence[ReferenceSummary] | None = None

    def __post_init__(self):
        if (self.target_length is None) == (self.references is None):
            raise ValueError("provide exactly one of target_length or references")
        if self.target_length is not None and self.target_length < 0:
            raise ValueError("target_length must be >= 0")


def target_length(references: Sequence[ReferenceSummary]) -> int:
    """Floor of the mean reference word count; the budget is a hard maximum."""
    if not references:
        raise NoReferencesError("cannot derive a target length without references")
    return math.floor(sum(r.word_count() for r in references) / len(references))


def relax_quotas(
    quotas: Sequence[Quota],
    lengths: Sequence[int],
    budget: int,
    weights: dict[str, float],
) -> tuple[tuple[Quota, ...], list[tuple[str, int, int]]]:
    """Decrement quota minimums until they fit the budget.

    Each step removes one required sentence from the lowest-weight segment
    that still has a minimum (ties by role declaration order). Returns the
    new quotas and a report of (segment, original, final) for changed rows.
    """
    current = {q.label: q.need for q in quotas}
    members = {q.label: q.members for q in quotas}
    original = dict(current)

    def min_total() -> int:
        total = 0
        for label, need in current.items():
            shortest = sorted(lengths[i] for i in members[label])
            total += sum(shortest[:need])
        return total

    order = {role.value: k for role, k in ROLE_ORDER.items()}
    while min_total() > budget:
        candidates = [label for label, need in current.items() if need > 0]
        label = min(candidates, key=lambda l: (weights.get(l, 0.0), order.get(l, 99)))
        current[label] -= 1

    new_quotas = tuple(
        replace(q, need=current[q.label]) for q in quotas if current[q.label] > 0
    )
    report = [
        (label, original[label], current[label])
        for label in original
        if current[label] != original[label]
    ]
    return new_quotas, report


def prepare_problem(
    doc: LabeledDocument, profile: GuidelineProfile, budget: int, lexicons: Lexicons
) -> IlpProblem:
    """Index the document and assemble its selection program (pre-relaxation)."""
    index = build_content_index(doc, lexicons, profile.content_scores)
    return build_problem(doc, index, profile, budget)


def summarize(
    request: SummaryRequest,
    lexicons: Lexicons,
    node_budget: int = 1_000_000,
    time_budget: float = 30.0,
) -> tuple[Summary, list[tuple[str, int, int]]]:
    """Produce a summary plus the quota-relaxation report (empty if none)."""
    doc = request.doc
    if doc.n == 0:
        raise EmptyDocumentError(f"document {doc.doc_id!r} has no sentences")
    profile = resolve_profile(request.profile)
    budget = (
        request.target_length
        if request.target_length is not None
        else target_length(list(request.references))
    )

    problem = prepare_problem(doc, profile, budget, lexicons)

    relaxation: list[tuple[str, int, int]] = []
    if quota_min_length(problem) > budget:
        weights = {role.value: profile.segment_weights.get(role, 0.0) for role in RhetoricalRole}
        new_quotas, relaxation = relax_quotas(
            problem.quotas, problem.lengths, budget, weights
        )
        problem = replace(problem, quotas=new_quotas)

    solution = solve_exact(problem, node_budget=node_budget, time_budget=time_budget)
    if solution.status is SolveStatus.INFEASIBLE:
        raise SolverInvariantError("relaxed program reported infeasible")
    violations = verify_solution(problem, solution)
    if violations:
        raise SolverInvariantError(f"solver output failed verification: {violations}")

    chosen_positions = sorted(i for i, v in solution.x.items() if v)
    selected = tuple(doc.sentences[i].id for i in chosen_positions)
    word_count = sum(doc.sentences[i].word_count for i in chosen_positions)
    counts = {role: 0 for role in RhetoricalRole}
    for i in chosen_positions:
        counts[doc.sentences[i].role] += 1

    if relaxation:
        status = SummaryStatus.RELAXED_QUOTAS
    elif solution.status is SolveStatus.FEASIBLE_TIMEOUT:
        status = SummaryStatus.FEASIBLE_TIMEOUT
    else:
        status = SummaryStatus.OPTIMAL

    summary = Summary(
        doc_id=doc.doc_id,
        selected=selected,
        word_count=word_count,
        per_segment_counts=counts,
        objective_value=solution.objective,
        solver_status=status,
    )
    return summary, relaxation


def summary_record(
    summary: Summary, doc: LabeledDocument, relaxation: list[tuple[str, int, int]]
) -> dict:
    """JSON-ready record with the selected sentences in document order."""
    by_id = {s.id: s for s in doc.sentences}
    return {
        "doc_id": summary.doc_id,
        "sentences": [
            {
                "sent_id": sid,
                "position": by_id[sid].position,
                "role": by_id[sid].role.value,
                "text": by_id[sid].text,
            }
            for sid in summary.selected
        ],
        "word_count": summary.word_count,
        "objective": summary.objective_value,
        "solver_status": summary.solver_status.value,
        "per_segment_counts": {
            role.value: count for role, count in summary.per_segment_counts.items() if count
        },
        "relaxation": [
            {"segment": label, "original": orig, "final": final}
            for label, orig, final in relaxation
        ],
    }


def summary_text(summary: Summary, doc: LabeledDocument) -> str:
    by_id = {s.id: s for s in doc.sentences}
    return " ".join(by_id[sid].text for sid in summary.selected)
