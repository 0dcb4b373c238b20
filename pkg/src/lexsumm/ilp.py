"""The 0/1 selection program over sentences and content words, solved exactly.

Variables: one binary per sentence (include it or not) and one per content
word (covered or not). The objective rewards informative sentences and
covered content words; constraints enforce the word budget, couple sentence
and word variables in both directions, and impose per-segment minimums.

``solve_exact`` runs branch-and-bound on the sentence variables with an LP
relaxation bound from :mod:`lexsumm.simplex`; word variables are never
branched on because an integral sentence assignment forces them. A greedy
pass provides the initial incumbent and doubles as the anytime fallback.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .content import ContentIndex
from .corpus import LabeledDocument
from .guidelines import GuidelineProfile, informativeness, min_sentences
from .simplex import solve_lp

OBJ_TOL = 1e-9
_INT_TOL = 1e-7


class SolveStatus(Enum):
    OPTIMAL = "optimal"
    FEASIBLE_TIMEOUT = "feasible_timeout"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class Quota:
    """At least ``need`` of the ``members`` sentence indices must be selected."""

    label: str
    members: tuple[int, ...]
    need: int


@dataclass(frozen=True)
class IlpProblem:
    obj_x: tuple[float, ...]
    obj_y: tuple[float, ...]
    lengths: tuple[int, ...]
    budget: int
    couplings: tuple[tuple[int, int], ...]  # (i, j): selecting sentence i forces word j
    covers: tuple[tuple[int, ...], ...]  # covers[j]: sentences containing word j
    quotas: tuple[Quota, ...]

    @property
    def n(self) -> int:
        return len(self.obj_x)

    @property
    def m(self) -> int:
        return len(self.obj_y)

    def validate(self) -> None:
        if self.budget < 0:
            raise ValueError("budget must be >= 0")
        if any(v < 0 for v in self.obj_x) or any(v < 0 for v in self.obj_y):
            raise ValueError("objective coefficients must be >= 0")
        if any(l < 1 for l in self.lengths):
            raise ValueError("sentence lengths must be >= 1")
        for j, cover in enumerate(self.covers):
            if not cover:
                raise ValueError(f"content word {j} has an empty cover set")
        seen: set[int] = set()
        for q in self.quotas:
            if q.need > len(q.members):
                raise ValueError(f"quota {q.label}: need exceeds segment size")
            if seen & set(q.members):
                raise ValueError("quota member sets must be disjoint")
            seen.update(q.members)


@dataclass
class IlpSolution:
    x: dict[int, int]
    y: dict[int, int]
    objective: float
    status: SolveStatus
    nodes_explored: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class Violation:
    kind: str  # "budget" | "coupling" | "cover" | "quota" | "objective"
    detail: str


def build_problem(
    doc: LabeledDocument, index: ContentIndex, profile: GuidelineProfile, budget: int
) -> IlpProblem:
    """Assemble the selection program for one document at word budget ``budget``."""
    if budget < 0:
        raise ValueError("budget must be >= 0")
    sentences = doc.sentences
    n = len(sentences)
    pos_of = {s.id: k for k, s in enumerate(sentences)}

    obj_x = tuple(
        informativeness(
            s, index.statute_flag[s.id], index.precedent_flag[s.id], profile, doc_length=n
        )
        for s in sentences
    )
    obj_y = tuple(float(w.score) for w in index.words)
    lengths = tuple(s.word_count for s in sentences)

    couplings = []
    for k, s in enumerate(sentences):
        for j in sorted(index.per_sentence[s.id]):
            couplings.append((k, j))
    covers = tuple(
        tuple(sorted(pos_of[sid] for sid in index.per_word[j])) for j in range(index.m)
    )

    quotas = []
    segments = doc.segments()
    for role, seg in segments.items():
        need = min_sentences(role, len(seg), profile)
        if need > 0:
            members = tuple(pos_of[s.id] for s in seg)
            quotas.append(Quota(label=role.value, members=members, need=need))

    problem = IlpProblem(
        obj_x=obj_x,
        obj_y=obj_y,
        lengths=lengths,
        budget=budget,
        couplings=tuple(couplings),
        covers=covers,
        quotas=tuple(quotas),
    )
    problem.validate()
    return problem


def quota_min_length(problem: IlpProblem) -> int:
    """Smallest total word length of any selection meeting every quota."""
    total = 0
    for q in problem.quotas:
        shortest = sorted(problem.lengths[i] for i in q.members)
        total += sum(shortest[: q.need])
    return total


def sentence_words(problem: IlpProblem) -> dict[int, list[int]]:
    """Word indices per sentence index, derived from the cover sets."""
    out: dict[int, list[int]] = {i: [] for i in range(problem.n)}
    for j, cover in enumerate(problem.covers):
        for i in cover:
            out[i].append(j)
    return out


def covered_words(problem: IlpProblem, chosen: set[int]) -> set[int]:
    return {j for j, cover in enumerate(problem.covers) if chosen.intersection(cover)}


def assignment_objective(problem: IlpProblem, chosen: set[int]) -> float:
    total = sum(problem.obj_x[i] for i in sorted(chosen))
    total += sum(problem.obj_y[j] for j in sorted(covered_words(problem, chosen)))
    return total


def _selection_feasible(problem: IlpProblem, chosen: set[int]) -> bool:
    if sum(problem.lengths[i] for i in chosen) > problem.budget:
        return False
    return all(len(chosen.intersection(q.members)) >= q.need for q in problem.quotas)


def _solution_from_selection(problem, chosen, status, nodes, wall) -> IlpSolution:
    covered = covered_words(problem, chosen)
    return IlpSolution(
        x={i: int(i in chosen) for i in range(problem.n)},
        y={j: int(j in covered) for j in range(problem.m)},
        objective=assignment_objective(problem, chosen),
        status=status,
        nodes_explored=nodes,
        wall_time=wall,
    )


def _lp_arrays(problem: IlpProblem):
    """Relaxation used for bounding.

    The coupling rows are deliberately omitted: with nonnegative word scores
    the LP maximum puts every word variable at min(1, sum of its covering
    sentence variables), which satisfies the couplings anyway, so dropping
    them leaves the bound value unchanged and the tableau much smaller.
    """
    n, m = problem.n, problem.m
    nv = n + m
    rows = 1 + m + len(problem.quotas)
    A = np.zeros((rows, nv))
    b = np.zeros(rows)
    A[0, :n] = problem.lengths
    b[0] = problem.budget
    r = 1
    for j, cover in enumerate(problem.covers):  # a set word needs a selected cover
        A[r, n + j] = 1.0
        for i in cover:
            A[r, i] = -1.0
        r += 1
    for q in problem.quotas:  # segment minimum, flipped into <= form
        for i in q.members:
            A[r, i] = -1.0
        b[r] = -float(q.need)
        r += 1
    c = np.concatenate([np.asarray(problem.obj_x), np.asarray(problem.obj_y)])
    return A, b, c


def _knapsack_bound(problem: IlpProblem, lo_x, hi_x) -> float:
    """Cheap valid upper bound: fixed gains plus a fractional knapsack over
    the unfixed sentences plus every content-word score."""
    fixed_on = [i for i in range(problem.n) if lo_x[i] > 0.5]
    used = sum(problem.lengths[i] for i in fixed_on)
    remaining = problem.budget - used
    if remaining < 0:
        return float("-inf")
    bound = sum(problem.obj_x[i] for i in fixed_on) + sum(problem.obj_y)
    items = sorted(
        (
            (problem.obj_x[i] / problem.lengths[i], i)
            for i in range(problem.n)
            if hi_x[i] > 0.5 > lo_x[i] and problem.obj_x[i] > 0
        ),
        reverse=True,
    )
    for density, i in items:
        if remaining <= 0:
            break
        take = min(problem.lengths[i], remaining)
        bound += density * take
        remaining -= take
    return bound


def solve_greedy(problem: IlpProblem) -> IlpSolution:
    """Density-greedy feasible solution: quota slots first, then free picks.

    Quota slots are filled by marginal gain per word among the candidates that
    still leave room for every unfilled slot's shortest sentences, so the
    result is feasible whenever the quotas are satisfiable within the budget.
    Free picks take positive-gain sentences by density until nothing fits.
    """
    start = time.monotonic()
    n = problem.n
    if quota_min_length(problem) > problem.budget:
        return IlpSolution({}, {}, 0.0, SolveStatus.INFEASIBLE)
    words_of = sentence_words(problem)
    chosen: set[int] = set()
    covered: set[int] = set()
    used = 0

    def gain(i: int) -> float:
        return problem.obj_x[i] + sum(
            problem.obj_y[j] for j in words_of[i] if j not in covered
        )

    def take(i: int) -> None:
        nonlocal used
        chosen.add(i)
        covered.update(words_of[i])
        used += problem.lengths[i]

    remaining = {q: q.need for q in problem.quotas}

    def completion_length(extra: int | None) -> int:
        total = 0
        for q, need in remaining.items():
            if extra is not None and extra in q.members:
                need -= 1
            avail = sorted(
                problem.lengths[i] for i in q.members if i not in chosen and i != extra
            )
            total += sum(avail[:need])
        return total

    for q in problem.quotas:
        while remaining[q] > 0:
            best = None
            for i in q.members:
                if i in chosen:
                    continue
                if used + problem.lengths[i] + completion_length(i) > problem.budget:
                    continue
                d = gain(i) / problem.lengths[i]
                if best is None or d > best[0]:
                    best = (d, i)
            assert best is not None, "quota completion must stay feasible"
            take(best[1])
            remaining[q] -= 1

    while True:
        best = None
        for i in range(n):
            if i in chosen or used + problem.lengths[i] > problem.budget:
                continue
            g = gain(i)
            if g <= 1e-12:
                continue
            d = g / problem.lengths[i]
            if best is None or d > best[0]:
                best = (d, i)
        if best is None:
            break
        take(best[1])

    return _solution_from_selection(
        problem, chosen, SolveStatus.FEASIBLE_TIMEOUT, 0, time.monotonic() - start
    )


def solve_exact(
    problem: IlpProblem, node_budget: int = 1_000_000, time_budget: float = 30.0
) -> IlpSolution:
    """Branch-and-bound with LP relaxation bounds; exact within budgets.

    Branches on the most fractional sentence variable (ties to the lowest
    index), expanding the better-bound child first. Returns the incumbent
    with FEASIBLE_TIMEOUT when a budget runs out, INFEASIBLE when the quotas
    cannot fit the word budget.
    """
    start = time.monotonic()
    n, m = problem.n, problem.m
    if n == 0:
        return IlpSolution({}, {}, 0.0, SolveStatus.OPTIMAL, 0, time.monotonic() - start)
    if quota_min_length(problem) > problem.budget:
        return IlpSolution({}, {}, 0.0, SolveStatus.INFEASIBLE, 0, time.monotonic() - start)

    incumbent = solve_greedy(problem)
    best_chosen = {i for i, v in incumbent.x.items() if v}
    best_obj = incumbent.objective

    A, b, c = _lp_arrays(problem)
    base_lo = np.zeros(n + m)
    base_hi = np.ones(n + m)

    stack: list[tuple[float, tuple[tuple[int, int], ...]]] = [(float("inf"), ())]
    nodes = 0
    out_of_budget = False
    while stack:
        if nodes >= node_budget or time.monotonic() - start > time_budget:
            out_of_budget = True
            break
        parent_bound, fixes = stack.pop()
        if parent_bound <= best_obj + OBJ_TOL:
            continue
        lo = base_lo.copy()
        hi = base_hi.copy()
        for i, v in fixes:
            lo[i] = hi[i] = float(v)
        if _knapsack_bound(problem, lo, hi) <= best_obj + OBJ_TOL:
            continue
        nodes += 1
        res = solve_lp(c, A, b, lo, hi)
        if res.status != "optimal" or res.objective <= best_obj + OBJ_TOL:
            continue
        xv = res.x[:n]
        frac = np.minimum(xv, 1.0 - xv)
        branch_var = int(np.argmax(frac))
        if frac[branch_var] <= _INT_TOL:
            chosen = {i for i in range(n) if xv[i] > 0.5}
            if _selection_feasible(problem, chosen):
                obj = assignment_objective(problem, chosen)
                if obj > best_obj + OBJ_TOL:
                    best_obj, best_chosen = obj, chosen
                continue
            fixed = {i for i, _ in fixes}
            unfixed = [i for i in range(n) if i not in fixed]
            if not unfixed:
                continue
            branch_var = unfixed[int(np.argmax(frac[unfixed]))]
        # Reduced-cost fixing: a sentence variable at a bound whose reduced
        # cost certifies that flipping it cannot beat the incumbent stays at
        # that bound throughout the subtree (dual bound with safety margin).
        implied = []
        rc = res.reduced_costs
        if rc is not None:
            cutoff = best_obj + OBJ_TOL
            for i in range(n):
                if hi[i] - lo[i] < 0.5 or i == branch_var:
                    continue
                if xv[i] <= _INT_TOL and res.objective + rc[i] + 1e-7 <= cutoff:
                    implied.append((i, 0))
                elif xv[i] >= 1.0 - _INT_TOL and res.objective - rc[i] + 1e-7 <= cutoff:
                    implied.append((i, 1))
        child = fixes + tuple(implied)
        stack.append((res.objective, child + ((branch_var, 0),)))
        stack.append((res.objective, child + ((branch_var, 1),)))

    status = SolveStatus.FEASIBLE_TIMEOUT if out_of_budget else SolveStatus.OPTIMAL
    return _solution_from_selection(
        problem, best_chosen, status, nodes, time.monotonic() - start
    )


def verify_solution(problem: IlpProblem, solution: IlpSolution) -> list[Violation]:
    """Independently re-check budget, couplings, covers, quotas and the
    objective arithmetic. Empty list means fully consistent."""
    violations: list[Violation] = []
    x = solution.x
    y = solution.y
    total_len = sum(problem.lengths[i] for i in range(problem.n) if x.get(i))
    if total_len > problem.budget:
        violations.append(
            Violation("budget", f"selected length {total_len} exceeds budget {problem.budget}")
        )
    for i, j in problem.couplings:
        if x.get(i) and not y.get(j):
            violations.append(
                Violation("coupling", f"sentence {i} selected but word {j} unset")
            )
    for j, cover in enumerate(problem.covers):
        if y.get(j) and not any(x.get(i) for i in cover):
            violations.append(
                Violation("cover", f"word {j} set with no covering sentence selected")
            )
    for q in problem.quotas:
        got = sum(1 for i in q.members if x.get(i))
        if got < q.need:
            violations.append(
                Violation("quota", f"segment {q.label}: {got} selected, {q.need} required")
            )
    recomputed = sum(problem.obj_x[i] for i in range(problem.n) if x.get(i)) + sum(
        problem.obj_y[j] for j in range(problem.m) if y.get(j)
    )
    if abs(recomputed - solution.objective) > OBJ_TOL:
        violations.append(
            Violation(
                "objective",
                f"stated {solution.objective!r} differs from recomputed {recomputed!r}",
            )
        )
    return violations


def dump_lp(problem: IlpProblem, name: str = "problem") -> str:
    """Render the program in plain-text LP format for external cross-checks."""
    def xvar(i):
        return f"x{i}"

    def yvar(j):
        return f"y{j}"

    lines = [f"\\ {name}", "Maximize", " obj:"]
    terms = [f"{problem.obj_x[i]:g} {xvar(i)}" for i in range(problem.n)]
    terms += [f"{problem.obj_y[j]:g} {yvar(j)}" for j in range(problem.m)]
    lines[-1] += " " + " + ".join(terms) if terms else " 0"
    lines.append("Subject To")
    budget_terms = " + ".join(f"{problem.lengths[i]} {xvar(i)}" for i in range(problem.n))
    lines.append(f" budget: {budget_terms or '0 x0'} <= {problem.budget}")
    for k, (i, j) in enumerate(problem.couplings):
        lines.append(f" couple{k}: {xvar(i)} - {yvar(j)} <= 0")
    for j, cover in enumerate(problem.covers):
        covers_terms = " - ".join(xvar(i) for i in cover)
        lines.append(f" cover{j}: {yvar(j)} - {covers_terms} <= 0")
    for k, q in enumerate(problem.quotas):
        member_terms = " + ".join(xvar(i) for i in q.members)
        lines.append(f" quota_{q.label}: {member_terms} >= {q.need}")
    lines.append("Binary")
    names = [xvar(i) for i in range(problem.n)] + [yvar(j) for j in range(problem.m)]
    lines.append(" " + " ".join(names))
    lines.append("End")
    return "\n".join(lines) + "\n"
