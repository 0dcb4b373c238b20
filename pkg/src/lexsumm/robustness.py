"""Label-noise harness: flip rhetorical roles, re-summarize, compare paired scores.

Noise replaces an annotated corpus' labels with algorithmically imperfect
ones at a configurable corruption rate. Each document draws its random stream
from (seed, doc_id), so results are reproducible and independent of the order
or parallelism of processing.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

from .corpus import (
    LabeledDocument,
    Lexicons,
    NoReferencesError,
    ReferenceSummary,
    RhetoricalRole,
)
from .evaluation import evaluate
from .guidelines import GuidelineProfile
from .summarizer import SummaryRequest, summarize, summary_text

UNIFORM_FLIP = "uniform_flip"


@dataclass(frozen=True)
class NoiseSpec:
    rate: float
    seed: int
    policy: str = UNIFORM_FLIP

    def __post_init__(self):
        if not 0.0 <= self.rate <= 1.0:
            raise ValueError("rate must be in [0, 1]")
        if self.policy != UNIFORM_FLIP:
            raise ValueError(f"unknown noise policy {self.policy!r}")


def _doc_rng(seed: int, doc_id: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{doc_id}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def perturb_labels(doc: LabeledDocument, spec: NoiseSpec) -> LabeledDocument:
    """Independently replace each role with one of the other seven at ``rate``."""
    rng = _doc_rng(spec.seed, doc.doc_id)
    sentences = []
    for s in doc.sentences:
        if rng.random() < spec.rate:
            others = [r for r in RhetoricalRole if r is not s.role]
            s = replace(s, role=rng.choice(others))
        sentences.append(s)
    return LabeledDocument(doc_id=doc.doc_id, sentences=tuple(sentences))


@dataclass(frozen=True)
class RobustnessRow:
    doc_id: str
    label_accuracy: float
    gold: Mapping[str, float]  # metric -> score, e.g. "rougeL_F"
    noisy: Mapping[str, float]

    def delta(self, metric: str) -> float:
        return self.noisy[metric] - self.gold[metric]


@dataclass(frozen=True)
class RobustnessReport:
    spec: NoiseSpec
    rows: tuple[RobustnessRow, ...]

    def mean(self, metric: str, which: str = "gold") -> float:
        values = [getattr(r, which)[metric] for r in self.rows]
        return sum(values) / len(values) if values else 0.0


_METRICS = ("rouge2_R", "rouge2_F", "rougeL_R", "rougeL_F")


def _flatten(scores) -> dict[str, float]:
    return {
        "rouge2_R": scores["rouge2"].recall,
        "rouge2_F": scores["rouge2"].f,
        "rougeL_R": scores["rougeL"].recall,
        "rougeL_F": scores["rougeL"].f,
    }


def robustness_report(
    corpus: Sequence[LabeledDocument],
    references: Mapping[str, Sequence[ReferenceSummary]],
    profile: str | GuidelineProfile,
    spec: NoiseSpec,
    lexicons: Lexicons,
    node_budget: int = 1_000_000,
    time_budget: float = 30.0,
) -> RobustnessReport:
    """Summarize each document with gold and with perturbed labels, score both."""
    rows = []
    for doc in corpus:
        refs = list(references.get(doc.doc_id, []))
        if not refs:
            raise NoReferencesError(f"no references for document {doc.doc_id!r}")
        noisy_doc = perturb_labels(doc, spec)
        flips = sum(
            1 for a, b in zip(doc.sentences, noisy_doc.sentences) if a.role is not b.role
        )
        ref_texts = [r.text() for r in refs]
        scores = {}
        for label, d in (("gold", doc), ("noisy", noisy_doc)):
            summary, _ = summarize(
                SummaryRequest(doc=d, profile=profile, references=refs),
                lexicons,
                node_budget=node_budget,
                time_budget=time_budget,
            )
            scores[label] = _flatten(
                evaluate(summary_text(summary, d), ref_texts, lexicons.stopwords)
            )
        rows.append(
            RobustnessRow(
                doc_id=doc.doc_id,
                label_accuracy=1.0 - flips / doc.n,
                gold=scores["gold"],
                noisy=scores["noisy"],
            )
        )
    return RobustnessReport(spec=spec, rows=tuple(rows))


def report_record(report: RobustnessReport) -> dict:
    return {
        "noise_rate": report.spec.rate,
        "seed": report.spec.seed,
        "policy": report.spec.policy,
        "rows": [
            {
                "doc_id": r.doc_id,
                "label_accuracy": r.label_accuracy,
                "gold": dict(r.gold),
                "noisy": dict(r.noisy),
                "delta": {m: r.delta(m) for m in _METRICS},
            }
            for r in report.rows
        ],
        "mean": {
            "label_accuracy": (
                sum(r.label_accuracy for r in report.rows) / len(report.rows)
                if report.rows
                else 0.0
            ),
            "gold": {m: report.mean(m, "gold") for m in _METRICS},
            "noisy": {m: report.mean(m, "noisy") for m in _METRICS},
            "delta": {
                m: report.mean(m, "noisy") - report.mean(m, "gold") for m in _METRICS
            },
        },
    }


def report_table(report: RobustnessReport) -> str:
    """Aligned text table: doc_id, label_accuracy, rougeL_F gold/noisy, delta."""
    header = ("doc_id", "label_accuracy", "rougeL_F_gold", "rougeL_F_noisy", "delta")
    body = [
        (
            r.doc_id,
            f"{r.label_accuracy:.4f}",
            f"{r.gold['rougeL_F']:.4f}",
            f"{r.noisy['rougeL_F']:.4f}",
            f"{r.delta('rougeL_F'):+.4f}",
        )
        for r in report.rows
    ]
    if report.rows:
        k = len(report.rows)
        body.append(
            (
                "MEAN",
                f"{sum(r.label_accuracy for r in report.rows) / k:.4f}",
                f"{report.mean('rougeL_F', 'gold'):.4f}",
                f"{report.mean('rougeL_F', 'noisy'):.4f}",
                f"{report.mean('rougeL_F', 'noisy') - report.mean('rougeL_F', 'gold'):+.4f}",
            )
        )
    widths = [max(len(row[k]) for row in [header, *body]) for k in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
             for row in [header, *body]]
    return "\n".join(lines) + "\n"
