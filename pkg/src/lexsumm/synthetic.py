"""Seeded generator of small labeled case documents with reference summaries.

Stands in for annotated corpora that cannot be redistributed: the documents
are template text with realistic role structure (facts up front, reasoning
and the final judgement at the end), planted statute citations, precedent
patterns, legal keywords and proper names, so every detector in the pipeline
has something to find. Everything is reproducible from one seed.
"""

from __future__ import annotations

import random

from .corpus import (
    LabeledDocument,
    RefSentence,
    ReferenceSummary,
    RhetoricalRole,
    Sentence,
    tokenize,
)

_GIVEN = ("Ram", "Rajesh", "Sunita", "Arun", "Meena", "Vikram", "Lakshmi", "Mohan")
_FAMILY = ("Kumar", "Sharma", "Devi", "Singh", "Patel", "Rao", "Gupta", "Nair")
_PLACES = ("Delhi", "Patna", "Nagpur", "Mysore", "Kanpur", "Indore", "Surat", "Bhopal")
_STATES = ("State of Bihar", "State of Punjab", "State of Kerala", "Union of India")
_ACTS = (
    "Indian Penal Code",
    "Code of Criminal Procedure",
    "Indian Evidence Act",
    "Dowry Prohibition Act",
    "Hindu Marriage Act",
    "Motor Vehicles Act",
)
_KEYWORDS = (
    "mens rea",
    "habeas corpus",
    "natural justice",
    "burden of proof",
    "res judicata",
    "locus standi",
    "prima facie",
    "reasonable doubt",
)
_FILLER = (
    "the record shows that the matter was considered at length by the court",
    "it was observed that the circumstances of the case require careful scrutiny",
    "the material placed before the court was examined in the course of hearing",
    "the submissions made at the bar were noted in considerable detail",
    "nothing further turns on the remaining material placed on the record",
)


def _name(rng: random.Random) -> str:
    return f"{rng.choice(_GIVEN)} {rng.choice(_FAMILY)}"


def _sentence_text(role: RhetoricalRole, rng: random.Random) -> str:
    filler = rng.choice(_FILLER)
    if role is RhetoricalRole.FACT:
        return (
            f"The appellant {_name(rng)} was tried in {rng.choice(_PLACES)} after "
            f"the incident of {rng.randint(1, 28)} March {rng.randint(1960, 1995)} and {filler}."
        )
    if role is RhetoricalRole.ISSUE:
        return (
            f"The question is whether the conviction under Section {rng.randint(100, 499)} "
            f"of the {rng.choice(_ACTS)} can be sustained."
        )
    if role is RhetoricalRole.RULING_BY_LOWER_COURT:
        return f"The trial court at {rng.choice(_PLACES)} convicted the accused and {filler}."
    if role is RhetoricalRole.PRECEDENT:
        if rng.random() < 0.8:
            return f"In {_name(rng)} vs. {rng.choice(_STATES)} this court held that {filler}."
        return f"The earlier decisions cited at the bar were distinguished and {filler}."
    if role is RhetoricalRole.STATUTE:
        if rng.random() < 0.8:
            return (
                f"Section {rng.randint(2, 499)} of the {rng.choice(_ACTS)} provides "
                f"the governing rule and {filler}."
            )
        return f"The statutory scheme was discussed at the hearing and {filler}."
    if role is RhetoricalRole.ARGUMENT:
        side = rng.choice(("appellant", "respondent"))
        return f"Counsel for the {side} argued that {rng.choice(_KEYWORDS)} was not established."
    if role is RhetoricalRole.RATIO:
        if rng.random() < 0.5:
            return (
                f"Applying Section {rng.randint(2, 499)} of the {rng.choice(_ACTS)} "
                f"we conclude that the {rng.choice(_KEYWORDS)} standard was met."
            )
        return f"It follows that the prosecution case rests on {rng.choice(_KEYWORDS)} and {filler}."
    return f"The appeal is {rng.choice(('allowed', 'dismissed'))} and the order is set aside."


# Typical ordering of segments in a judgment, with (min, max) sentence counts.
_PLAN = (
    (RhetoricalRole.FACT, 2, 5),
    (RhetoricalRole.ISSUE, 1, 2),
    (RhetoricalRole.RULING_BY_LOWER_COURT, 0, 2),
    (RhetoricalRole.ARGUMENT, 1, 3),
    (RhetoricalRole.STATUTE, 1, 3),
    (RhetoricalRole.PRECEDENT, 1, 3),
    (RhetoricalRole.RATIO, 2, 4),
    (RhetoricalRole.FINAL_JUDGEMENT, 1, 2),
)


def synth_document(doc_id: str, rng: random.Random, scale: float = 1.0) -> LabeledDocument:
    """One labeled document; ``scale`` stretches the per-segment counts."""
    sentences = []
    position = 1
    for role, lo, hi in _PLAN:
        count = rng.randint(lo, max(lo, round(hi * scale)))
        for _ in range(count):
            text = _sentence_text(role, rng)
            sentences.append(
                Sentence(
                    id=position - 1,
                    text=text,
                    role=role,
                    position=position,
                    word_count=len(tokenize(text)),
                )
            )
            position += 1
    return LabeledDocument(doc_id=doc_id, sentences=tuple(sentences))


def synth_references(
    doc: LabeledDocument, rng: random.Random, count: int = 2
) -> list[ReferenceSummary]:
    """Extractive references: the short vital segments plus a sampled third of the rest."""
    refs = []
    for k in range(count):
        picked = []
        for s in doc.sentences:
            if s.role in (RhetoricalRole.FINAL_JUDGEMENT, RhetoricalRole.ISSUE):
                picked.append(s)
            elif rng.random() < 0.34:
                picked.append(s)
        if not picked:
            picked = [doc.sentences[0]]
        refs.append(
            ReferenceSummary(
                doc_id=doc.doc_id,
                ref_id=f"ref{k}",
                sentences=tuple(RefSentence(text=s.text, role=s.role) for s in picked),
            )
        )
    return refs


def synth_corpus(
    n_docs: int, seed: int, scale: float = 1.0, ref_count: int = 2
) -> tuple[list[LabeledDocument], dict[str, list[ReferenceSummary]]]:
    """A corpus of ``n_docs`` documents with references, fully determined by ``seed``."""
    docs = []
    references = {}
    for k in range(n_docs):
        doc_id = f"doc{k:03d}"
        rng = random.Random(f"{seed}:{doc_id}")
        doc = synth_document(doc_id, rng, scale=scale)
        docs.append(doc)
        references[doc_id] = synth_references(doc, rng, count=ref_count)
    return docs, references
