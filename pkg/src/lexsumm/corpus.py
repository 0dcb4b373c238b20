"""Domain types for rhetorically labeled case documents and their on-disk formats.

A corpus is a JSON-lines file with one object per sentence:

    {"doc_id": "...", "sent_id": 0, "text": "...", "role": "fact"}

Sentences of one document are contiguous. Reference summaries use the same
format with an optional ``role`` and an optional ``ref_id`` distinguishing
multiple references for the same document. Lexicons are UTF-8 text files with
one entry per line; lines starting with ``#`` are comments.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(r"[A-Za-z0-9]+")

_DATA_DIR = Path(__file__).parent / "data"


class CorpusError(ValueError):
    """Base class for malformed corpus input."""


class UnknownRoleError(CorpusError):
    def __init__(self, label: str, line_no: int | None = None):
        where = f" at line {line_no}" if line_no is not None else ""
        super().__init__(f"unknown rhetorical role label: {label!r}{where}")
        self.label = label
        self.line_no = line_no


class EmptySentenceError(CorpusError):
    def __init__(self, index: int, doc_id: str = "", line_no: int | None = None):
        where = f" in document {doc_id!r}" if doc_id else ""
        at = f" (line {line_no})" if line_no is not None else ""
        super().__init__(f"sentence record {index}{where} has no tokens{at}")
        self.index = index


class MalformedRecordError(CorpusError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no


class FileUnreadableError(CorpusError):
    def __init__(self, path, reason: str = ""):
        super().__init__(f"cannot read {path}: {reason}")
        self.path = path


class NoReferencesError(CorpusError):
    """An operation requiring reference summaries received none."""


class EmptyDocumentError(CorpusError):
    """A document with zero sentences cannot be summarized."""


def tokenize(text: str) -> list[str]:
    """Lowercased ASCII-alphanumeric tokens, split on any other character.

    Every word count in the package (sentence lengths, budgets, target
    lengths, ROUGE streams) is defined in terms of this tokenizer.
    """
    return [t.lower() for t in _TOKEN_RE.findall(text)]


class RhetoricalRole(Enum):
    """The eight rhetorical roles a case-document sentence can carry.

    The set is closed; any other label is a parse error. Declaration order
    doubles as the deterministic tie-break order wherever roles tie.
    """

    FACT = "fact"
    ISSUE = "issue"
    RULING_BY_LOWER_COURT = "ruling_by_lower_court"
    PRECEDENT = "precedent"
    STATUTE = "statute"
    ARGUMENT = "argument"
    RATIO = "ratio"
    FINAL_JUDGEMENT = "final_judgement"

    @classmethod
    def from_label(cls, label: str) -> "RhetoricalRole":
        """Parse a case-insensitive canonical label such as ``final_judgement``."""
        try:
            return cls(label.strip().lower())
        except ValueError:
            raise UnknownRoleError(label) from None


ROLE_ORDER: dict[RhetoricalRole, int] = {r: k for k, r in enumerate(RhetoricalRole)}


@dataclass(frozen=True)
class Sentence:
    """One sentence of a labeled document.

    ``position`` is the 1-based index in original document order and
    ``word_count`` the token count of ``text`` under :func:`tokenize`.
    """

    id: int
    text: str
    role: RhetoricalRole
    position: int
    word_count: int


@dataclass(frozen=True)
class LabeledDocument:
    doc_id: str
    sentences: tuple[Sentence, ...]

    @property
    def n(self) -> int:
        return len(self.sentences)

    def segment(self, role: RhetoricalRole) -> tuple[Sentence, ...]:
        return tuple(s for s in self.sentences if s.role is role)

    def segments(self) -> dict[RhetoricalRole, tuple[Sentence, ...]]:
        """Sentences grouped by role; the groups partition the document."""
        out: dict[RhetoricalRole, list[Sentence]] = {r: [] for r in RhetoricalRole}
        for s in self.sentences:
            out[s.role].append(s)
        return {r: tuple(v) for r, v in out.items()}

    def validate(self) -> None:
        positions = [s.position for s in self.sentences]
        if positions != list(range(1, self.n + 1)):
            raise CorpusError(f"document {self.doc_id!r}: positions are not 1..n in order")
        ids = [s.id for s in self.sentences]
        if len(set(ids)) != len(ids):
            raise CorpusError(f"document {self.doc_id!r}: duplicate sentence ids")
        for s in self.sentences:
            if s.word_count != len(tokenize(s.text)) or s.word_count < 1:
                raise CorpusError(
                    f"document {self.doc_id!r}: sentence {s.id} word_count inconsistent"
                )


class SummaryStatus(Enum):
    OPTIMAL = "optimal"
    FEASIBLE_TIMEOUT = "feasible_timeout"
    RELAXED_QUOTAS = "relaxed_quotas"


@dataclass(frozen=True)
class Summary:
    """An extractive summary: selected sentence ids in original order."""

    doc_id: str
    selected: tuple[int, ...]
    word_count: int
    per_segment_counts: Mapping[RhetoricalRole, int]
    objective_value: float
    solver_status: SummaryStatus


@dataclass(frozen=True)
class RefSentence:
    text: str
    role: RhetoricalRole | None = None


@dataclass(frozen=True)
class ReferenceSummary:
    doc_id: str
    ref_id: str
    sentences: tuple[RefSentence, ...]

    def text(self) -> str:
        return " ".join(s.text for s in self.sentences)

    def word_count(self) -> int:
        return sum(len(tokenize(s.text)) for s in self.sentences)


@dataclass(frozen=True)
class Lexicons:
    """Keyword, statute-name and stopword inventories, lowercased and deduplicated."""

    legal_keywords: frozenset[str]
    statute_names: tuple[str, ...]
    stopwords: frozenset[str]


# ---------------------------------------------------------------------------
# Parsing


def _iter_records(lines: Iterable[str]):
    for line_no, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedRecordError(line_no, f"invalid JSON ({exc.msg})") from None
        if not isinstance(obj, dict):
            raise MalformedRecordError(line_no, "record is not a JSON object")
        yield line_no, obj


def _build_document(doc_id: str, records: list[dict], lines: list[int]) -> LabeledDocument:
    sentences = []
    seen_ids: set[int] = set()
    for k, rec in enumerate(records):
        line_no = lines[k]
        text = rec.get("text")
        role_label = rec.get("role")
        if not isinstance(text, str) or role_label is None:
            raise MalformedRecordError(line_no, "missing 'text' or 'role'")
        try:
            role = RhetoricalRole.from_label(str(role_label))
        except UnknownRoleError as exc:
            raise UnknownRoleError(exc.label, line_no) from None
        tokens = tokenize(text)
        if not tokens:
            raise EmptySentenceError(k, doc_id, line_no)
        sent_id = rec.get("sent_id", k)
        if not isinstance(sent_id, int) or sent_id < 0:
            raise MalformedRecordError(line_no, f"bad sent_id {sent_id!r}")
        if sent_id in seen_ids:
            raise MalformedRecordError(line_no, f"duplicate sent_id {sent_id}")
        seen_ids.add(sent_id)
        sentences.append(
            Sentence(id=sent_id, text=text, role=role, position=k + 1, word_count=len(tokens))
        )
    return LabeledDocument(doc_id=doc_id, sentences=tuple(sentences))


def parse_corpus(lines: Iterable[str]) -> list[LabeledDocument]:
    """Parse a JSON-lines corpus into documents.

    Accepts per-sentence records (contiguous per document) and whole-document
    records of the form ``{"doc_id": ..., "sentences": [{...}, ...]}``.
    """
    docs: list[LabeledDocument] = []
    finished: set[str] = set()
    current_id: str | None = None
    pending: list[dict] = []
    pending_lines: list[int] = []

    def flush():
        nonlocal current_id, pending, pending_lines
        if current_id is not None:
            docs.append(_build_document(current_id, pending, pending_lines))
            finished.add(current_id)
            current_id, pending, pending_lines = None, [], []

    for line_no, rec in _iter_records(lines):
        doc_id = rec.get("doc_id")
        if not isinstance(doc_id, str) or not doc_id:
            raise MalformedRecordError(line_no, "missing 'doc_id'")
        if "sentences" in rec:
            flush()
            if doc_id in finished:
                raise MalformedRecordError(line_no, f"document {doc_id!r} appears twice")
            if not isinstance(rec["sentences"], list):
                raise MalformedRecordError(line_no, "'sentences' is not a list")
            docs.append(
                _build_document(doc_id, rec["sentences"], [line_no] * len(rec["sentences"]))
            )
            finished.add(doc_id)
            continue
        if doc_id != current_id:
            flush()
            if doc_id in finished:
                raise MalformedRecordError(
                    line_no, f"document {doc_id!r} is not contiguous in the stream"
                )
            current_id = doc_id
        pending.append(rec)
        pending_lines.append(line_no)
    flush()
    return docs


def parse_document(lines: Iterable[str]) -> LabeledDocument:
    """Parse a stream holding exactly one document."""
    docs = parse_corpus(lines)
    if len(docs) != 1:
        raise CorpusError(f"expected exactly one document, found {len(docs)}")
    return docs[0]


def parse_references(lines: Iterable[str]) -> dict[str, list[ReferenceSummary]]:
    """Parse reference summaries, grouped by (doc_id, ref_id) in appearance order."""
    order: list[tuple[str, str]] = []
    groups: dict[tuple[str, str], list[RefSentence]] = {}
    for line_no, rec in _iter_records(lines):
        doc_id = rec.get("doc_id")
        text = rec.get("text")
        if not isinstance(doc_id, str) or not isinstance(text, str):
            raise MalformedRecordError(line_no, "missing 'doc_id' or 'text'")
        if not tokenize(text):
            raise EmptySentenceError(0, doc_id, line_no)
        role_label = rec.get("role")
        role = RhetoricalRole.from_label(str(role_label)) if role_label is not None else None
        key = (doc_id, str(rec.get("ref_id", "ref0")))
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(RefSentence(text=text, role=role))
    out: dict[str, list[ReferenceSummary]] = {}
    for doc_id, ref_id in order:
        out.setdefault(doc_id, []).append(
            ReferenceSummary(doc_id=doc_id, ref_id=ref_id, sentences=tuple(groups[(doc_id, ref_id)]))
        )
    return out


def load_corpus(path) -> list[LabeledDocument]:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_corpus(fh)
    except OSError as exc:
        raise FileUnreadableError(path, str(exc)) from None


def load_references(path) -> dict[str, list[ReferenceSummary]]:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_references(fh)
    except OSError as exc:
        raise FileUnreadableError(path, str(exc)) from None


def document_records(doc: LabeledDocument) -> list[dict]:
    """Per-sentence records that parse back to a structurally equal document."""
    return [
        {"doc_id": doc.doc_id, "sent_id": s.id, "text": s.text, "role": s.role.value}
        for s in doc.sentences
    ]


def write_corpus(docs: Iterable[LabeledDocument], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for doc in docs:
            for rec in document_records(doc):
                fh.write(json.dumps(rec, sort_keys=True) + "\n")


def write_references(references: Mapping[str, list[ReferenceSummary]], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for doc_id, refs in references.items():
            for ref in refs:
                for s in ref.sentences:
                    rec = {"doc_id": doc_id, "ref_id": ref.ref_id, "text": s.text}
                    if s.role is not None:
                        rec["role"] = s.role.value
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# Lexicons


def _read_entries(path) -> list[str]:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise FileUnreadableError(path, str(exc)) from None
    entries = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        entries.append(line)
    return entries


def load_lexicons(keyword_path, statute_path, stopword_path) -> Lexicons:
    """Load keyword/statute/stopword files.

    Keyword and statute entries are normalized to lowercase token phrases;
    stopword lines contribute their individual tokens.
    """
    keywords: dict[str, None] = {}
    for entry in _read_entries(keyword_path):
        phrase = " ".join(tokenize(entry))
        if phrase:
            keywords[phrase] = None
    statutes: dict[str, None] = {}
    for entry in _read_entries(statute_path):
        phrase = " ".join(tokenize(entry))
        if phrase:
            statutes[phrase] = None
    stopwords: set[str] = set()
    for entry in _read_entries(stopword_path):
        stopwords.update(tokenize(entry))

    for name, count in (
        ("legal keywords", len(keywords)),
        ("statute names", len(statutes)),
        ("stopwords", len(stopwords)),
    ):
        if count == 0:
            logger.warning("lexicon file for %s is empty", name)
        else:
            logger.info("loaded %d %s", count, name)
    return Lexicons(
        legal_keywords=frozenset(keywords),
        statute_names=tuple(statutes),
        stopwords=frozenset(stopwords),
    )


def default_lexicons() -> Lexicons:
    """The bundled lexicons (keywords, Indian act names, English stopwords)."""
    return load_lexicons(
        _DATA_DIR / "legal_keywords.txt",
        _DATA_DIR / "statute_names.txt",
        _DATA_DIR / "stopwords.txt",
    )
