"""Statute / precedent / noun-phrase detection and the content-word index.

Content words are scored phrases whose coverage the optimizer rewards. One
surface phrase is one shared variable no matter how many sentences contain
it, which is what makes selecting near-duplicate sentences unrewarding.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .corpus import LabeledDocument, Lexicons, Sentence

_CASED_TOKEN_RE = re.compile(r"[A-Za-z0-9]+")

# "Party 1 vs. Party 2": capitalized runs around a versus separator.
_PRECEDENT_RE = re.compile(
    r"(?:[A-Z][A-Za-z]*\.?\s+)+(?:[vV]\.|[vV][sS]\.?|[vV]ersus|VERSUS)\s+[A-Z][A-Za-z]*"
)

_SECTION_WORDS = ("section", "sec", "article")
_SECTION_LOOKAHEAD = 3  # a number must follow within this many tokens


class ContentKind(Enum):
    STATUTE_MENTION = "statute_mention"
    LEGAL_KEYWORD = "legal_keyword"
    NOUN_PHRASE = "noun_phrase"


DEFAULT_CONTENT_SCORES: dict[ContentKind, int] = {
    ContentKind.STATUTE_MENTION: 5,
    ContentKind.LEGAL_KEYWORD: 3,
    ContentKind.NOUN_PHRASE: 1,
}

# Higher-precedence kinds claim overlapping spans and shared surfaces.
_KIND_PRECEDENCE = {
    ContentKind.STATUTE_MENTION: 0,
    ContentKind.LEGAL_KEYWORD: 1,
    ContentKind.NOUN_PHRASE: 2,
}


@dataclass(frozen=True)
class ContentWord:
    surface: str
    kind: ContentKind
    score: int


@dataclass(frozen=True)
class ContentIndex:
    """Bidirectional sentence/content-word index plus citation flags.

    ``words[j]`` is content word j; ``per_sentence[i]`` the word indices in
    sentence i; ``per_word[j]`` the sentence ids containing word j. The two
    maps mirror each other exactly.
    """

    words: tuple[ContentWord, ...]
    per_sentence: Mapping[int, frozenset[int]]
    per_word: Mapping[int, frozenset[int]]
    statute_flag: Mapping[int, bool]
    precedent_flag: Mapping[int, bool]

    @property
    def m(self) -> int:
        return len(self.words)

    def validate(self) -> None:
        for j, sids in self.per_word.items():
            if not sids:
                raise ValueError(f"content word {j} occurs in no sentence")
            for i in sids:
                if j not in self.per_sentence[i]:
                    raise ValueError(f"index asymmetry at sentence {i}, word {j}")
        for i, js in self.per_sentence.items():
            for j in js:
                if i not in self.per_word[j]:
                    raise ValueError(f"index asymmetry at sentence {i}, word {j}")


def _cased_tokens(text: str) -> list[str]:
    return _CASED_TOKEN_RE.findall(text)


def _is_capitalized(token: str) -> bool:
    return token[0].isalpha() and token[0].isupper()


def _capitalized_runs(tokens: list[str]) -> list[tuple[int, int]]:
    runs = []
    start = None
    for k, tok in enumerate(tokens):
        if _is_capitalized(tok):
            if start is None:
                start = k
        elif start is not None:
            runs.append((start, k))
            start = None
    if start is not None:
        runs.append((start, len(tokens)))
    return runs


def _phrase_spans(lower_tokens: list[str], phrase: str) -> list[tuple[int, int]]:
    ptoks = phrase.split()
    if not ptoks:
        return []
    spans = []
    for s in range(len(lower_tokens) - len(ptoks) + 1):
        if lower_tokens[s : s + len(ptoks)] == ptoks:
            spans.append((s, s + len(ptoks)))
    return spans


def _statute_spans(text: str, statute_names: Iterable[str]) -> list[tuple[int, int, str]]:
    """Token spans matched as statute mentions, with canonical surfaces.

    Rules: (a) a statute-name lexicon entry at token boundaries; (b) a
    section/sec./article word followed by a number within three tokens;
    (c) a capitalized-word run ending in "Act", optional 4-digit year.
    """
    tokens = _cased_tokens(text)
    lower = [t.lower() for t in tokens]
    spans: list[tuple[int, int, str]] = []
    for name in statute_names:
        for s, e in _phrase_spans(lower, name):
            spans.append((s, e, name))
    for idx, tok in enumerate(lower):
        if tok in _SECTION_WORDS:
            for j in range(idx + 1, min(idx + 1 + _SECTION_LOOKAHEAD, len(lower))):
                if lower[j].isdigit():
                    spans.append((idx, j + 1, " ".join(lower[idx : j + 1])))
                    break
    for s, e in _capitalized_runs(tokens):
        for pos in range(s + 1, e):
            if lower[pos] == "act":
                end = pos + 1
                if end < len(lower) and lower[end].isdigit() and len(lower[end]) == 4:
                    end += 1
                spans.append((s, end, " ".join(lower[s:end])))
    return spans


def _keyword_spans(text: str, keywords: Iterable[str]) -> list[tuple[int, int, str]]:
    lower = [t.lower() for t in _cased_tokens(text)]
    spans = []
    for phrase in keywords:
        for s, e in _phrase_spans(lower, phrase):
            spans.append((s, e, phrase))
    return spans


def _overlaps(span: tuple[int, int], others: list[tuple[int, int, str]]) -> bool:
    s, e = span
    return any(s < oe and os_ < e for os_, oe, _ in others)


def detect_statute(sentence: Sentence, lexicons: Lexicons) -> bool:
    """True iff the sentence mentions a statute (lexicon entry or citation pattern)."""
    return bool(_statute_spans(sentence.text, lexicons.statute_names))


def detect_precedent(sentence: Sentence) -> bool:
    """True iff the sentence cites a prior case as <Party> vs. <Party>."""
    return _PRECEDENT_RE.search(sentence.text) is not None


def extract_noun_phrases(sentence: Sentence, lexicons: Lexicons | None = None) -> set[str]:
    """Maximal capitalized-token runs, as lowercased phrases.

    A lone capitalized token at the start of the sentence is ignored, as are
    runs claimed by a higher-precedence statute or keyword mention (statute
    patterns apply even without lexicons).
    """
    tokens = _cased_tokens(sentence.text)
    statute = _statute_spans(sentence.text, lexicons.statute_names if lexicons else ())
    keyword = _keyword_spans(sentence.text, lexicons.legal_keywords) if lexicons else []
    phrases = set()
    for s, e in _capitalized_runs(tokens):
        if s == 0 and e - s == 1:
            continue
        if _overlaps((s, e), statute) or _overlaps((s, e), keyword):
            continue
        phrases.add(" ".join(t.lower() for t in tokens[s:e]))
    return phrases


def build_content_index(
    doc: LabeledDocument,
    lexicons: Lexicons,
    scores: Mapping[ContentKind, int] = DEFAULT_CONTENT_SCORES,
) -> ContentIndex:
    """Index statute mentions, keyword matches and noun phrases across a document.

    Overlapping spans within a sentence are claimed by the higher-precedence
    kind; a surface appearing under several kinds keeps the highest-scoring
    one. Words are ordered by (score descending, surface) for determinism.
    """
    kind_of: dict[str, ContentKind] = {}
    occurrences: dict[str, set[int]] = {}
    statute_flag: dict[int, bool] = {}
    precedent_flag: dict[int, bool] = {}

    def record(surface: str, kind: ContentKind, sid: int) -> None:
        prev = kind_of.get(surface)
        if prev is None or _KIND_PRECEDENCE[kind] < _KIND_PRECEDENCE[prev]:
            kind_of[surface] = kind
        occurrences.setdefault(surface, set()).add(sid)

    for sent in doc.sentences:
        statute = _statute_spans(sent.text, lexicons.statute_names)
        statute_flag[sent.id] = bool(statute)
        precedent_flag[sent.id] = detect_precedent(sent)
        for _, _, surface in statute:
            record(surface, ContentKind.STATUTE_MENTION, sent.id)
        keyword = []
        for s, e, surface in _keyword_spans(sent.text, lexicons.legal_keywords):
            if _overlaps((s, e), statute):
                continue
            keyword.append((s, e, surface))
            record(surface, ContentKind.LEGAL_KEYWORD, sent.id)
        tokens = _cased_tokens(sent.text)
        for s, e in _capitalized_runs(tokens):
            if s == 0 and e - s == 1:
                continue
            if _overlaps((s, e), statute) or _overlaps((s, e), keyword):
                continue
            record(" ".join(t.lower() for t in tokens[s:e]), ContentKind.NOUN_PHRASE, sent.id)

    words = sorted(
        (ContentWord(surface, kind, scores[kind]) for surface, kind in kind_of.items()),
        key=lambda w: (-w.score, w.surface),
    )
    per_word = {j: frozenset(occurrences[w.surface]) for j, w in enumerate(words)}
    per_sentence: dict[int, set[int]] = {s.id: set() for s in doc.sentences}
    for j, sids in per_word.items():
        for sid in sids:
            per_sentence[sid].add(j)
    return ContentIndex(
        words=tuple(words),
        per_sentence={i: frozenset(js) for i, js in per_sentence.items()},
        per_word=per_word,
        statute_flag=statute_flag,
        precedent_flag=precedent_flag,
    )
