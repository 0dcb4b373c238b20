"""Expert-guideline profiles: segment weights, quotas, and sentence informativeness.

A profile captures everything jurisdiction-specific: how much each rhetorical
segment matters, how many of its sentences a summary must keep, how a
sentence's informativeness is computed, and how content words are scored.
Profiles can be loaded from JSON so new jurisdictions need no code changes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

from .content import ContentKind, DEFAULT_CONTENT_SCORES
from .corpus import FileUnreadableError, RhetoricalRole, Sentence

# Informativeness rule selectors.
INVERSE_POSITION = "inverse_position"
STATUTE_FLAG = "statute_flag"
PRECEDENT_FLAG = "precedent_flag"
POSITION_TIMES_CITATION = "position_times_citation"
CONSTANT_WEIGHT = "constant"
ZERO = "zero"

_RULES = {
    INVERSE_POSITION,
    STATUTE_FLAG,
    PRECEDENT_FLAG,
    POSITION_TIMES_CITATION,
    CONSTANT_WEIGHT,
    ZERO,
}

QUOTA_FULL = "full"
QUOTA_MIN = "min"
QUOTA_NONE = "none"


@dataclass(frozen=True)
class QuotaRule:
    """Minimum-representation rule for one segment.

    ``full`` keeps the whole segment, ``min`` keeps up to ``cap`` sentences,
    ``none`` imposes no minimum.
    """

    kind: str
    cap: int = 0

    def minimum(self, segment_size: int) -> int:
        if self.kind == QUOTA_FULL:
            return segment_size
        if self.kind == QUOTA_MIN:
            return min(self.cap, segment_size)
        return 0


@dataclass(frozen=True)
class GuidelineProfile:
    name: str
    segment_weights: Mapping[RhetoricalRole, float]
    quota_rules: Mapping[RhetoricalRole, QuotaRule]
    informativeness_rules: Mapping[RhetoricalRole, str]
    content_scores: Mapping[ContentKind, int] = field(
        default_factory=lambda: dict(DEFAULT_CONTENT_SCORES)
    )
    merge_ratio_precedent: bool = True
    normalize_ratio_position: bool = False

    def __post_init__(self):
        for role in RhetoricalRole:
            if self.segment_weights.get(role, 0.0) < 0:
                raise ValueError(f"negative weight for {role.value}")
            rule = self.informativeness_rules.get(role, CONSTANT_WEIGHT)
            if rule not in _RULES:
                raise ValueError(f"unknown informativeness rule {rule!r} for {role.value}")


def segment_weight(role: RhetoricalRole, profile: GuidelineProfile) -> float:
    return float(profile.segment_weights.get(role, 0.0))


def min_sentences(role: RhetoricalRole, segment_size: int, profile: GuidelineProfile) -> int:
    """Minimum number of sentences the summary must take from this segment."""
    if segment_size < 0:
        raise ValueError("segment_size must be >= 0")
    rule = profile.quota_rules.get(role, QuotaRule(QUOTA_NONE))
    return rule.minimum(segment_size)


def informativeness(
    sentence: Sentence,
    a: bool,
    p: bool,
    profile: GuidelineProfile,
    doc_length: int | None = None,
) -> float:
    """Informativeness of a sentence given its statute flag ``a`` and precedent flag ``p``.

    Facts decay with document position, statute/precedent sentences count only
    when they cite, and late citing sentences in the reasoning segment grow
    with position (optionally normalized by ``doc_length``). Everything else
    contributes its plain segment weight.
    """
    w = segment_weight(sentence.role, profile)
    rule = profile.informativeness_rules.get(sentence.role, CONSTANT_WEIGHT)
    if rule == INVERSE_POSITION:
        return w / sentence.position
    if rule == STATUTE_FLAG:
        return w * (1.0 if a else 0.0)
    if rule == PRECEDENT_FLAG:
        return w * (1.0 if p else 0.0)
    if rule == POSITION_TIMES_CITATION:
        pos = float(sentence.position)
        if profile.normalize_ratio_position and doc_length:
            pos /= doc_length
        return w * pos * (1.0 if (a or p) else 0.0)
    if rule == ZERO:
        return 0.0
    return w


def _india_rules() -> dict[RhetoricalRole, str]:
    return {
        RhetoricalRole.FACT: INVERSE_POSITION,
        RhetoricalRole.ISSUE: CONSTANT_WEIGHT,
        RhetoricalRole.RULING_BY_LOWER_COURT: CONSTANT_WEIGHT,
        RhetoricalRole.PRECEDENT: PRECEDENT_FLAG,
        RhetoricalRole.STATUTE: STATUTE_FLAG,
        RhetoricalRole.ARGUMENT: CONSTANT_WEIGHT,
        RhetoricalRole.RATIO: POSITION_TIMES_CITATION,
        RhetoricalRole.FINAL_JUDGEMENT: CONSTANT_WEIGHT,
    }


def _india_quotas() -> dict[RhetoricalRole, QuotaRule]:
    quotas = {role: QuotaRule(QUOTA_MIN, 2) for role in RhetoricalRole}
    quotas[RhetoricalRole.FINAL_JUDGEMENT] = QuotaRule(QUOTA_FULL)
    quotas[RhetoricalRole.ISSUE] = QuotaRule(QUOTA_FULL)
    quotas[RhetoricalRole.RULING_BY_LOWER_COURT] = QuotaRule(QUOTA_NONE)
    return quotas


INDIA = GuidelineProfile(
    name="india",
    segment_weights={
        RhetoricalRole.FINAL_JUDGEMENT: 2**7,
        RhetoricalRole.ISSUE: 2**6,
        RhetoricalRole.FACT: 2**5,
        RhetoricalRole.STATUTE: 2**3,
        RhetoricalRole.RATIO: 2**3,
        RhetoricalRole.PRECEDENT: 2**3,
        RhetoricalRole.ARGUMENT: 2**1,
        RhetoricalRole.RULING_BY_LOWER_COURT: 0.0,
    },
    quota_rules=_india_quotas(),
    informativeness_rules=_india_rules(),
)

# Linearly decreasing alternative to the exponential default.
INDIA_LINEAR = GuidelineProfile(
    name="india-linear",
    segment_weights={
        RhetoricalRole.FINAL_JUDGEMENT: 7.0,
        RhetoricalRole.ISSUE: 6.0,
        RhetoricalRole.FACT: 5.0,
        RhetoricalRole.STATUTE: 3.0,
        RhetoricalRole.RATIO: 3.0,
        RhetoricalRole.PRECEDENT: 3.0,
        RhetoricalRole.ARGUMENT: 1.0,
        RhetoricalRole.RULING_BY_LOWER_COURT: 0.0,
    },
    quota_rules=_india_quotas(),
    informativeness_rules=_india_rules(),
)

_PROFILES = {p.name: p for p in (INDIA, INDIA_LINEAR)}


def list_profiles() -> list[str]:
    return sorted(_PROFILES)


def get_profile(name: str) -> GuidelineProfile:
    try:
        return _PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; available: {list_profiles()}") from None


def _parse_quota(value) -> QuotaRule:
    if value == QUOTA_FULL:
        return QuotaRule(QUOTA_FULL)
    if value == QUOTA_NONE:
        return QuotaRule(QUOTA_NONE)
    if isinstance(value, str) and value.startswith("min:"):
        return QuotaRule(QUOTA_MIN, int(value.split(":", 1)[1]))
    if isinstance(value, int):
        return QuotaRule(QUOTA_MIN, value)
    raise ValueError(f"bad quota rule {value!r} (use 'full', 'none', 'min:<k>' or an int)")


def load_profile(path) -> GuidelineProfile:
    """Load a profile from a JSON file.

    Schema (all maps keyed by canonical role labels):
        {"name": str, "weights": {role: number}, "quotas": {role: "full"|"none"|"min:k"},
         "informativeness": {role: rule}, "content_scores": {kind: int},
         "merge_ratio_precedent": bool, "normalize_ratio_position": bool}
    Omitted roles default to weight 0, no quota, constant-weight rule.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise FileUnreadableError(path, str(exc)) from None
    weights = {
        RhetoricalRole.from_label(k): float(v) for k, v in raw.get("weights", {}).items()
    }
    quotas = {
        RhetoricalRole.from_label(k): _parse_quota(v) for k, v in raw.get("quotas", {}).items()
    }
    rules = {
        RhetoricalRole.from_label(k): str(v)
        for k, v in raw.get("informativeness", {}).items()
    }
    scores = dict(DEFAULT_CONTENT_SCORES)
    for k, v in raw.get("content_scores", {}).items():
        scores[ContentKind(k)] = int(v)
    return GuidelineProfile(
        name=str(raw.get("name", "custom")),
        segment_weights=weights,
        quota_rules=quotas,
        informativeness_rules=rules,
        content_scores=scores,
        merge_ratio_precedent=bool(raw.get("merge_ratio_precedent", True)),
        normalize_ratio_position=bool(raw.get("normalize_ratio_position", False)),
    )


def resolve_profile(profile: str | GuidelineProfile) -> GuidelineProfile:
    if isinstance(profile, GuidelineProfile):
        return profile
    return get_profile(profile)
