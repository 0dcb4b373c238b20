"""Guideline-driven ILP extractive summarization for labeled case documents."""

from .content import ContentIndex, ContentKind, ContentWord, build_content_index
from .corpus import (
    LabeledDocument,
    Lexicons,
    ReferenceSummary,
    RhetoricalRole,
    Sentence,
    Summary,
    SummaryStatus,
    default_lexicons,
    load_corpus,
    load_lexicons,
    load_references,
    tokenize,
)
from .evaluation import RougeScore, evaluate, evaluate_segmentwise, rouge_l, rouge_n
from .guidelines import INDIA, INDIA_LINEAR, GuidelineProfile, get_profile, load_profile
from .ilp import IlpProblem, IlpSolution, build_problem, solve_exact, solve_greedy, verify_solution
from .summarizer import SummaryRequest, summarize, target_length

__version__ = "0.1.0"

__all__ = [
    "ContentIndex",
    "ContentKind",
    "ContentWord",
    "GuidelineProfile",
    "INDIA",
    "INDIA_LINEAR",
    "IlpProblem",
    "IlpSolution",
    "LabeledDocument",
    "Lexicons",
    "ReferenceSummary",
    "RhetoricalRole",
    "RougeScore",
    "Sentence",
    "Summary",
    "SummaryRequest",
    "SummaryStatus",
    "build_content_index",
    "build_problem",
    "default_lexicons",
    "evaluate",
    "evaluate_segmentwise",
    "get_profile",
    "load_corpus",
    "load_lexicons",
    "load_profile",
    "load_references",
    "rouge_l",
    "rouge_n",
    "solve_exact",
    "solve_greedy",
    "summarize",
    "target_length",
    "tokenize",
    "verify_solution",
]
