"""Command-line entry point for batch summarization, evaluation and experiments.

Subcommands: ``summarize``, ``evaluate``, ``compare``, ``perturb``. Every flag
default can be overridden by an environment variable with the ``LEXSUMM_``
prefix (``LEXSUMM_PROFILE``, ``LEXSUMM_SEED``, ...). Exit codes: 0 success,
2 unreadable or malformed input, 1 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .baselines import letsum_summarize, lexrank_summarize, luhn_summarize
from .corpus import (
    CorpusError,
    Lexicons,
    NoReferencesError,
    RhetoricalRole,
    default_lexicons,
    load_corpus,
    load_lexicons,
    load_references,
)
from .evaluation import evaluate, evaluate_segmentwise, paired_t_pvalue
from .guidelines import GuidelineProfile, get_profile, load_profile
from .ilp import dump_lp
from .robustness import NoiseSpec, report_record, report_table, robustness_report
from .summarizer import (
    SolverInvariantError,
    SummaryRequest,
    prepare_problem,
    summarize,
    summary_record,
    target_length,
)

METHODS = ("ilp", "luhn", "lexrank", "letsum")
_METRIC_COLUMNS = ("R2-R", "R2-F", "RL-R", "RL-F")


def _env(name: str, fallback=None):
    return os.environ.get(f"LEXSUMM_{name.upper().replace('-', '_')}", fallback)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexsumm",
        description="Guideline-driven extractive summarization of labeled case documents.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, references_required=False):
        p.add_argument("--corpus", required=True, help="corpus JSONL file")
        p.add_argument(
            "--references",
            required=references_required,
            default=_env("references"),
            help="reference summaries JSONL file",
        )
        p.add_argument(
            "--lexicons-dir",
            default=_env("lexicons_dir"),
            help="directory holding legal_keywords.txt, statute_names.txt, stopwords.txt "
            "(default: bundled lexicons)",
        )
        p.add_argument(
            "--profile",
            default=_env("profile", "india"),
            help="guideline profile name or JSON profile file",
        )
        p.add_argument(
            "--length",
            type=int,
            default=_env("length"),
            help="target word budget override (default: mean reference length per document)",
        )
        p.add_argument("--out", default=_env("out", "out"), help="output directory")
        p.add_argument(
            "--workers", type=int, default=int(_env("workers", "1")), help="parallel workers"
        )
        p.add_argument(
            "--solver-node-budget",
            type=int,
            default=int(_env("solver_node_budget", "1000000")),
        )
        p.add_argument(
            "--solver-time-budget",
            type=float,
            default=float(_env("solver_time_budget", "30")),
        )
        p.add_argument("--seed", type=int, default=int(_env("seed", "0")))

    p_sum = sub.add_parser("summarize", help="write one summary JSON per document")
    common(p_sum)
    p_sum.add_argument(
        "--dump-lp", action="store_true", help="also write the program in LP format"
    )
    p_sum.set_defaults(func=cmd_summarize)

    p_eval = sub.add_parser("evaluate", help="score summary runs against references")
    p_eval.add_argument("--summaries", nargs="+", required=True, help="summary directories")
    p_eval.add_argument("--references", required=True)
    p_eval.add_argument("--lexicons-dir", default=_env("lexicons_dir"))
    p_eval.add_argument("--out", default=_env("out", "out"))
    p_eval.set_defaults(func=cmd_evaluate)

    p_cmp = sub.add_parser("compare", help="run all methods and tabulate mean ROUGE")
    common(p_cmp, references_required=True)
    p_cmp.add_argument(
        "--methods",
        default=_env("methods", ",".join(METHODS)),
        help=f"comma-separated subset of {','.join(METHODS)}",
    )
    p_cmp.set_defaults(func=cmd_compare)

    p_pert = sub.add_parser("perturb", help="label-noise robustness report")
    common(p_pert)
    p_pert.add_argument(
        "--noise-rate", type=float, default=float(_env("noise_rate", "0.15"))
    )
    p_pert.set_defaults(func=cmd_perturb)
    return parser


def _load_lexicons(args) -> Lexicons:
    if not args.lexicons_dir:
        return default_lexicons()
    d = Path(args.lexicons_dir)
    return load_lexicons(
        d / "legal_keywords.txt", d / "statute_names.txt", d / "stopwords.txt"
    )


def _load_profile(args) -> GuidelineProfile:
    if args.profile.endswith(".json") or os.path.sep in args.profile:
        return load_profile(args.profile)
    return get_profile(args.profile)


def _budget_for(doc_id: str, args, references) -> int:
    if args.length is not None:
        try:
            return int(args.length)
        except ValueError:
            raise CorpusError(f"bad --length value {args.length!r}") from None
    refs = references.get(doc_id) if references else None
    if not refs:
        raise NoReferencesError(
            f"no --length override and no references for document {doc_id!r}"
        )
    return target_length(refs)


def _write_atomic(path: Path, content: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(content, encoding="utf-8")
    os.replace(tmp, path)


def _write_json(path: Path, obj) -> None:
    _write_atomic(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _render_table(header, rows) -> str:
    widths = [max(len(str(r[k])) for r in [header, *rows]) for k in range(len(header))]
    lines = [
        "  ".join(str(cell).ljust(w) for cell, w in zip(row, widths)).rstrip()
        for row in [header, *rows]
    ]
    return "\n".join(lines) + "\n"


def _run_method(method: str, doc, budget: int, lexicons, profile, node_budget, time_budget):
    if method == "ilp":
        summary, relaxation = summarize(
            SummaryRequest(doc=doc, profile=profile, target_length=budget),
            lexicons,
            node_budget=node_budget,
            time_budget=time_budget,
        )
        return summary, relaxation
    if method == "luhn":
        return luhn_summarize(doc, budget, lexicons), []
    if method == "lexrank":
        return lexrank_summarize(doc, budget, lexicons), []
    if method == "letsum":
        return letsum_summarize(doc, budget, lexicons), []
    raise ValueError(f"unknown method {method!r}")


def _summarize_one(payload):
    doc, budget, lexicons, profile, node_budget, time_budget, dump = payload
    summary, relaxation = _run_method(
        "ilp", doc, budget, lexicons, profile, node_budget, time_budget
    )
    record = summary_record(summary, doc, relaxation)
    lp_text = None
    if dump:
        lp_text = dump_lp(prepare_problem(doc, profile, budget, lexicons), name=doc.doc_id)
    return doc.doc_id, record, summary.solver_status.value, lp_text


def _map_jobs(worker, payloads, workers: int):
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(worker, payloads)
    else:
        for payload in payloads:
            yield worker(payload)


def cmd_summarize(args) -> int:
    lexicons = _load_lexicons(args)
    profile = _load_profile(args)
    docs = load_corpus(args.corpus)
    references = load_references(args.references) if args.references else {}
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    payloads = [
        (
            doc,
            _budget_for(doc.doc_id, args, references),
            lexicons,
            profile,
            args.solver_node_budget,
            args.solver_time_budget,
            args.dump_lp,
        )
        for doc in docs
    ]
    for doc_id, record, status, lp_text in _map_jobs(_summarize_one, payloads, args.workers):
        _write_json(out / f"{doc_id}.summary.json", record)
        if lp_text is not None:
            _write_atomic(out / f"{doc_id}.lp", lp_text)
        print(f"{doc_id}\t{status}\twords={record['word_count']}")
    return 0


def _load_run(run_dir: Path):
    """Read a directory of summary records into {doc_id: (text, role/text pairs)}."""
    run = {}
    for path in sorted(run_dir.glob("*.summary.json")):
        record = json.loads(path.read_text(encoding="utf-8"))
        sentences = [
            (RhetoricalRole.from_label(s["role"]), s["text"]) for s in record["sentences"]
        ]
        run[record["doc_id"]] = (
            " ".join(s["text"] for s in record["sentences"]),
            sentences,
        )
    return run


def _score_run(run, references, stopwords):
    """Per-document overall scores and reference-averaged per-segment scores."""
    per_doc = {}
    segment_sums: dict[str, list[float]] = {}
    for doc_id, (text, cand_sentences) in sorted(run.items()):
        refs = references.get(doc_id)
        if not refs:
            raise NoReferencesError(f"no references for document {doc_id!r}")
        overall = evaluate(text, [r.text() for r in refs], stopwords)
        per_doc[doc_id] = {
            "R2-R": overall["rouge2"].recall,
            "R2-F": overall["rouge2"].f,
            "RL-R": overall["rougeL"].recall,
            "RL-F": overall["rougeL"].f,
        }
        buckets: dict[str, list[float]] = {}
        for ref in refs:
            ref_sentences = [
                (s.role, s.text) for s in ref.sentences if s.role is not None
            ]
            if not ref_sentences:
                continue
            for bucket, score in evaluate_segmentwise(
                cand_sentences, ref_sentences, stopwords
            ).items():
                buckets.setdefault(bucket, []).append(score.f)
        for bucket, values in buckets.items():
            segment_sums.setdefault(bucket, []).append(sum(values) / len(values))
    means = {
        col: sum(d[col] for d in per_doc.values()) / len(per_doc) if per_doc else 0.0
        for col in _METRIC_COLUMNS
    }
    segment_means = {
        bucket: sum(vals) / len(vals) for bucket, vals in sorted(segment_sums.items())
    }
    return per_doc, means, segment_means


def cmd_evaluate(args) -> int:
    lexicons = _load_lexicons(args)
    references = load_references(args.references)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    report = {"runs": {}}
    run_scores = {}
    for run_dir in args.summaries:
        run_path = Path(run_dir)
        run = _load_run(run_path)
        if not run:
            print(f"error: no summary records in {run_dir}", file=sys.stderr)
            return 2
        per_doc, means, segment_means = _score_run(run, references, lexicons.stopwords)
        name = run_path.name or str(run_path)
        run_scores[name] = per_doc
        report["runs"][name] = {
            "overall": means,
            "per_segment_rougeL_F": segment_means,
            "per_document": per_doc,
        }

    names = list(report["runs"])
    if len(names) >= 2:
        tests = {}
        for a_idx in range(len(names)):
            for b_idx in range(a_idx + 1, len(names)):
                a, b = names[a_idx], names[b_idx]
                shared = sorted(set(run_scores[a]) & set(run_scores[b]))
                tests[f"{a} vs {b}"] = {
                    col: paired_t_pvalue(
                        [run_scores[a][d][col] for d in shared],
                        [run_scores[b][d][col] for d in shared],
                    )
                    for col in _METRIC_COLUMNS
                }
        report["paired_t_pvalues"] = tests

    rows = [
        (name, *(f"{report['runs'][name]['overall'][c]:.4f}" for c in _METRIC_COLUMNS))
        for name in names
    ]
    table = _render_table(("run", *_METRIC_COLUMNS), rows)
    seg_rows = []
    for name in names:
        for bucket, value in report["runs"][name]["per_segment_rougeL_F"].items():
            seg_rows.append((name, bucket, f"{value:.4f}"))
    seg_table = _render_table(("run", "segment", "RL-F"), seg_rows)
    _write_json(out / "report.json", report)
    _write_atomic(out / "report.txt", table + "\n" + seg_table)
    print(table, end="")
    return 0


def _compare_one(payload):
    doc, budget, lexicons, profile, node_budget, time_budget, methods = payload
    results = {}
    for method in methods:
        summary, relaxation = _run_method(
            method, doc, budget, lexicons, profile, node_budget, time_budget
        )
        results[method] = summary_record(summary, doc, relaxation)
    return doc.doc_id, results


def cmd_compare(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for method in methods:
        if method not in METHODS:
            print(f"error: unknown method {method!r}", file=sys.stderr)
            return 2
    lexicons = _load_lexicons(args)
    profile = _load_profile(args)
    docs = load_corpus(args.corpus)
    references = load_references(args.references)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    payloads = [
        (
            doc,
            _budget_for(doc.doc_id, args, references),
            lexicons,
            profile,
            args.solver_node_budget,
            args.solver_time_budget,
            tuple(methods),
        )
        for doc in docs
    ]
    for method in methods:
        (out / method).mkdir(exist_ok=True)
    for doc_id, results in _map_jobs(_compare_one, payloads, args.workers):
        for method, record in results.items():
            _write_json(out / method / f"{doc_id}.summary.json", record)

    table_rows = []
    report = {"methods": {}}
    for method in methods:
        run = _load_run(out / method)
        _, means, segment_means = _score_run(run, references, lexicons.stopwords)
        report["methods"][method] = {
            "overall": means,
            "per_segment_rougeL_F": segment_means,
        }
        table_rows.append(
            (method, *(f"{means[c]:.4f}" for c in _METRIC_COLUMNS))
        )
    table = _render_table(("method", *_METRIC_COLUMNS), table_rows)
    _write_json(out / "comparison.json", report)
    _write_atomic(out / "comparison.txt", table)
    print(table, end="")
    return 0


def cmd_perturb(args) -> int:
    lexicons = _load_lexicons(args)
    profile = _load_profile(args)
    docs = load_corpus(args.corpus)
    if not args.references:
        print("error: perturb requires --references", file=sys.stderr)
        return 2
    references = load_references(args.references)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    spec = NoiseSpec(rate=args.noise_rate, seed=args.seed)
    report = robustness_report(
        docs,
        references,
        profile,
        spec,
        lexicons,
        node_budget=args.solver_node_budget,
        time_budget=args.solver_time_budget,
    )
    table = report_table(report)
    _write_json(out / "robustness.json", report_record(report))
    _write_atomic(out / "robustness.txt", table)
    print(table, end="")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SolverInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except CorpusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
