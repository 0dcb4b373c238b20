#!/usr/bin/env python3
"""End-to-end comparison demo: synthesize a corpus, run every method, print the table."""

import argparse
import tempfile
from pathlib import Path

from lexsumm.cli import main as cli_main
from lexsumm.corpus import write_corpus, write_references
from lexsumm.synthetic import synth_corpus


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--docs", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default=None, help="keep outputs here (default: temp dir)")
    args = parser.parse_args()

    workdir = Path(args.out) if args.out else Path(tempfile.mkdtemp(prefix="lexsumm-"))
    workdir.mkdir(parents=True, exist_ok=True)
    docs, references = synth_corpus(args.docs, seed=args.seed)
    corpus = workdir / "corpus.jsonl"
    refs = workdir / "references.jsonl"
    write_corpus(docs, corpus)
    write_references(references, refs)

    code = cli_main(
        ["compare", "--corpus", str(corpus), "--references", str(refs),
         "--out", str(workdir / "comparison")]
    )
    print(f"outputs in {workdir / 'comparison'}")
    raise SystemExit(code)


if __name__ == "__main__":
    main()
