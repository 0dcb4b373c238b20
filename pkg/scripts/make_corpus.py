#!/usr/bin/env python3
"""Generate a synthetic labeled corpus plus reference summaries as JSONL files."""

import argparse
from pathlib import Path

from lexsumm.corpus import write_corpus, write_references
from lexsumm.synthetic import synth_corpus


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--docs", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--scale", type=float, default=1.0, help="stretch per-segment sizes")
    parser.add_argument("--out", default="data", help="output directory")
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    docs, references = synth_corpus(args.docs, seed=args.seed, scale=args.scale)
    write_corpus(docs, out / "corpus.jsonl")
    write_references(references, out / "references.jsonl")
    print(f"wrote {len(docs)} documents to {out / 'corpus.jsonl'}")
    print(f"wrote references to {out / 'references.jsonl'}")


if __name__ == "__main__":
    main()
