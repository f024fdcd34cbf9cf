#!/usr/bin/env python3
"""Build a small two-scheme demo catalog from the bundled sample corpus.

Writes gsd.conllu, ltp.conllu (converted through the real pipeline), a
conversion log, brat exports, and a catalog.cfg ready for `wbkit serve`.

Usage: python3 scripts/build_demo_corpus.py [outdir]   (default: demo/)
"""

import sys
from pathlib import Path

from wbkit.align import read_segmented
from wbkit.brat import export_document
from wbkit.conllu import dump_document, load_document
from wbkit.merge import MergePolicy, convert_corpus, format_log_lines

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "tests" / "data"


def main() -> int:
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "demo"
    outdir.mkdir(parents=True, exist_ok=True)

    gold = load_document(DATA / "sample_gold.conllu")
    seg = read_segmented((DATA / "sample_seg.txt").read_text(encoding="utf-8"))
    pred = load_document(DATA / "sample_pred.conllu")
    converted, logs = convert_corpus(gold, seg, pred, MergePolicy())

    dump_document(gold, outdir / "gsd.conllu")
    dump_document(converted, outdir / "ltp.conllu")
    (outdir / "conversion.log").write_text(format_log_lines(logs), encoding="utf-8")
    export_document(gold, outdir / "brat-gsd")

    config = outdir / "catalog.cfg"
    config.write_text(
        f"gsd={outdir / 'gsd.conllu'}\nltp={outdir / 'ltp.conllu'}\n", encoding="utf-8"
    )

    merged = sum(l.merged for l in logs)
    print(f"wrote {outdir}/ ({len(gold.sentences)} sentences, {merged} merges)")
    print(f"serve it with:  wbkit serve --config {config} --bind 127.0.0.1:8000")
    return 0


if __name__ == "__main__":
    sys.exit(main())
