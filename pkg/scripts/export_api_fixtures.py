#!/usr/bin/env python3
"""Freeze real API responses into JSON fixtures for the viewer tests.

Runs the service in-process over the two-scheme sample catalog and writes
frontend/tests/fixtures/: schemes.json, parse responses for 20 sampled
sentences per scheme, the diff for the first compound fixture, and an
identity diff.
"""

import json
import sys
from pathlib import Path

from fastapi.testclient import TestClient

from wbkit.align import read_segmented
from wbkit.conllu import load_document
from wbkit.merge import MergePolicy, convert_corpus
from wbkit.service import build_catalog, create_app

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "tests" / "data"
OUT = ROOT / "frontend" / "tests" / "fixtures"


def dump(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")


def main() -> int:
    gold = load_document(DATA / "sample_gold.conllu")
    seg = read_segmented((DATA / "sample_seg.txt").read_text(encoding="utf-8"))
    pred = load_document(DATA / "sample_pred.conllu")
    converted, _ = convert_corpus(gold, seg, pred, MergePolicy())
    catalog = build_catalog([("gsd", gold, "sample"), ("ltp", converted, "converted")])
    client = TestClient(create_app(catalog))

    OUT.mkdir(parents=True, exist_ok=True)
    dump(OUT / "schemes.json", client.get("/api/schemes").json())

    count = min(20, catalog.sentence_count)
    parses = []
    for scheme in ("gsd", "ltp"):
        for sent in range(count):
            resp = client.get("/api/parse", params={"scheme": scheme, "sent": sent})
            parses.append(resp.json())
    dump(OUT / "parses.json", parses)

    dump(
        OUT / "diff_road.json",
        client.get("/api/diff", params={"left": "gsd", "right": "ltp", "sent": 0}).json(),
    )
    dump(
        OUT / "diff_identity.json",
        client.get("/api/diff", params={"left": "gsd", "right": "gsd", "sent": 0}).json(),
    )
    dump(
        OUT / "eval.json",
        client.get("/api/eval", params={"left": "gsd", "right": "ltp"}).json(),
    )
    print(f"wrote fixtures to {OUT} ({len(parses)} parse responses)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
