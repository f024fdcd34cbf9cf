"""Acceptance suite: one test per criterion, each printing a PASS line.

Corpus-dependent criteria (round-trip, validation, conversion invariants,
diff tiling) run against the released treebank splits when WBKIT_GSD_DIR
points at a directory of .conllu files.  Without it they run the same
assertions against the bundled sample corpus plus a large seeded
synthetic corpus, and say so.  Run with `pytest tests/test_acceptance.py -v -s`.
"""

import os
import random
import time
from pathlib import Path

import jsonschema
import pytest
from fastapi.testclient import TestClient

from helpers import (
    DATA,
    LABELS,
    crossing_count,
    make_sentence,
    partitions_of,
    random_heads,
    random_tree_sentence,
)
from wbkit.align import MergeGroup, align_tokenizations, normalized_spans, normalized_text
from wbkit.cli import main
from wbkit.conllu import (
    Document,
    load_document,
    parse_document,
    serialize_document,
    validate_sentence,
)
from wbkit.diff import KIND_IDENTICAL, KIND_MERGE, KIND_SPLIT, diff_parses
from wbkit.merge import MergePolicy, check_legality, convert_corpus
from wbkit.metrics import attachment_scores, corpus_attachment, segmentation_prf
from wbkit.service import SCHEMAS, build_catalog, create_app

GSD_DIR = os.environ.get("WBKIT_GSD_DIR")
POLICY = MergePolicy()


def _passed(name: str, note: str = "") -> None:
    suffix = f" ({note})" if note else ""
    print(f"\n[acceptance] {name}: PASS{suffix}")


def _corpus_files(tmp_path_factory) -> tuple[list[Path], str]:
    """The released splits when available, else bundled + synthetic data."""
    if GSD_DIR:
        paths = sorted(Path(GSD_DIR).glob("*.conllu"))
        if paths:
            return paths, f"released splits in {GSD_DIR}"
    synth = tmp_path_factory.getbasetemp() / "synthetic_corpus.conllu"
    if not synth.exists():
        rng = random.Random(20240501)
        sentences = []
        for i in range(1500):
            s = random_tree_sentence(rng.randint(1, 24), rng, allow_latin=True)
            s.comments = [f"# sent_id = synth-{i:05d}", f"# text = {normalized_text(s.forms())}"]
            sentences.append(s)
        synth.write_bytes(serialize_document(Document(sentences=sentences)).encode("utf-8"))
    files = [DATA / "sample_gold.conllu", DATA / "compounds_gold.conllu", synth]
    return files, "bundled sample + seeded synthetic corpus (released splits not present)"


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    return _corpus_files(tmp_path_factory)


@pytest.fixture(scope="module")
def dev_document(corpus):
    files, _ = corpus
    if GSD_DIR:
        dev = [p for p in files if "dev" in p.name]
        if dev:
            return load_document(dev[0])
    sample = load_document(DATA / "sample_gold.conllu")
    synthetic = load_document(files[-1])
    return Document(sentences=sample.sentences + synthetic.sentences)


def test_round_trip_byte_identity(corpus):
    files, note = corpus
    started = time.perf_counter()
    total_sentences = 0
    for path in files:
        raw = path.read_bytes()
        doc = parse_document(raw, source_name=str(path))
        assert serialize_document(doc).encode("utf-8") == raw, path
        total_sentences += len(doc.sentences)
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0, f"round-trip took {elapsed:.2f}s"
    _passed(
        "round-trip byte identity",
        f"{len(files)} file(s), {total_sentences} sentences, {elapsed:.2f}s; {note}",
    )


def test_validation_exits_zero(corpus, capsys):
    files, note = corpus
    for path in files:
        assert main(["validate", str(path)]) == 0, path
    capsys.readouterr()
    _passed("validate exits 0 on corpus", note)


def test_alignment_oracle():
    started = time.perf_counter()
    rng = random.Random(11)
    checked = 0

    for _ in range(1000):
        n = rng.randint(1, 8)
        chars = [rng.choice("天文台山水路人中") for _ in range(n)]
        fine = make_sentence(chars)  # single-character tokens
        for pieces in partitions_of(n):
            coarse = ["".join(chars[a:b]) for a, b in pieces]
            result = align_tokenizations(fine, coarse)
            # Brute-force oracle: with single-character fine tokens every
            # partition boundary is a fine boundary, so everything aligns
            # and the groups are the partition itself.
            assert result.aligned
            assert [(g.first, g.last) for g in result.groups] == [
                (a + 1, b) for a, b in pieces
            ]
            checked += 1

    # Multi-character fine tokens: the boundary-subset oracle is no longer
    # vacuous; alignment must agree with it exactly.
    for _ in range(500):
        n = rng.randint(1, 8)
        text = "".join(rng.choice("天文台山水路人中") for _ in range(n))
        cuts = sorted(rng.sample(range(1, n), rng.randint(0, n - 1))) if n > 1 else []
        bounds = [0] + cuts + [n]
        fine = make_sentence([text[a:b] for a, b in zip(bounds, bounds[1:])])
        fine_bounds = set(bounds)
        for pieces in partitions_of(n):
            coarse = [text[a:b] for a, b in pieces]
            result = align_tokenizations(fine, coarse)
            assert result.aligned == all(b in fine_bounds for _, b in pieces)
            checked += 1

    elapsed = time.perf_counter() - started
    assert elapsed < 60.0, f"alignment oracle took {elapsed:.2f}s"
    _passed("alignment oracle", f"{checked} partition checks, {elapsed:.2f}s")


def test_legality_oracle():
    rng = random.Random(23)
    agreements = 0
    for _ in range(1000):
        n = rng.randint(1, 7)
        s = random_tree_sentence(n, rng)
        heads = [t.head for t in s.tokens]
        for first in range(1, n + 1):
            for last in range(first, n + 1):
                legality = check_legality(s, MergeGroup(first, last, "g"), POLICY)
                crossings = crossing_count(heads, first, last)
                assert legality.legal == (crossings == 1)
                assert len(legality.external_head_members) == crossings
                agreements += 1
    _passed("legality oracle", f"{agreements} group checks, 100% agreement")


def _random_coarse(forms: list[str], rng: random.Random) -> list[str]:
    """A random coarsening: drop a random subset of fine boundaries."""
    stripped = ["".join(ch for ch in f if not ch.isspace()) for f in forms]
    out = []
    piece = ""
    for i, f in enumerate(stripped):
        piece += f
        last = i == len(stripped) - 1
        if last or rng.random() < 0.6:
            if piece:
                out.append(piece)
            piece = ""
    return out


def test_conversion_invariants_on_dev(corpus, dev_document):
    _, note = corpus
    gold = dev_document
    rng = random.Random(37)

    # Identity segmentation reproduces the document exactly.
    identity = [s.forms() for s in gold.sentences]
    converted, logs = convert_corpus(gold, identity, gold, POLICY)
    assert serialize_document(converted) == serialize_document(gold)
    assert all(log.merged == 0 for log in logs)

    # Random coarse segmentations: character preservation, monotone token
    # count, and well-formed output for every sentence.
    merged_total = 0
    for round_no in range(3):
        seg = [_random_coarse(s.forms(), rng) for s in gold.sentences]
        converted, logs = convert_corpus(gold, seg, None, POLICY)
        for before, after, log in zip(gold.sentences, converted.sentences, logs):
            assert normalized_text(after.forms()) == normalized_text(before.forms())
            assert len(after.tokens) <= len(before.tokens)
            assert validate_sentence(after) == []
            assert log.tokens_after == len(after.tokens)
        merged_total += sum(log.merged for log in logs)
    assert merged_total > 0
    _passed(
        "conversion invariants on dev",
        f"{len(gold.sentences)} sentences x 3 random segmentations, "
        f"{merged_total} merges; {note}",
    )


def test_golden_conversion_fixtures():
    gold = load_document(DATA / "compounds_gold.conllu")
    seg = [
        line.split(" ")
        for line in (DATA / "compounds_seg.txt").read_text(encoding="utf-8").splitlines()
    ]
    pred = load_document(DATA / "compounds_pred.conllu")
    converted, logs = convert_corpus(gold, seg, pred, POLICY)

    fused = [s.tokens for s in converted.sentences]
    # 中山南路: fused PROPN with head/deprel routed from 路.
    assert fused[0][0].form == "中山南路"
    assert fused[0][0].upos == "PROPN"
    assert fused[0][0].xpos == "NNP+NN+NN"
    assert (fused[0][0].head, fused[0][0].deprel) == (3, "nsubj")
    # 2004年: digits + CJK, no space inserted.
    assert fused[1][1].form == "2004年"
    assert fused[1][1].xpos == "CD+NNB"
    # 天文台, 亚热带, 医学人文博物馆.
    assert fused[2][2].form == "天文台"
    assert fused[3][2].form == "亚热带"
    assert fused[4][3].form == "医学人文博物馆"
    assert fused[4][3].xpos == "NN+NN+NN+NN"

    golden = (DATA / "compounds_converted.golden.conllu").read_bytes()
    assert serialize_document(converted).encode("utf-8") == golden
    _passed("golden conversion fixtures", "5 fixtures byte-exact")


def _brute_attachment(gold, pred):
    total = len(gold.tokens)
    heads = 0
    both = 0
    for i in range(total):
        if gold.tokens[i].head == pred.tokens[i].head:
            heads += 1
            if gold.tokens[i].deprel == pred.tokens[i].deprel:
                both += 1
    return total, heads, both


def _brute_seg(gold_spans, pred_spans):
    matched = 0
    for g in gold_spans:
        for p in pred_spans:
            if g == p:
                matched += 1
    return matched


def test_metric_oracles():
    rng = random.Random(47)
    for _ in range(1000):
        forms = [rng.choice("天文台山水") for _ in range(5)]
        gold = make_sentence(forms, random_heads(5, rng), [rng.choice(LABELS) for _ in range(5)])
        pred = make_sentence(forms, random_heads(5, rng), [rng.choice(LABELS) for _ in range(5)])
        report = attachment_scores(gold, pred)
        total, heads, both = _brute_attachment(gold, pred)
        assert (report.token_total, report.head_correct, report.head_and_label_correct) == (
            total,
            heads,
            both,
        )

        parts = list(partitions_of(5))
        gspans = rng.choice(parts)
        pspans = rng.choice(parts)
        seg = segmentation_prf(gspans, pspans)
        assert seg.matched == _brute_seg(gspans, pspans)

    worked = segmentation_prf(
        [(0, 1), (1, 2), (2, 3), (3, 5)], [(0, 2), (2, 3), (3, 5)]
    )
    assert abs(worked.precision - 2 / 3) < 1e-9
    assert abs(worked.recall - 1 / 2) < 1e-9
    assert abs(worked.f1 - 4 / 7) < 1e-9

    sample = load_document(DATA / "sample_gold.conllu")
    self_att = corpus_attachment(sample, sample).summary
    assert f"{self_att.uas * 100:.2f}" == "100.00"
    assert f"{self_att.las * 100:.2f}" == "100.00"
    self_seg = segmentation_prf(sample.sentences[0], sample.sentences[0])
    assert self_seg.f1 == 1.0
    _passed("metric oracles", "1000 random cases + worked example + self-eval")


def test_diff_laws(dev_document):
    # diff(a, a) reports nothing for every dev sentence.
    for s in dev_document.sentences:
        result = diff_parses(s, s)
        assert result.clean
        assert result.summary.incomparable == 0

    # Mirror symmetry on 500 random pairs.
    rng = random.Random(59)
    swap = {KIND_MERGE: KIND_SPLIT, KIND_SPLIT: KIND_MERGE}
    for _ in range(500):
        text = "".join(rng.choice("山水天路人中") for _ in range(rng.randint(1, 8)))
        n = len(text)

        def side():
            cuts = sorted(rng.sample(range(1, n), rng.randint(0, n - 1))) if n > 1 else []
            bounds = [0] + cuts + [n]
            forms = [text[a:b] for a, b in zip(bounds, bounds[1:])]
            return make_sentence(forms, random_heads(len(forms), rng),
                                 [rng.choice(LABELS) for _ in forms])

        a, b = side(), side()
        ab = diff_parses(a, b)
        ba = diff_parses(b, a)
        assert [(e.span, e.right_ids, e.left_ids, swap.get(e.kind, e.kind)) for e in ab.edits] == [
            (e.span, e.left_ids, e.right_ids, e.kind) for e in ba.edits
        ]
        assert [(e.dependent_span, e.right_head_span, e.left_head_span, e.agreement)
                for e in ab.edges] == [
            (e.dependent_span, e.left_head_span, e.right_head_span, e.agreement)
            for e in ba.edges
        ]

    # Tiling against converted variants of every dev sentence.
    rng = random.Random(61)
    seg = [_random_coarse(s.forms(), rng) for s in dev_document.sentences]
    converted, _ = convert_corpus(dev_document, seg, None, POLICY)
    for a, b in zip(dev_document.sentences, converted.sentences):
        result = diff_parses(a, b)
        pos = 0
        for edit in result.edits:
            assert edit.span.start == pos
            pos = edit.span.end
        assert pos == len(normalized_text(a.forms()))
    _passed("diff laws", f"self-empty + 500 mirrored pairs + tiling on "
                         f"{len(dev_document.sentences)} converted pairs")


def test_service_contract():
    gold = load_document(DATA / "sample_gold.conllu")
    seg = [
        line.split(" ")
        for line in (DATA / "sample_seg.txt").read_text(encoding="utf-8").splitlines()
    ]
    pred = load_document(DATA / "sample_pred.conllu")
    converted, _ = convert_corpus(gold, seg, pred, POLICY)
    catalog = build_catalog([("gsd", gold, "sample"), ("ltp", converted, "converted")])

    # Runnable with no viewer bundle present.
    client = TestClient(create_app(catalog, static_dir=None))

    checks = 0
    resp = client.get("/api/schemes")
    assert resp.status_code == 200
    jsonschema.validate(resp.json(), SCHEMAS["/api/schemes"])
    checks += 1

    resp = client.get("/api/sentences", params={"scheme": "gsd", "offset": 0, "limit": 10})
    assert resp.status_code == 200
    jsonschema.validate(resp.json(), SCHEMAS["/api/sentences"])
    checks += 1

    for scheme in ("gsd", "ltp"):
        for sent in range(catalog.sentence_count):
            resp = client.get("/api/parse", params={"scheme": scheme, "sent": sent})
            assert resp.status_code == 200
            body = resp.json()
            jsonschema.validate(body, SCHEMAS["/api/parse"])
            ids = {t["id"] for t in body["tokens"]}
            pos = 0
            for tok in body["tokens"]:
                assert tok["span"][0] == pos
                pos = tok["span"][1]
            assert pos == len(body["text"])
            for edge in body["edges"]:
                assert edge["head"] == 0 or edge["head"] in ids
            checks += 1

    for sent in range(catalog.sentence_count):
        resp = client.get("/api/diff", params={"left": "gsd", "right": "ltp", "sent": sent})
        assert resp.status_code == 200
        jsonschema.validate(resp.json(), SCHEMAS["/api/diff"])
        checks += 1

    resp = client.get("/api/eval", params={"left": "gsd", "right": "ltp"})
    assert resp.status_code == 200
    jsonschema.validate(resp.json(), SCHEMAS["/api/eval"])
    checks += 1

    _passed("service contract", f"{checks} schema-valid responses on 2-scheme catalog")
