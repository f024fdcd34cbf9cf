"""Command-line entry point for the word-boundary toolkit.

Exit codes: 0 success, 1 findings (validation violations, imperfect
agreement, structural differences), 2 input or format errors.  No output
file is written once an input error has been detected.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import brat, diff as diffmod, merge, metrics, service
from .align import SegmentedFileError, read_segmented
from .conllu import ConlluError, load_document, serialize_document, validate_sentence


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _check_inputs(*paths: str) -> str | None:
    for p in paths:
        path = Path(p)
        if not path.is_file():
            return f"input file not found: {p}"
    return None


def _pct(value: float) -> str:
    return f"{value * 100:.2f}"


def cmd_validate(args: argparse.Namespace) -> int:
    problem = _check_inputs(args.conllu)
    if problem:
        return _fail(problem)
    try:
        doc = load_document(args.conllu)
    except ConlluError as exc:
        return _fail(str(exc))
    findings = 0
    for i, sentence in enumerate(doc.sentences):
        for v in validate_sentence(sentence):
            findings += 1
            label = sentence.sent_id or str(i)
            print(f"{args.conllu}\t{label}\ttoken {v.token_id}\t{v.rule}\t{v.message}")
    if findings:
        print(f"{findings} violation(s) in {len(doc.sentences)} sentence(s)")
        return 1
    print(f"OK: {len(doc.sentences)} sentence(s), no violations")
    return 0


def _build_policy(args: argparse.Namespace) -> merge.MergePolicy:
    override: frozenset[str] = frozenset()
    if args.lexicon:
        text = Path(args.lexicon).read_text(encoding="utf-8")
        override = frozenset(line.strip() for line in text.split("\n") if line.strip())
    return merge.MergePolicy(
        on_illegal=args.on_illegal,
        lexicon_override=override,
        upos_fallback=args.upos_fallback,
        xpos_delimiter=args.xpos_delimiter,
    )


def cmd_convert(args: argparse.Namespace) -> int:
    inputs = [args.gold, args.seg, args.pred]
    if args.lexicon:
        inputs.append(args.lexicon)
    problem = _check_inputs(*inputs)
    if problem:
        return _fail(problem)
    try:
        gold = load_document(args.gold)
        segmented = read_segmented(Path(args.seg).read_text(encoding="utf-8"))
        predicted = load_document(args.pred)
        policy = _build_policy(args)
        converted, logs = merge.convert_corpus(
            gold, segmented, predicted, policy, nfc=args.nfc
        )
    except (ConlluError, SegmentedFileError, merge.ConversionError, ValueError) as exc:
        return _fail(str(exc))
    Path(args.out).write_bytes(serialize_document(converted).encode("utf-8"))
    log_path = args.log or args.out + ".log"
    Path(log_path).write_text(merge.format_log_lines(logs), encoding="utf-8")
    merged = sum(l.merged for l in logs)
    rejected = sum(l.rejected for l in logs)
    mismatches = sum(1 for l in logs if any("alignment mismatch" in r for r in l.reasons))
    print(
        f"converted {len(logs)} sentence(s): {merged} group(s) merged, "
        f"{rejected} rejected, {mismatches} alignment mismatch(es)"
    )
    print(f"wrote {args.out} and {log_path}")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    problem = _check_inputs(args.gold, args.pred)
    if problem:
        return _fail(problem)
    try:
        gold = load_document(args.gold)
        pred = load_document(args.pred)
        report = metrics.corpus_eval(gold, pred, args.mode)
    except (ConlluError, metrics.MetricsError, ValueError) as exc:
        return _fail(str(exc))

    if isinstance(report, metrics.CorpusAttachment):
        s = report.summary
        print(f"UAS {_pct(s.uas)}")
        print(f"LAS {_pct(s.las)}")
        print(
            f"tokens {s.token_total}, heads correct {s.head_correct}, "
            f"heads+labels correct {s.head_and_label_correct}"
        )
        perfect = s.head_and_label_correct == s.token_total
    else:
        s = report.summary
        print(f"P {_pct(s.precision)}")
        print(f"R {_pct(s.recall)}")
        print(f"F1 {_pct(s.f1)}")
        print(
            f"gold spans {s.gold_spans}, predicted spans {s.pred_spans}, "
            f"matched {s.matched}"
        )
        perfect = s.matched == s.gold_spans == s.pred_spans
    if args.json:
        payload = {
            "mode": args.mode,
            "summary": report.summary.as_dict(),
            "sentences": [r.as_dict() for r in report.per_sentence],
        }
        Path(args.json).write_text(
            json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
        )
    return 0 if perfect else 1


def cmd_diff(args: argparse.Namespace) -> int:
    problem = _check_inputs(args.left, args.right)
    if problem:
        return _fail(problem)
    try:
        left = load_document(args.left)
        right = load_document(args.right)
    except ConlluError as exc:
        return _fail(str(exc))
    if len(left.sentences) != len(right.sentences):
        return _fail(
            f"left has {len(left.sentences)} sentences, right has {len(right.sentences)}"
        )
    if args.sent is not None:
        if not (0 <= args.sent < len(left.sentences)):
            return _fail(f"sentence index {args.sent} out of range")
        indices = [args.sent]
    else:
        indices = range(len(left.sentences))

    findings = 0
    for i in indices:
        a = left.sentences[i]
        b = right.sentences[i]
        try:
            result = diffmod.diff_parses(a, b)
        except diffmod.DiffError as exc:
            return _fail(f"sentence {i}: {exc}")
        if not result.clean:
            findings += 1
        label = a.sent_id or str(i)
        print(f"sentence {i} ({label}):")
        print(diffmod.render_text(a, b, result))
    return 1 if findings else 0


def cmd_export_brat(args: argparse.Namespace) -> int:
    problem = _check_inputs(args.scheme)
    if problem:
        return _fail(problem)
    try:
        doc = load_document(args.scheme)
    except ConlluError as exc:
        return _fail(str(exc))
    count = brat.export_document(doc, args.outdir)
    print(f"wrote {count} sentence(s) to {args.outdir}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    problem = _check_inputs(args.config)
    if problem:
        return _fail(problem)
    try:
        mapping = service.parse_config_text(Path(args.config).read_text(encoding="utf-8"))
        catalog = service.load_catalog(mapping)
    except service.CatalogError as exc:
        return _fail(str(exc))
    host, _, port_text = args.bind.rpartition(":")
    if not host or not port_text.isdigit():
        return _fail(f"--bind must look like host:port, got {args.bind!r}")
    service.serve(catalog, host=host, port=int(port_text), static_dir=args.static)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wbkit",
        description="Convert, evaluate, and inspect word-boundary variants of a "
        "dependency treebank.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check tree well-formedness of a CoNLL-U file")
    p.add_argument("conllu")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("convert", help="merge tokens to match a coarser segmentation")
    p.add_argument("--gold", required=True, help="fine-grained CoNLL-U input")
    p.add_argument("--seg", required=True, help="coarse segmentation, one sentence per line")
    p.add_argument("--pred", required=True, help="CoNLL-U with predicted FORM+UPOS")
    p.add_argument("--out", required=True, help="converted CoNLL-U output")
    p.add_argument("--log", help="conversion log path (default: OUT.log)")
    p.add_argument(
        "--on-illegal",
        choices=[merge.REJECT_GROUP, merge.REJECT_SENTENCE],
        default=merge.REJECT_GROUP,
    )
    p.add_argument("--lexicon", help="file of surface forms allowed to merge regardless")
    p.add_argument(
        "--upos-fallback",
        choices=[merge.FALLBACK_HEAD, merge.FALLBACK_FIRST],
        default=merge.FALLBACK_HEAD,
    )
    p.add_argument("--xpos-delimiter", default="+")
    p.add_argument("--nfc", action="store_true", help="NFC-normalize before alignment")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("eval", help="attachment or segmentation agreement")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--mode", choices=["attachment", "segmentation"], required=True)
    p.add_argument("--json", help="also write a structured report to this path")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("diff", help="character-aligned structural comparison")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--sent", type=int, help="single 0-based sentence index")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("export-brat", help="emit brat standoff files per sentence")
    p.add_argument("--scheme", required=True, help="CoNLL-U file to export")
    p.add_argument("--outdir", required=True)
    p.set_defaults(func=cmd_export_brat)

    p = sub.add_parser("serve", help="run the read-only comparison API")
    p.add_argument("--config", required=True, help="id=path lines, one scheme per line")
    p.add_argument("--bind", default="127.0.0.1:8000")
    p.add_argument("--static", help="directory with the built viewer bundle")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
