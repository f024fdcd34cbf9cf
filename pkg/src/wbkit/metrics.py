"""Attachment scoring (UAS/LAS) and segmentation precision/recall/F1.

Attachment comparison requires identical tokenizations; comparing scores
across different word-boundary schemes is confounded by token counts, so
that case is refused (use the diff module to inspect it instead).
Punctuation is scored like any other token, and DEPREL comparison is
case-sensitive on the full label, subtype included.  Corpus figures are
micro-averages: counts are summed before any ratio is taken.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .align import CharSpan, normalized_spans
from .conllu import Document, Sentence


class MetricsError(Exception):
    """Base class for evaluation input errors."""


class TokenizationMismatch(MetricsError):
    """Gold and predicted token forms diverge; attachment scores would be
    meaningless."""

    def __init__(self, message: str, position: int, sentence: int | None = None):
        super().__init__(message)
        self.position = position
        self.sentence = sentence


class CoverageMismatch(MetricsError):
    """The two span sets do not tokenize the same character sequence."""

    def __init__(self, message: str, sentence: int | None = None):
        super().__init__(message)
        self.sentence = sentence


@dataclass(frozen=True)
class AttachmentReport:
    token_total: int
    head_correct: int
    head_and_label_correct: int

    @property
    def uas(self) -> float:
        return self.head_correct / self.token_total if self.token_total else 1.0

    @property
    def las(self) -> float:
        return self.head_and_label_correct / self.token_total if self.token_total else 1.0

    def as_dict(self) -> dict:
        return {
            "token_total": self.token_total,
            "head_correct": self.head_correct,
            "head_and_label_correct": self.head_and_label_correct,
            "uas": self.uas,
            "las": self.las,
        }


@dataclass(frozen=True)
class SegReport:
    gold_spans: int
    pred_spans: int
    matched: int

    @property
    def precision(self) -> float:
        if self.pred_spans == 0:
            return 1.0 if self.gold_spans == 0 else 0.0
        return self.matched / self.pred_spans

    @property
    def recall(self) -> float:
        if self.gold_spans == 0:
            return 1.0 if self.pred_spans == 0 else 0.0
        return self.matched / self.gold_spans

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        if p + r == 0:
            return 0.0
        return 2 * p * r / (p + r)

    def as_dict(self) -> dict:
        return {
            "gold_spans": self.gold_spans,
            "pred_spans": self.pred_spans,
            "matched": self.matched,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }


SpanSide = Union[Sentence, Sequence[CharSpan], Sequence[tuple]]


def attachment_scores(gold: Sentence, pred: Sentence) -> AttachmentReport:
    """Per-token head and head+label agreement over one sentence."""
    gold_forms = gold.forms()
    pred_forms = pred.forms()
    limit = min(len(gold_forms), len(pred_forms))
    for i in range(limit):
        if gold_forms[i] != pred_forms[i]:
            raise TokenizationMismatch(
                f"token {i + 1}: gold form {gold_forms[i]!r} != predicted form "
                f"{pred_forms[i]!r}",
                position=i,
            )
    if len(gold_forms) != len(pred_forms):
        raise TokenizationMismatch(
            f"gold has {len(gold_forms)} tokens, predicted has {len(pred_forms)}",
            position=limit,
        )

    head_correct = 0
    both_correct = 0
    for g, p in zip(gold.tokens, pred.tokens):
        if g.head == p.head:
            head_correct += 1
            if g.deprel == p.deprel:
                both_correct += 1
    return AttachmentReport(
        token_total=len(gold.tokens),
        head_correct=head_correct,
        head_and_label_correct=both_correct,
    )


def _spans_of(side: SpanSide) -> list[tuple[int, int]]:
    if isinstance(side, Sentence):
        return [s.as_pair() for s in normalized_spans(side.forms())]
    out = []
    for item in side:
        if isinstance(item, CharSpan):
            out.append(item.as_pair())
        else:
            start, end = item
            out.append((int(start), int(end)))
    return out


def _check_tiling(spans: list[tuple[int, int]], label: str) -> int:
    pos = 0
    for start, end in sorted(spans):
        if start != pos or end < start:
            raise CoverageMismatch(
                f"{label} spans do not tile the character sequence at offset {pos}"
            )
        pos = end
    return pos


def segmentation_prf(gold: SpanSide, pred: SpanSide) -> SegReport:
    """Span precision/recall/F1; a predicted span counts iff the identical
    (start, end) pair exists in gold."""
    gold_spans = _spans_of(gold)
    pred_spans = _spans_of(pred)
    gold_len = _check_tiling(gold_spans, "gold")
    pred_len = _check_tiling(pred_spans, "predicted")
    if gold_len != pred_len:
        raise CoverageMismatch(
            f"gold covers {gold_len} characters, predicted covers {pred_len}"
        )
    matched = len(set(gold_spans) & set(pred_spans))
    return SegReport(gold_spans=len(gold_spans), pred_spans=len(pred_spans), matched=matched)


@dataclass(frozen=True)
class CorpusAttachment:
    summary: AttachmentReport
    per_sentence: tuple[AttachmentReport, ...]


@dataclass(frozen=True)
class CorpusSegmentation:
    summary: SegReport
    per_sentence: tuple[SegReport, ...]


def _require_equal_counts(gold: Document, pred: Document) -> None:
    if len(gold.sentences) != len(pred.sentences):
        raise MetricsError(
            f"gold has {len(gold.sentences)} sentences, predicted has "
            f"{len(pred.sentences)}"
        )


def corpus_attachment(gold: Document, pred: Document) -> CorpusAttachment:
    _require_equal_counts(gold, pred)
    reports = []
    for i, (g, p) in enumerate(zip(gold.sentences, pred.sentences)):
        try:
            reports.append(attachment_scores(g, p))
        except TokenizationMismatch as exc:
            raise TokenizationMismatch(
                f"sentence {i}: {exc}", position=exc.position, sentence=i
            ) from None
    summary = AttachmentReport(
        token_total=sum(r.token_total for r in reports),
        head_correct=sum(r.head_correct for r in reports),
        head_and_label_correct=sum(r.head_and_label_correct for r in reports),
    )
    return CorpusAttachment(summary=summary, per_sentence=tuple(reports))


def corpus_segmentation(gold: Document, pred: Document) -> CorpusSegmentation:
    _require_equal_counts(gold, pred)
    reports = []
    for i, (g, p) in enumerate(zip(gold.sentences, pred.sentences)):
        try:
            reports.append(segmentation_prf(g, p))
        except CoverageMismatch as exc:
            raise CoverageMismatch(f"sentence {i}: {exc}", sentence=i) from None
    summary = SegReport(
        gold_spans=sum(r.gold_spans for r in reports),
        pred_spans=sum(r.pred_spans for r in reports),
        matched=sum(r.matched for r in reports),
    )
    return CorpusSegmentation(summary=summary, per_sentence=tuple(reports))


def corpus_eval(
    gold: Document, pred: Document, mode: str
) -> CorpusAttachment | CorpusSegmentation:
    if mode == "attachment":
        return corpus_attachment(gold, pred)
    if mode == "segmentation":
        return corpus_segmentation(gold, pred)
    raise ValueError(f"unknown mode {mode!r}; expected 'attachment' or 'segmentation'")
