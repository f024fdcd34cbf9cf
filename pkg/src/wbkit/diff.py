"""Character-span-aligned comparison of two parses of the same text.

Token edits are cut at boundaries the two tokenizations share, so each
edit region is the smallest stretch both sides agree on externally:
1-to-1 regions are identical tokens, k-to-1 a merge, 1-to-k a split, and
anything else divergent.  Dependency edges are only compared for
dependents that exist with the same character span on both sides; heads
are compared by span, root against root.  Everything is expressed in the
whitespace-normalized character sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .align import CharSpan, normalized_spans, normalized_text
from .conllu import Sentence, Token

ROOT = "root"

KIND_IDENTICAL = "identical"
KIND_MERGE = "merge"
KIND_SPLIT = "split"
KIND_DIVERGENT = "divergent"

AGREE_BOTH = "both"
AGREE_HEAD_ONLY = "head-only"
AGREE_NEITHER = "neither"

HeadSpan = Union[CharSpan, str, None]  # CharSpan, ROOT, or None for unset


class DiffError(ValueError):
    """The two sentences do not spell the same character sequence."""

    def __init__(self, message: str, position: int):
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class TokenAlignmentEdit:
    kind: str
    left_ids: tuple[int, ...]
    right_ids: tuple[int, ...]
    span: CharSpan


@dataclass(frozen=True)
class EdgeComparison:
    dependent_span: CharSpan
    left_head_span: HeadSpan
    right_head_span: HeadSpan
    left_label: str | None
    right_label: str | None

    @property
    def agreement(self) -> str:
        if self.left_head_span == self.right_head_span:
            if self.left_label == self.right_label:
                return AGREE_BOTH
            return AGREE_HEAD_ONLY
        return AGREE_NEITHER


@dataclass(frozen=True)
class DiffSummary:
    identical: int = 0
    merge: int = 0
    split: int = 0
    divergent: int = 0
    agree_both: int = 0
    agree_head_only: int = 0
    agree_neither: int = 0
    incomparable: int = 0

    def as_dict(self) -> dict:
        return {
            "identical": self.identical,
            "merge": self.merge,
            "split": self.split,
            "divergent": self.divergent,
            "agree_both": self.agree_both,
            "agree_head_only": self.agree_head_only,
            "agree_neither": self.agree_neither,
            "incomparable": self.incomparable,
        }


@dataclass(frozen=True)
class ParseDiff:
    edits: tuple[TokenAlignmentEdit, ...]
    edges: tuple[EdgeComparison, ...]
    summary: DiffSummary

    @property
    def clean(self) -> bool:
        """True when the tokenizations and all compared edges agree."""
        return (
            self.summary.merge == 0
            and self.summary.split == 0
            and self.summary.divergent == 0
            and self.summary.agree_head_only == 0
            and self.summary.agree_neither == 0
        )


def _head_span(
    token: Token, span_by_id: dict[int, CharSpan]
) -> HeadSpan:
    if token.head is None:
        return None
    if token.head == 0:
        return ROOT
    return span_by_id.get(token.head)


def diff_parses(a: Sentence, b: Sentence) -> ParseDiff:
    """Compare two parses of the same underlying character sequence."""
    text_a = normalized_text(a.forms())
    text_b = normalized_text(b.forms())
    for pos, (x, y) in enumerate(zip(text_a, text_b)):
        if x != y:
            raise DiffError(f"character sequences differ at offset {pos}", pos)
    if len(text_a) != len(text_b):
        pos = min(len(text_a), len(text_b))
        raise DiffError(f"character sequences differ at offset {pos}", pos)
    total = len(text_a)

    spans_a = normalized_spans(a.forms())
    spans_b = normalized_spans(b.forms())
    bounds_a = {s.end for s in spans_a[:-1]}
    bounds_b = {s.end for s in spans_b[:-1]}
    cuts = sorted({0, total} | (bounds_a & bounds_b))

    edits = []
    ai = bi = 0
    for start, end in zip(cuts, cuts[1:]):
        left_ids = []
        while ai < len(spans_a) and spans_a[ai].end <= end:
            left_ids.append(a.tokens[ai].id)
            ai += 1
        right_ids = []
        while bi < len(spans_b) and spans_b[bi].end <= end:
            right_ids.append(b.tokens[bi].id)
            bi += 1
        if len(left_ids) == 1 and len(right_ids) == 1:
            kind = KIND_IDENTICAL
        elif len(right_ids) == 1:
            kind = KIND_MERGE
        elif len(left_ids) == 1:
            kind = KIND_SPLIT
        else:
            kind = KIND_DIVERGENT
        edits.append(
            TokenAlignmentEdit(
                kind=kind,
                left_ids=tuple(left_ids),
                right_ids=tuple(right_ids),
                span=CharSpan(start, end),
            )
        )

    span_to_a = {span.as_pair(): tok for span, tok in zip(spans_a, a.tokens)}
    span_to_b = {span.as_pair(): tok for span, tok in zip(spans_b, b.tokens)}
    id_to_span_a = {tok.id: span for span, tok in zip(spans_a, a.tokens)}
    id_to_span_b = {tok.id: span for span, tok in zip(spans_b, b.tokens)}

    edges = []
    for pair in sorted(set(span_to_a) & set(span_to_b)):
        ta = span_to_a[pair]
        tb = span_to_b[pair]
        edges.append(
            EdgeComparison(
                dependent_span=CharSpan(*pair),
                left_head_span=_head_span(ta, id_to_span_a),
                right_head_span=_head_span(tb, id_to_span_b),
                left_label=ta.deprel,
                right_label=tb.deprel,
            )
        )

    common = len(edges)
    summary = DiffSummary(
        identical=sum(1 for e in edits if e.kind == KIND_IDENTICAL),
        merge=sum(1 for e in edits if e.kind == KIND_MERGE),
        split=sum(1 for e in edits if e.kind == KIND_SPLIT),
        divergent=sum(1 for e in edits if e.kind == KIND_DIVERGENT),
        agree_both=sum(1 for e in edges if e.agreement == AGREE_BOTH),
        agree_head_only=sum(1 for e in edges if e.agreement == AGREE_HEAD_ONLY),
        agree_neither=sum(1 for e in edges if e.agreement == AGREE_NEITHER),
        incomparable=(len(a.tokens) - common) + (len(b.tokens) - common),
    )
    return ParseDiff(edits=tuple(edits), edges=tuple(edges), summary=summary)


def _format_head(h: HeadSpan) -> str:
    if h is None:
        return "?"
    if h == ROOT:
        return "ROOT"
    return f"[{h.start},{h.end})"


def render_text(a: Sentence, b: Sentence, diff: ParseDiff) -> str:
    """Human-readable rendering for the command line."""
    text = normalized_text(a.forms())
    lines = []
    for e in diff.edits:
        chunk = text[e.span.start : e.span.end]
        if e.kind == KIND_IDENTICAL:
            continue
        left = " ".join(a.tokens[i - 1].form for i in e.left_ids)
        right = " ".join(b.tokens[i - 1].form for i in e.right_ids)
        lines.append(
            f"  {e.kind:<9} [{e.span.start},{e.span.end}) {chunk!r}: "
            f"{left!r} | {right!r}"
        )
    for e in diff.edges:
        if e.agreement == AGREE_BOTH:
            continue
        chunk = text[e.dependent_span.start : e.dependent_span.end]
        lines.append(
            f"  edge      {chunk!r}: head {_format_head(e.left_head_span)}/"
            f"{e.left_label or '?'} | {_format_head(e.right_head_span)}/"
            f"{e.right_label or '?'} ({e.agreement})"
        )
    s = diff.summary
    lines.append(
        f"  summary   identical={s.identical} merge={s.merge} split={s.split} "
        f"divergent={s.divergent} edges: both={s.agree_both} "
        f"head-only={s.agree_head_only} neither={s.agree_neither} "
        f"incomparable={s.incomparable}"
    )
    return "\n".join(lines)
