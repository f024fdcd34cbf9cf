"""Character-level alignment of two tokenizations of one sentence.

All cross-tokenization coordinates live in the whitespace-normalized
character sequence (every Unicode whitespace character stripped), which
is the one thing different segmentations of a sentence share.  Raw
coordinates, with a space rendered after tokens that do not carry
SpaceAfter=No, are provided by char_index / rendered_text for consumers
that need display text (brat export, for one).
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Sequence

from .conllu import Sentence

MISMATCH_BOUNDARY = "boundary-splits-fine-token"
MISMATCH_CHARS = "character-sequence-differs"
MISMATCH_LEFTOVER_COARSE = "leftover-coarse-tokens"
MISMATCH_LEFTOVER_FINE = "leftover-fine-tokens"


class SegmentedFileError(ValueError):
    """A segmented-sentence file breaks the one-line, space-separated format."""


@dataclass(frozen=True)
class CharSpan:
    """Half-open character range [start, end) in Unicode scalar values."""

    start: int
    end: int

    def as_pair(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True)
class MergeGroup:
    """A contiguous run of fine tokens (ids first..last) spanning one coarse token."""

    first: int
    last: int
    coarse_form: str

    @property
    def size(self) -> int:
        return self.last - self.first + 1


@dataclass(frozen=True)
class AlignmentResult:
    groups: tuple[MergeGroup, ...]
    status: str  # "aligned" | "mismatch"
    reason: str | None = None
    position: int | None = None

    @property
    def aligned(self) -> bool:
        return self.status == "aligned"


def strip_spaces(text: str) -> str:
    """Drop every Unicode whitespace character."""
    return "".join(ch for ch in text if not ch.isspace())


def normalized_text(forms: Sequence[str]) -> str:
    return "".join(strip_spaces(f) for f in forms)


def normalized_spans(forms: Sequence[str]) -> list[CharSpan]:
    """Cumulative spans of the whitespace-stripped forms."""
    spans = []
    pos = 0
    for form in forms:
        width = len(strip_spaces(form))
        spans.append(CharSpan(pos, pos + width))
        pos += width
    return spans


def char_index(sentence: Sentence) -> list[CharSpan]:
    """Raw spans of each token, one space interposed unless SpaceAfter=No."""
    spans = []
    pos = 0
    for token in sentence.tokens:
        width = len(token.form)
        spans.append(CharSpan(pos, pos + width))
        pos += width
        if token.space_after:
            pos += 1
    return spans


def rendered_text(sentence: Sentence) -> str:
    """The text char_index spans index into (no trailing space)."""
    parts = []
    for i, token in enumerate(sentence.tokens):
        parts.append(token.form)
        if token.space_after and i + 1 < len(sentence.tokens):
            parts.append(" ")
    return "".join(parts)


def _mismatch(reason: str, position: int) -> AlignmentResult:
    return AlignmentResult(groups=(), status="mismatch", reason=reason, position=position)


def align_tokenizations(
    fine: Sentence, coarse_forms: Sequence[str], *, nfc: bool = False
) -> AlignmentResult:
    """Group fine tokens under the coarse tokenization of the same text.

    Aligned iff the coarse and fine sides spell the same normalized
    character sequence and every coarse token boundary falls on a fine
    token boundary; fine tokens are never split.  With nfc=True both
    sides are NFC-normalized before comparison (off by default to keep
    alignment strict).
    """
    fine_norm = [strip_spaces(t.form) for t in fine.tokens]
    coarse_norm = [strip_spaces(f) for f in coarse_forms]
    if nfc:
        fine_norm = [unicodedata.normalize("NFC", f) for f in fine_norm]
        coarse_norm = [unicodedata.normalize("NFC", f) for f in coarse_norm]

    fine_text = "".join(fine_norm)
    coarse_text = "".join(coarse_norm)
    for pos, (a, b) in enumerate(zip(fine_text, coarse_text)):
        if a != b:
            return _mismatch(MISMATCH_CHARS, pos)
    if len(coarse_text) > len(fine_text):
        return _mismatch(MISMATCH_LEFTOVER_COARSE, len(fine_text))
    if len(fine_text) > len(coarse_text):
        return _mismatch(MISMATCH_LEFTOVER_FINE, len(coarse_text))

    groups = []
    fi = 0
    pos = 0
    for coarse_form, norm in zip(coarse_forms, coarse_norm):
        end = pos + len(norm)
        first = fi + 1
        while pos < end:
            pos += len(fine_norm[fi])
            fi += 1
        if pos != end:
            return _mismatch(MISMATCH_BOUNDARY, end)
        if fi < first:
            # Zero-width coarse token (whitespace-only): indivisible from
            # its neighbors, refuse rather than invent a grouping.
            return _mismatch(MISMATCH_BOUNDARY, end)
        groups.append(MergeGroup(first=first, last=fi, coarse_form=coarse_form))
    if fi < len(fine_norm):
        # Only zero-width fine tokens can remain; fold them into the last
        # group so that coverage stays total.
        if not groups:
            return _mismatch(MISMATCH_LEFTOVER_FINE, 0)
        groups[-1] = MergeGroup(
            first=groups[-1].first, last=len(fine_norm), coarse_form=groups[-1].coarse_form
        )
    return AlignmentResult(groups=tuple(groups), status="aligned")


def read_segmented(text: str) -> list[list[str]]:
    """Parse a segmented-sentence file: one sentence per line, tokens
    separated by single ASCII spaces."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    sentences = []
    for line_no, line in enumerate(lines, start=1):
        if line.endswith("\r"):
            raise SegmentedFileError(f"line {line_no}: CRLF line endings are not supported")
        if line == "":
            # A blank interior line would silently shift every later
            # sentence against the CoNLL-U side.
            raise SegmentedFileError(f"line {line_no}: blank line")
        tokens = line.split(" ")
        if any(t == "" for t in tokens):
            raise SegmentedFileError(
                f"line {line_no}: empty token (double or leading/trailing space)"
            )
        sentences.append(tokens)
    return sentences
