"""Export sentences to brat standoff files (one .txt + .ann per sentence).

Tokens become T entities typed by UPOS with offsets into the .txt text;
dependency edges become R relations typed by DEPREL with the head as
Arg1.  brat type names cannot carry UD's ':' subtypes, so labels are
sanitized to [A-Za-z0-9_-].
"""

from __future__ import annotations

import re
from pathlib import Path

from .align import char_index, rendered_text
from .conllu import Document, Sentence

_BAD_TYPE_CHARS = re.compile(r"[^A-Za-z0-9_-]")


def _brat_type(label: str | None, fallback: str) -> str:
    if not label:
        return fallback
    cleaned = _BAD_TYPE_CHARS.sub("_", label)
    return cleaned or fallback


def sentence_to_brat(sentence: Sentence) -> tuple[str, str]:
    """Return (text file content, annotation file content)."""
    text = rendered_text(sentence)
    spans = char_index(sentence)
    lines = []
    for token, span in zip(sentence.tokens, spans):
        entity_type = _brat_type(token.upos, "Token")
        lines.append(f"T{token.id}\t{entity_type} {span.start} {span.end}\t{token.form}")
    rel_no = 1
    for token in sentence.tokens:
        if token.head is None or token.head == 0:
            continue
        rel_type = _brat_type(token.deprel, "dep")
        lines.append(f"R{rel_no}\t{rel_type} Arg1:T{token.head} Arg2:T{token.id}")
        rel_no += 1
    ann = "\n".join(lines)
    return text + "\n", ann + "\n" if ann else ""


def export_document(doc: Document, outdir: str | Path) -> int:
    """Write sent-NNNN.txt / sent-NNNN.ann pairs; returns the sentence count."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for i, sentence in enumerate(doc.sentences):
        text, ann = sentence_to_brat(sentence)
        (out / f"sent-{i:04d}.txt").write_text(text, encoding="utf-8")
        (out / f"sent-{i:04d}.ann").write_text(ann, encoding="utf-8")
    return len(doc.sentences)
