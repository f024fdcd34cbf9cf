"""Read-only HTTP API over a catalog of word-boundary scheme variants.

The catalog is loaded once and never mutated, so responses are
byte-stable and requests need no coordination.  All conversions and
evaluations of interest happen offline through the CLI; the service only
exposes what was loaded, plus diffs and metric reports computed from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import diff as diffmod
from . import metrics
from .align import CharSpan, normalized_spans, normalized_text
from .conllu import Document, Sentence, load_document


class CatalogError(Exception):
    """A scheme file failed to load or the schemes do not line up."""


@dataclass(frozen=True)
class SchemeEntry:
    id: str
    document: Document
    provenance: str


@dataclass(frozen=True)
class SchemeCatalog:
    entries: tuple[SchemeEntry, ...]

    @property
    def sentence_count(self) -> int:
        return len(self.entries[0].document.sentences) if self.entries else 0

    def ids(self) -> list[str]:
        return [e.id for e in self.entries]

    def get(self, scheme_id: str) -> SchemeEntry | None:
        for entry in self.entries:
            if entry.id == scheme_id:
                return entry
        return None


def build_catalog(documents: Sequence[tuple[str, Document, str]]) -> SchemeCatalog:
    """Validate scheme uniqueness, sentence counts, and shared texts."""
    seen: set[str] = set()
    entries: list[SchemeEntry] = []
    for scheme_id, doc, provenance in documents:
        if scheme_id in seen:
            raise CatalogError(f"duplicate scheme id {scheme_id!r}")
        seen.add(scheme_id)
        entries.append(SchemeEntry(id=scheme_id, document=doc, provenance=provenance))
    if not entries:
        raise CatalogError("catalog is empty")

    first = entries[0]
    count = len(first.document.sentences)
    for entry in entries[1:]:
        if len(entry.document.sentences) != count:
            raise CatalogError(
                f"scheme {entry.id!r} has {len(entry.document.sentences)} sentences, "
                f"scheme {first.id!r} has {count}"
            )
    for i in range(count):
        reference = normalized_text(first.document.sentences[i].forms())
        for entry in entries[1:]:
            text = normalized_text(entry.document.sentences[i].forms())
            if text != reference:
                raise CatalogError(
                    f"scheme {entry.id!r}, sentence {i}: character sequence differs "
                    f"from scheme {first.id!r}"
                )
    return SchemeCatalog(entries=tuple(entries))


def load_catalog(config: Mapping[str, str | Path]) -> SchemeCatalog:
    """Load a scheme-id to CoNLL-U-path map into a validated catalog."""
    documents = []
    for scheme_id, path in config.items():
        try:
            doc = load_document(path)
        except Exception as exc:
            raise CatalogError(f"scheme {scheme_id!r}: {exc}") from exc
        documents.append((scheme_id, doc, str(path)))
    return build_catalog(documents)


def parse_config_text(text: str) -> dict[str, str]:
    """Parse the line-oriented `id=path` config format."""
    mapping: dict[str, str] = {}
    for line_no, line in enumerate(text.split("\n"), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise CatalogError(f"config line {line_no}: expected id=path, got {line!r}")
        scheme_id, path = stripped.split("=", 1)
        scheme_id = scheme_id.strip()
        path = path.strip()
        if not scheme_id or not path:
            raise CatalogError(f"config line {line_no}: empty id or path")
        if scheme_id in mapping:
            raise CatalogError(f"config line {line_no}: duplicate scheme id {scheme_id!r}")
        mapping[scheme_id] = path
    return mapping


def _span_json(span: CharSpan) -> list[int]:
    return [span.start, span.end]


def _head_span_json(value: diffmod.HeadSpan):
    if value is None:
        return None
    if value == diffmod.ROOT:
        return "root"
    return _span_json(value)


def sentence_payload(sentence: Sentence, index: int) -> dict:
    text = normalized_text(sentence.forms())
    spans = normalized_spans(sentence.forms())
    tokens = [
        {
            "id": tok.id,
            "form": tok.form,
            "span": _span_json(span),
            "upos": tok.upos,
            "xpos": tok.xpos,
        }
        for tok, span in zip(sentence.tokens, spans)
    ]
    edges = [
        {"dependent": tok.id, "head": tok.head, "deprel": tok.deprel}
        for tok in sentence.tokens
        if tok.head is not None
    ]
    return {
        "index": index,
        "sent_id": sentence.sent_id,
        "text": text,
        "tokens": tokens,
        "edges": edges,
    }


def diff_payload(result: diffmod.ParseDiff) -> dict:
    return {
        "edits": [
            {
                "kind": e.kind,
                "left_ids": list(e.left_ids),
                "right_ids": list(e.right_ids),
                "span": _span_json(e.span),
            }
            for e in result.edits
        ],
        "edges": [
            {
                "dependent_span": _span_json(e.dependent_span),
                "left_head_span": _head_span_json(e.left_head_span),
                "right_head_span": _head_span_json(e.right_head_span),
                "left_label": e.left_label,
                "right_label": e.right_label,
                "agreement": e.agreement,
            }
            for e in result.edges
        ],
        "summary": result.summary.as_dict(),
    }


def create_app(catalog: SchemeCatalog, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="wbkit scheme viewer API", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def bad_request(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc.errors())})

    def scheme_or_404(scheme_id: str) -> SchemeEntry:
        entry = catalog.get(scheme_id)
        if entry is None:
            raise HTTPException(
                status_code=404,
                detail=f"unknown scheme {scheme_id!r}; known: {', '.join(catalog.ids())}",
            )
        return entry

    def sentence_or_404(entry: SchemeEntry, sent: int) -> Sentence:
        if sent < 0 or sent >= len(entry.document.sentences):
            raise HTTPException(
                status_code=404,
                detail=f"sentence index {sent} out of range 0..{catalog.sentence_count - 1}",
            )
        return entry.document.sentences[sent]

    @app.get("/api/schemes")
    def schemes():
        return {
            "schemes": [{"id": e.id, "provenance": e.provenance} for e in catalog.entries],
            "sentence_count": catalog.sentence_count,
        }

    @app.get("/api/sentences")
    def sentences(scheme: str, offset: int = 0, limit: int = 50):
        entry = scheme_or_404(scheme)
        if offset < 0 or limit < 0:
            raise HTTPException(status_code=400, detail="offset and limit must be >= 0")
        window = entry.document.sentences[offset : offset + limit]
        return {
            "scheme": scheme,
            "offset": offset,
            "limit": limit,
            "total": catalog.sentence_count,
            "sentences": [
                {
                    "index": offset + i,
                    "sent_id": s.sent_id,
                    "text": normalized_text(s.forms()),
                }
                for i, s in enumerate(window)
            ],
        }

    @app.get("/api/parse")
    def parse(scheme: str, sent: int):
        entry = scheme_or_404(scheme)
        sentence = sentence_or_404(entry, sent)
        return {"scheme": scheme, **sentence_payload(sentence, sent)}

    @app.get("/api/diff")
    def diff(left: str, right: str, sent: int):
        left_entry = scheme_or_404(left)
        right_entry = scheme_or_404(right)
        a = sentence_or_404(left_entry, sent)
        b = sentence_or_404(right_entry, sent)
        result = diffmod.diff_parses(a, b)
        return {"left": left, "right": right, "index": sent, **diff_payload(result)}

    @app.get("/api/eval")
    def evaluate(left: str, right: str):
        left_entry = scheme_or_404(left)
        right_entry = scheme_or_404(right)
        seg = metrics.corpus_segmentation(left_entry.document, right_entry.document)
        attachment = None
        skipped = None
        try:
            att = metrics.corpus_attachment(left_entry.document, right_entry.document)
            attachment = att.summary.as_dict()
        except metrics.TokenizationMismatch as exc:
            skipped = str(exc)
        return {
            "left": left,
            "right": right,
            "segmentation": seg.summary.as_dict(),
            "attachment": attachment,
            "attachment_skipped_reason": skipped,
        }

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="viewer")

    return app


def serve(
    catalog: SchemeCatalog,
    host: str = "127.0.0.1",
    port: int = 8000,
    static_dir: str | Path | None = None,
) -> None:
    import uvicorn

    uvicorn.run(create_app(catalog, static_dir=static_dir), host=host, port=port, log_level="info")


# Response shapes, kept next to the handlers that produce them.  The test
# suite validates every endpoint against these.
SCHEMAS: dict[str, dict] = {
    "/api/schemes": {
        "type": "object",
        "required": ["schemes", "sentence_count"],
        "properties": {
            "schemes": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["id", "provenance"],
                    "properties": {
                        "id": {"type": "string"},
                        "provenance": {"type": "string"},
                    },
                },
            },
            "sentence_count": {"type": "integer", "minimum": 0},
        },
    },
    "/api/sentences": {
        "type": "object",
        "required": ["scheme", "offset", "limit", "total", "sentences"],
        "properties": {
            "scheme": {"type": "string"},
            "offset": {"type": "integer"},
            "limit": {"type": "integer"},
            "total": {"type": "integer"},
            "sentences": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["index", "sent_id", "text"],
                    "properties": {
                        "index": {"type": "integer"},
                        "sent_id": {"type": ["string", "null"]},
                        "text": {"type": "string"},
                    },
                },
            },
        },
    },
    "/api/parse": {
        "type": "object",
        "required": ["scheme", "index", "sent_id", "text", "tokens", "edges"],
        "properties": {
            "scheme": {"type": "string"},
            "index": {"type": "integer"},
            "sent_id": {"type": ["string", "null"]},
            "text": {"type": "string"},
            "tokens": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["id", "form", "span", "upos", "xpos"],
                    "properties": {
                        "id": {"type": "integer", "minimum": 1},
                        "form": {"type": "string"},
                        "span": {
                            "type": "array",
                            "items": {"type": "integer", "minimum": 0},
                            "minItems": 2,
                            "maxItems": 2,
                        },
                        "upos": {"type": ["string", "null"]},
                        "xpos": {"type": ["string", "null"]},
                    },
                },
            },
            "edges": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["dependent", "head", "deprel"],
                    "properties": {
                        "dependent": {"type": "integer", "minimum": 1},
                        "head": {"type": "integer", "minimum": 0},
                        "deprel": {"type": ["string", "null"]},
                    },
                },
            },
        },
    },
    "/api/diff": {
        "type": "object",
        "required": ["left", "right", "index", "edits", "edges", "summary"],
        "properties": {
            "left": {"type": "string"},
            "right": {"type": "string"},
            "index": {"type": "integer"},
            "edits": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["kind", "left_ids", "right_ids", "span"],
                    "properties": {
                        "kind": {
                            "enum": ["identical", "merge", "split", "divergent"]
                        },
                        "left_ids": {"type": "array", "items": {"type": "integer"}},
                        "right_ids": {"type": "array", "items": {"type": "integer"}},
                        "span": {
                            "type": "array",
                            "items": {"type": "integer", "minimum": 0},
                            "minItems": 2,
                            "maxItems": 2,
                        },
                    },
                },
            },
            "edges": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": [
                        "dependent_span",
                        "left_head_span",
                        "right_head_span",
                        "left_label",
                        "right_label",
                        "agreement",
                    ],
                    "properties": {
                        "agreement": {"enum": ["both", "head-only", "neither"]},
                    },
                },
            },
            "summary": {
                "type": "object",
                "required": [
                    "identical",
                    "merge",
                    "split",
                    "divergent",
                    "agree_both",
                    "agree_head_only",
                    "agree_neither",
                    "incomparable",
                ],
            },
        },
    },
    "/api/eval": {
        "type": "object",
        "required": [
            "left",
            "right",
            "segmentation",
            "attachment",
            "attachment_skipped_reason",
        ],
        "properties": {
            "left": {"type": "string"},
            "right": {"type": "string"},
            "segmentation": {
                "type": "object",
                "required": [
                    "gold_spans",
                    "pred_spans",
                    "matched",
                    "precision",
                    "recall",
                    "f1",
                ],
            },
            "attachment": {
                "type": ["object", "null"],
                "required": [
                    "token_total",
                    "head_correct",
                    "head_and_label_correct",
                    "uas",
                    "las",
                ],
            },
            "attachment_skipped_reason": {"type": ["string", "null"]},
        },
    },
}
