"""Bit-exact reading, validation, and writing of CoNLL-U documents.

The reader keeps everything it sees verbatim: comment lines in order,
``_`` markers, and opaque multiword-token / empty-node rows, so that
``serialize_document(parse_document(x)) == x`` byte for byte on any
well-formed input.  Documents are never mutated after construction and
are safe to share across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

UNSET = "_"

_TOKEN_ID = re.compile(r"[1-9][0-9]*")
_RANGE_ID = re.compile(r"[1-9][0-9]*-[1-9][0-9]*")
_EMPTY_ID = re.compile(r"[0-9]+\.[1-9][0-9]*")
_HEAD = re.compile(r"0|[1-9][0-9]*")


class ConlluError(Exception):
    """Base class for CoNLL-U reading errors."""


class EncodingError(ConlluError):
    """Input is not valid UTF-8."""


class ParseError(ConlluError):
    """A line is malformed (field count, bad id, CRLF, and so on)."""

    def __init__(self, message: str, source: str, line_no: int):
        super().__init__(f"{source}:{line_no}: {message}")
        self.source = source
        self.line_no = line_no


class StructureError(ConlluError):
    """A sentence block is malformed (non-contiguous ids, no tokens)."""

    def __init__(self, message: str, source: str, line_no: int):
        super().__init__(f"{source}:{line_no}: {message}")
        self.source = source
        self.line_no = line_no


@dataclass(frozen=True)
class Token:
    """One regular CoNLL-U row.  ``None`` means the field held ``_``.

    FORM is the exception: a literal ``_`` there is kept as text, per UD
    convention.  FEATS, DEPS, and MISC are kept as their raw ``|``-joined
    text so serialization cannot reorder or normalize them.
    """

    id: int
    form: str
    lemma: str | None = None
    upos: str | None = None
    xpos: str | None = None
    feats: str | None = None
    head: int | None = None
    deprel: str | None = None
    deps: str | None = None
    misc: str | None = None

    @property
    def space_after(self) -> bool:
        """False iff MISC carries SpaceAfter=No."""
        if self.misc is None:
            return True
        return "SpaceAfter=No" not in self.misc.split("|")


@dataclass
class Sentence:
    """Ordered tokens plus the comment lines that preceded them.

    ``passthrough`` holds multiword-token range rows and empty-node rows
    as opaque raw lines, keyed by how many regular tokens preceded them;
    they are reproduced in place on serialization.  Treat instances as
    immutable once built.
    """

    comments: list[str] = field(default_factory=list)
    tokens: list[Token] = field(default_factory=list)
    passthrough: list[tuple[int, str]] = field(default_factory=list)

    @property
    def sent_id(self) -> str | None:
        for line in self.comments:
            body = line[1:].strip()
            if body.startswith("sent_id") and "=" in body:
                return body.split("=", 1)[1].strip()
        return None

    def forms(self) -> list[str]:
        return [t.form for t in self.tokens]


@dataclass
class Document:
    sentences: list[Sentence] = field(default_factory=list)
    source_name: str = "<string>"


@dataclass(frozen=True)
class Violation:
    """One broken well-formedness rule; token_id 0 means sentence-level."""

    token_id: int
    rule: str
    message: str


def _parse_token_line(line: str, source: str, line_no: int) -> Token:
    fields = line.split("\t")
    if len(fields) != 10:
        raise ParseError(
            f"expected 10 tab-separated fields, found {len(fields)}", source, line_no
        )
    for idx, value in enumerate(fields):
        if value == "":
            raise ParseError(f"empty field in column {idx + 1}", source, line_no)
    raw_id, form, lemma, upos, xpos, feats, raw_head, deprel, deps, misc = fields
    token_id = int(raw_id)
    if raw_head == UNSET:
        head = None
    elif _HEAD.fullmatch(raw_head):
        head = int(raw_head)
    else:
        raise ParseError(f"HEAD is not an integer >= 0: {raw_head!r}", source, line_no)

    def opt(value: str) -> str | None:
        return None if value == UNSET else value

    return Token(
        id=token_id,
        form=form,
        lemma=opt(lemma),
        upos=opt(upos),
        xpos=opt(xpos),
        feats=opt(feats),
        head=head,
        deprel=opt(deprel),
        deps=opt(deps),
        misc=opt(misc),
    )


def parse_document(data: bytes | str, source_name: str = "<string>") -> Document:
    """Parse CoNLL-U text into a Document, preserving every byte of content.

    Raises EncodingError for non-UTF-8 bytes, ParseError for malformed
    lines (with line numbers), and StructureError for broken sentence
    blocks (duplicate or non-contiguous ids, token-less blocks).
    """
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise EncodingError(f"{source_name}: input is not valid UTF-8: {exc}") from None
    else:
        text = data

    if text == "":
        return Document(sentences=[], source_name=source_name)
    lines = text.split("\n")
    if text.endswith("\n"):
        lines.pop()

    sentences: list[Sentence] = []
    comments: list[str] = []
    tokens: list[Token] = []
    passthrough: list[tuple[int, str]] = []
    block_open = False
    block_start = 1

    def close_block(line_no: int) -> None:
        nonlocal comments, tokens, passthrough, block_open
        if not tokens:
            raise StructureError("sentence block has no token lines", source_name, block_start)
        for pos, tok in enumerate(tokens, start=1):
            if tok.id != pos:
                raise StructureError(
                    f"token ids are not contiguous: expected {pos}, found {tok.id}",
                    source_name,
                    line_no,
                )
        sentences.append(Sentence(comments=comments, tokens=tokens, passthrough=passthrough))
        comments, tokens, passthrough = [], [], []
        block_open = False

    for line_no, line in enumerate(lines, start=1):
        if line.endswith("\r"):
            raise ParseError(
                "CRLF line endings are not supported; convert the file to LF",
                source_name,
                line_no,
            )
        if line == "":
            if not block_open:
                raise ParseError("unexpected blank line", source_name, line_no)
            close_block(line_no)
            continue
        if not block_open:
            block_open = True
            block_start = line_no
        if line.startswith("#"):
            if tokens or passthrough:
                raise ParseError("comment line after token lines", source_name, line_no)
            comments.append(line)
            continue
        raw_id = line.split("\t", 1)[0]
        if _RANGE_ID.fullmatch(raw_id) or _EMPTY_ID.fullmatch(raw_id):
            if len(line.split("\t")) != 10:
                raise ParseError("expected 10 tab-separated fields", source_name, line_no)
            passthrough.append((len(tokens), line))
            continue
        if not _TOKEN_ID.fullmatch(raw_id):
            raise ParseError(f"unrecognized token id {raw_id!r}", source_name, line_no)
        tokens.append(_parse_token_line(line, source_name, line_no))

    if block_open:
        close_block(len(lines))
    return Document(sentences=sentences, source_name=source_name)


def load_document(path: str | Path) -> Document:
    """Read and parse a CoNLL-U file."""
    raw = Path(path).read_bytes()
    return parse_document(raw, source_name=str(path))


def _render_token(token: Token) -> str:
    def opt(value: str | None) -> str:
        return UNSET if value is None else value

    head = UNSET if token.head is None else str(token.head)
    return "\t".join(
        [
            str(token.id),
            token.form,
            opt(token.lemma),
            opt(token.upos),
            opt(token.xpos),
            opt(token.feats),
            head,
            opt(token.deprel),
            opt(token.deps),
            opt(token.misc),
        ]
    )


def serialize_sentence(sentence: Sentence) -> str:
    """Render one sentence block, without the trailing blank line."""
    lines = list(sentence.comments)
    queue = list(sentence.passthrough)
    qi = 0
    for pos, token in enumerate(sentence.tokens):
        while qi < len(queue) and queue[qi][0] == pos:
            lines.append(queue[qi][1])
            qi += 1
        lines.append(_render_token(token))
    while qi < len(queue):
        lines.append(queue[qi][1])
        qi += 1
    return "\n".join(lines)


def serialize_document(doc: Document) -> str:
    """Render a Document back to CoNLL-U text (one blank line per sentence)."""
    parts = [serialize_sentence(s) + "\n\n" for s in doc.sentences]
    return "".join(parts)


def dump_document(doc: Document, path: str | Path) -> None:
    Path(path).write_bytes(serialize_document(doc).encode("utf-8"))


def validate_sentence(sentence: Sentence) -> list[Violation]:
    """Check single-root, in-range, acyclic head structure.

    Violations are data, not errors; an empty list means the sentence is a
    well-formed tree.  With ids 1..n and every head set and in range, a
    single root plus acyclicity implies connectivity, so no separate
    reachability rule is needed.
    """
    violations: list[Violation] = []
    n = len(sentence.tokens)
    heads: dict[int, int] = {}
    for tok in sentence.tokens:
        if tok.head is None:
            violations.append(Violation(tok.id, "unset-head", f"token {tok.id} has unset head"))
        elif tok.head > n:
            violations.append(
                Violation(
                    tok.id,
                    "head-out-of-range",
                    f"token {tok.id} has head {tok.head}, but the sentence has {n} tokens",
                )
            )
        else:
            heads[tok.id] = tok.head

    roots = [tid for tid, h in heads.items() if h == 0]
    has_unset = any(v.rule == "unset-head" for v in violations)
    if not roots and not has_unset:
        # An unset head might have been the root; complain only when all
        # heads are known.
        violations.append(Violation(0, "no-root", "no token has head 0"))
    for extra in roots[1:]:
        violations.append(
            Violation(
                extra,
                "multiple-roots",
                f"token {extra} has head 0, but token {roots[0]} is already the root",
            )
        )

    # Cycle detection over the head chains; each distinct cycle reported once.
    state: dict[int, int] = {}  # 0 unvisited (absent), 1 on current path, 2 done
    for start in heads:
        if state.get(start):
            continue
        path: list[int] = []
        node = start
        while node in heads and heads[node] != 0 and state.get(node, 0) == 0:
            state[node] = 1
            path.append(node)
            node = heads[node]
        if state.get(node) == 1:
            cycle = path[path.index(node) :]
            chain = "→".join(str(i) for i in cycle + [node])
            violations.append(
                Violation(min(cycle), "cycle", f"cycle through {chain}")
            )
        for visited in path:
            state[visited] = 2

    violations.sort(key=lambda v: (v.token_id, v.rule))
    return violations
