"""Word-boundary conversion: fuse aligned token groups into coarser words.

A group of adjacent fine tokens may merge only if exactly one member's
head lies outside the group (head 0 counts as outside); otherwise the
fused token would need two heads.  A lexicon override can whitelist
surface forms past that check.  Fusing concatenates FORM/LEMMA under the
whitespace rule (a space survives only where the original text had one
and a foreign word is adjacent), joins XPOS with a delimiter, takes UPOS
from the predicted tagging of the coarse side, and routes HEAD/DEPREL/
FEATS from the external-head member.  Afterwards ids are renumbered and
every surviving head remapped.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from .align import (
    AlignmentResult,
    MergeGroup,
    align_tokenizations,
    normalized_spans,
)
from .conllu import Document, Sentence, Token

REJECT_GROUP = "reject-group"
REJECT_SENTENCE = "reject-sentence"
FALLBACK_HEAD = "head-token"
FALLBACK_FIRST = "first-token"

# CJK ideograph blocks (unified + extensions + compatibility).  A letter
# outside these marks a token as foreign for the whitespace rule.
_CJK_RANGES = (
    (0x4E00, 0x9FFF),
    (0x3400, 0x4DBF),
    (0x20000, 0x2A6DF),
    (0x2A700, 0x2B73F),
    (0x2B740, 0x2B81F),
    (0x2B820, 0x2CEAF),
    (0xF900, 0xFAFF),
    (0x2F800, 0x2FA1F),
)


def _is_cjk(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _CJK_RANGES)


def is_foreign(form: str) -> bool:
    """True if the form contains at least one letter outside the CJK blocks."""
    return any(ch.isalpha() and not _is_cjk(ch) for ch in form)


class ConversionError(Exception):
    """Base class for conversion failures."""


class ConversionInputError(ConversionError):
    """The gold / segmented / predicted inputs do not line up."""


class SentenceConversionError(ConversionError):
    """Raised under the reject-sentence policy; carries the sentence log."""

    def __init__(self, message: str, log: "ConversionLog"):
        super().__init__(message)
        self.log = log


@dataclass(frozen=True)
class MergePolicy:
    """Knobs for the conversion; the defaults match the usual pipeline."""

    on_illegal: str = REJECT_GROUP
    lexicon_override: frozenset[str] = frozenset()
    upos_fallback: str = FALLBACK_HEAD
    xpos_delimiter: str = "+"

    def __post_init__(self):
        if self.on_illegal not in (REJECT_GROUP, REJECT_SENTENCE):
            raise ValueError(f"on_illegal must be {REJECT_GROUP!r} or {REJECT_SENTENCE!r}")
        if self.upos_fallback not in (FALLBACK_HEAD, FALLBACK_FIRST):
            raise ValueError(f"upos_fallback must be {FALLBACK_HEAD!r} or {FALLBACK_FIRST!r}")
        if not self.xpos_delimiter or "\t" in self.xpos_delimiter:
            raise ValueError("xpos_delimiter must be non-empty and tab-free")
        if not isinstance(self.lexicon_override, frozenset):
            object.__setattr__(self, "lexicon_override", frozenset(self.lexicon_override))


@dataclass(frozen=True)
class Legality:
    verdict: str  # "legal" | "illegal"
    external_head_members: tuple[int, ...]
    reason: str | None = None

    @property
    def legal(self) -> bool:
        return self.verdict == "legal"


@dataclass
class ConversionLog:
    """Per-sentence accounting of what merged and what was refused."""

    sentence: str
    merged: int = 0
    rejected: int = 0
    reasons: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    tokens_before: int = 0
    tokens_after: int = 0


def _members(sentence: Sentence, group: MergeGroup) -> list[Token]:
    if not (1 <= group.first <= group.last <= len(sentence.tokens)):
        raise ValueError(f"group {group.first}..{group.last} is out of range")
    return sentence.tokens[group.first - 1 : group.last]


def _separators(members: Sequence[Token]) -> list[str]:
    """Separator at each internal boundary: a space survives only where the
    left member allowed one and a foreign word touches the boundary."""
    seps = []
    for left, right in zip(members, members[1:]):
        keep = left.space_after and (is_foreign(left.form) or is_foreign(right.form))
        seps.append(" " if keep else "")
    return seps


def fused_form(members: Sequence[Token]) -> str:
    seps = _separators(members)
    parts = [members[0].form]
    for sep, tok in zip(seps, members[1:]):
        parts.append(sep)
        parts.append(tok.form)
    return "".join(parts)


def check_legality(sentence: Sentence, group: MergeGroup, policy: MergePolicy) -> Legality:
    """Count members whose head leaves the group; exactly one is required
    unless the fused surface form is whitelisted."""
    members = _members(sentence, group)
    unset = [m.id for m in members if m.head is None]
    if unset:
        return Legality(
            verdict="illegal",
            external_head_members=(),
            reason=f"unannotated head on token(s) {', '.join(map(str, unset))}",
        )
    external = tuple(
        m.id for m in members if not (group.first <= m.head <= group.last)  # type: ignore[operator]
    )
    if len(external) == 1:
        return Legality(verdict="legal", external_head_members=external)
    if fused_form(members) in policy.lexicon_override:
        return Legality(verdict="legal", external_head_members=external)
    if not external:
        reason = "no member has a head outside the group"
    else:
        reason = "multiple external heads on tokens " + ", ".join(map(str, external))
    return Legality(verdict="illegal", external_head_members=external, reason=reason)


def fuse_group(
    sentence: Sentence,
    group: MergeGroup,
    upos_for_group: str | None,
    policy: MergePolicy,
    legality: Legality | None = None,
) -> Token:
    """Build the fused token, still in the input sentence's id space.

    The returned token keeps id = group.first and the external member's
    old head; apply_merges renumbers both.
    """
    members = _members(sentence, group)
    if legality is None:
        legality = check_legality(sentence, group, policy)
    if not legality.legal:
        raise ValueError(f"cannot fuse illegal group {group.first}..{group.last}: {legality.reason}")
    if not legality.external_head_members:
        raise ValueError(f"group {group.first}..{group.last} has no external head to inherit")
    external = next(
        m for m in members if m.id == legality.external_head_members[0]
    )

    seps = _separators(members)
    form = fused_form(members)
    if all(m.lemma is None for m in members):
        lemma = None
    else:
        lemma_parts = [members[0].lemma or ""]
        for sep, tok in zip(seps, members[1:]):
            lemma_parts.append(sep)
            lemma_parts.append(tok.lemma or "")
        lemma = "".join(lemma_parts)
    if all(m.xpos is None for m in members):
        xpos = None
    else:
        xpos = policy.xpos_delimiter.join(m.xpos if m.xpos is not None else "_" for m in members)
    if upos_for_group is not None:
        upos = upos_for_group
    elif policy.upos_fallback == FALLBACK_HEAD:
        upos = external.upos
    else:
        upos = members[0].upos

    return Token(
        id=group.first,
        form=form,
        lemma=lemma,
        upos=upos,
        xpos=xpos,
        feats=external.feats,
        head=external.head,
        deprel=external.deprel,
        deps=None,
        misc=None if members[-1].space_after else "SpaceAfter=No",
    )


def _deps_references(deps: str, ids: set[int]) -> bool:
    for item in deps.split("|"):
        head_part = item.split(":", 1)[0]
        try:
            if int(head_part) in ids:
                return True
        except ValueError:
            continue
    return False


def _check_cover(sentence: Sentence, groups: Sequence[MergeGroup]) -> None:
    expected = 1
    for g in groups:
        if g.first != expected or g.last < g.first:
            raise ValueError(
                f"groups do not tile the sentence: expected a group starting at {expected}, "
                f"found {g.first}..{g.last}"
            )
        expected = g.last + 1
    if expected != len(sentence.tokens) + 1:
        raise ValueError(
            f"groups cover tokens 1..{expected - 1} but the sentence has "
            f"{len(sentence.tokens)} tokens"
        )


def apply_merges(
    sentence: Sentence,
    groups: Sequence[MergeGroup],
    group_upos: Sequence[str | None] | None,
    policy: MergePolicy,
) -> tuple[Sentence, ConversionLog]:
    """Fuse every legal non-singleton group, renumber ids, remap heads.

    Singleton groups pass their token through untouched, so the identity
    segmentation is the identity conversion.  Under reject-group, illegal
    groups stay as their original tokens and are logged; under
    reject-sentence any illegal group raises SentenceConversionError.
    """
    _check_cover(sentence, groups)
    if group_upos is not None and len(group_upos) != len(groups):
        raise ValueError("group_upos must be parallel to groups")

    log = ConversionLog(
        sentence=sentence.sent_id or "-",
        tokens_before=len(sentence.tokens),
    )

    # Decide each group before touching anything so that reject-sentence
    # reports every offending group, not just the first.
    decisions: list[tuple[str, MergeGroup, Legality | None]] = []
    for i, group in enumerate(groups):
        if group.size == 1:
            decisions.append(("keep", group, None))
            continue
        if sentence.passthrough:
            # Re-indexing would silently corrupt the opaque multiword-token
            # or empty-node rows, so refuse any merge in such a sentence.
            decisions.append(("reject", group, None))
            log.rejected += 1
            log.reasons.append(
                f"group {group.first}..{group.last} ({group.coarse_form}): unsupported node type"
            )
            continue
        legality = check_legality(sentence, group, policy)
        if legality.legal and not legality.external_head_members:
            # Whitelisted but cyclic: there is no head the fused token
            # could inherit.
            decisions.append(("reject", group, legality))
            log.rejected += 1
            log.reasons.append(
                f"group {group.first}..{group.last} ({group.coarse_form}): "
                "no external head to inherit"
            )
        elif legality.legal:
            decisions.append(("merge", group, legality))
            if len(legality.external_head_members) != 1:
                log.notes.append(
                    f"override {group.coarse_form}: {len(legality.external_head_members)} "
                    "external heads, leftmost kept"
                )
        else:
            decisions.append(("reject", group, legality))
            log.rejected += 1
            log.reasons.append(
                f"group {group.first}..{group.last} ({group.coarse_form}): {legality.reason}"
            )

    if policy.on_illegal == REJECT_SENTENCE and log.rejected:
        log.tokens_after = log.tokens_before
        raise SentenceConversionError(
            f"sentence {log.sentence}: {log.rejected} illegal group(s)", log
        )

    merged_ids: set[int] = set()
    for kind, group, _ in decisions:
        if kind == "merge":
            merged_ids.update(range(group.first, group.last + 1))

    mapping: dict[int, int] = {}
    staged: list[Token] = []  # tokens still carrying old ids/heads
    for i, (kind, group, legality) in enumerate(decisions):
        if kind == "merge":
            fused = fuse_group(
                sentence, group, group_upos[i] if group_upos else None, policy, legality
            )
            new_id = len(staged) + 1
            for old in range(group.first, group.last + 1):
                mapping[old] = new_id
            staged.append(fused)
            log.merged += 1
        else:
            for old in range(group.first, group.last + 1):
                new_id = len(staged) + 1
                mapping[old] = new_id
                staged.append(sentence.tokens[old - 1])

    new_tokens: list[Token] = []
    for new_id, tok in enumerate(staged, start=1):
        head = tok.head
        if head is not None and head != 0:
            head = mapping[head]
        deps = tok.deps
        if deps is not None and merged_ids and _deps_references(deps, merged_ids):
            deps = None
        new_tokens.append(replace(tok, id=new_id, head=head, deps=deps))

    log.tokens_after = len(new_tokens)
    converted = Sentence(
        comments=list(sentence.comments),
        tokens=new_tokens,
        passthrough=list(sentence.passthrough),
    )
    return converted, log


def identity_groups(sentence: Sentence) -> list[MergeGroup]:
    return [MergeGroup(first=t.id, last=t.id, coarse_form=t.form) for t in sentence.tokens]


def _predicted_upos_by_span(predicted: Sentence) -> dict[tuple[int, int], str | None]:
    spans = normalized_spans([t.form for t in predicted.tokens])
    return {span.as_pair(): tok.upos for span, tok in zip(spans, predicted.tokens)}


def convert_sentence(
    fine: Sentence,
    coarse_forms: Sequence[str],
    predicted: Sentence | None,
    policy: MergePolicy,
    *,
    nfc: bool = False,
) -> tuple[Sentence, ConversionLog, AlignmentResult]:
    """Align one sentence against a coarse tokenization and merge.

    On alignment mismatch or a reject-sentence refusal the original
    sentence is returned unmodified with the reason logged.
    """
    alignment = align_tokenizations(fine, coarse_forms, nfc=nfc)
    if not alignment.aligned:
        log = ConversionLog(
            sentence=fine.sent_id or "-",
            tokens_before=len(fine.tokens),
            tokens_after=len(fine.tokens),
        )
        log.reasons.append(
            f"alignment mismatch: {alignment.reason} at char {alignment.position}"
        )
        return fine, log, alignment

    group_upos: list[str | None] = [None] * len(alignment.groups)
    lookup_misses: list[str] = []
    if predicted is not None:
        by_span = _predicted_upos_by_span(predicted)
        fine_spans = normalized_spans([t.form for t in fine.tokens])
        for i, group in enumerate(alignment.groups):
            if group.size == 1:
                continue
            span = (fine_spans[group.first - 1].start, fine_spans[group.last - 1].end)
            upos = by_span.get(span)
            if upos is None:
                lookup_misses.append(group.coarse_form)
            group_upos[i] = upos

    try:
        converted, log = apply_merges(fine, alignment.groups, group_upos, policy)
    except SentenceConversionError as exc:
        exc.log.reasons.append("sentence rejected; left unconverted")
        return fine, exc.log, alignment
    for form in lookup_misses:
        log.notes.append(f"predicted UPOS not found for {form}; used {policy.upos_fallback}")
    return converted, log, alignment


def convert_corpus(
    gsd: Document,
    segmented: Sequence[Sequence[str]],
    predicted: Document | None,
    policy: MergePolicy,
    *,
    nfc: bool = False,
) -> tuple[Document, list[ConversionLog]]:
    """Run the per-sentence pipeline (align, legality, fuse, re-index)
    over positionally paired inputs."""
    if len(segmented) != len(gsd.sentences):
        raise ConversionInputError(
            f"segmented input has {len(segmented)} sentences, "
            f"CoNLL-U input has {len(gsd.sentences)}"
        )
    if predicted is not None and len(predicted.sentences) != len(gsd.sentences):
        raise ConversionInputError(
            f"predicted input has {len(predicted.sentences)} sentences, "
            f"CoNLL-U input has {len(gsd.sentences)}"
        )

    out_sentences: list[Sentence] = []
    logs: list[ConversionLog] = []
    for i, fine in enumerate(gsd.sentences):
        pred_sentence = predicted.sentences[i] if predicted is not None else None
        converted, log, _ = convert_sentence(
            fine, list(segmented[i]), pred_sentence, policy, nfc=nfc
        )
        if log.sentence == "-":
            log.sentence = str(i)
        out_sentences.append(converted)
        logs.append(log)
    return Document(sentences=out_sentences, source_name=gsd.source_name), logs


def format_log_lines(logs: Sequence[ConversionLog]) -> str:
    """Line-oriented log: sent TAB merged TAB rejected TAB reason-list."""
    lines = []
    for log in logs:
        reasons = "; ".join(log.reasons + log.notes) or "-"
        lines.append(f"{log.sentence}\t{log.merged}\t{log.rejected}\t{reasons}")
    return "\n".join(lines) + ("\n" if lines else "")
