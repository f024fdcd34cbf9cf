"""Shared generators for randomized tests: valid trees, random sentences,
and brute-force reference implementations used as oracles."""

from __future__ import annotations

import random
from pathlib import Path

from wbkit.conllu import Sentence, Token

DATA = Path(__file__).parent / "data"

CJK_POOL = "人山水路天文台年学校图书馆中南北大小长好"
LATIN_POOL = "abXY"
LABELS = ["nsubj", "obj", "root", "advmod", "compound", "punct", "acl:relcl"]
UPOS_POOL = ["NOUN", "VERB", "ADJ", "PROPN", "ADV", "PRON", "PUNCT"]


def random_heads(n: int, rng: random.Random) -> list[int]:
    """A uniform-ish random valid tree: single root, acyclic, connected."""
    order = list(range(1, n + 1))
    rng.shuffle(order)
    heads = [0] * (n + 1)
    for pos, node in enumerate(order):
        heads[node] = 0 if pos == 0 else rng.choice(order[:pos])
    return heads[1:]


def make_sentence(
    forms: list[str],
    heads: list[int] | None = None,
    deprels: list[str] | None = None,
    space_after: bool = False,
) -> Sentence:
    misc = None if space_after else "SpaceAfter=No"
    tokens = []
    for i, form in enumerate(forms, start=1):
        tokens.append(
            Token(
                id=i,
                form=form,
                lemma=form,
                upos="NOUN",
                head=heads[i - 1] if heads else None,
                deprel=deprels[i - 1] if deprels else None,
                misc=misc,
            )
        )
    return Sentence(tokens=tokens)


def random_tree_sentence(n: int, rng: random.Random, *, allow_latin: bool = False) -> Sentence:
    forms = []
    for _ in range(n):
        pool = LATIN_POOL if (allow_latin and rng.random() < 0.15) else CJK_POOL
        length = rng.randint(1, 3)
        forms.append("".join(rng.choice(pool) for _ in range(length)))
    heads = random_heads(n, rng)
    deprels = [rng.choice(LABELS) for _ in range(n)]
    return make_sentence(forms, heads, deprels)


def partitions_of(n: int):
    """All 2^(n-1) ways to cut a length-n sequence into contiguous pieces,
    as lists of (start, end) pairs."""
    if n == 0:
        yield []
        return
    for mask in range(1 << (n - 1)):
        cuts = [0] + [i + 1 for i in range(n - 1) if mask & (1 << i)] + [n]
        yield list(zip(cuts, cuts[1:]))


def crossing_count(heads: list[int], first: int, last: int) -> int:
    """Brute-force count of group members whose head leaves [first, last]."""
    count = 0
    for tid in range(first, last + 1):
        h = heads[tid - 1]
        if not (first <= h <= last):
            count += 1
    return count
