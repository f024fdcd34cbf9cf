import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import LABELS, make_sentence, random_heads
from wbkit.align import CharSpan
from wbkit.diff import (
    AGREE_BOTH,
    AGREE_HEAD_ONLY,
    AGREE_NEITHER,
    DiffError,
    KIND_IDENTICAL,
    KIND_MERGE,
    KIND_SPLIT,
    ROOT,
    diff_parses,
    render_text,
)


def road_fine():
    return make_sentence(
        ["中山", "南", "路", "很", "长"],
        heads=[3, 3, 4, 5, 0],
        deprels=["compound", "compound", "nsubj", "advmod", "root"],
    )


def road_coarse():
    return make_sentence(
        ["中山南路", "很", "长"],
        heads=[3, 3, 0],
        deprels=["nsubj", "advmod", "root"],
    )


def test_diff_self_is_clean():
    s = road_fine()
    result = diff_parses(s, s)
    assert result.clean
    assert all(e.kind == KIND_IDENTICAL for e in result.edits)
    assert all(e.agreement == AGREE_BOTH for e in result.edges)
    assert result.summary.incomparable == 0


def test_diff_merge_edit():
    result = diff_parses(road_fine(), road_coarse())
    merges = [e for e in result.edits if e.kind == KIND_MERGE]
    assert len(merges) == 1
    edit = merges[0]
    assert edit.left_ids == (1, 2, 3)
    assert edit.right_ids == (1,)
    assert edit.span == CharSpan(0, 4)
    assert result.summary.merge == 1
    assert result.summary.identical == 2
    # 很 and 长 exist on both sides; 中山/南/路 and 中山南路 do not match.
    assert result.summary.incomparable == 3 + 1


def test_diff_split_is_mirror_of_merge():
    ab = diff_parses(road_fine(), road_coarse())
    ba = diff_parses(road_coarse(), road_fine())
    assert ba.summary.split == ab.summary.merge
    assert ba.summary.merge == ab.summary.split
    for ea, eb in zip(ab.edits, ba.edits):
        assert ea.span == eb.span
        assert ea.left_ids == eb.right_ids
        assert ea.right_ids == eb.left_ids
        if ea.kind == KIND_MERGE:
            assert eb.kind == KIND_SPLIT


def test_diff_head_disagreement_classes():
    a = make_sentence(["a", "b", "c"], heads=[2, 0, 2], deprels=["nsubj", "root", "obj"])
    b_head = make_sentence(["a", "b", "c"], heads=[2, 0, 1], deprels=["nsubj", "root", "obj"])
    b_label = make_sentence(["a", "b", "c"], heads=[2, 0, 2], deprels=["nsubj", "root", "iobj"])

    d1 = diff_parses(a, b_head)
    disagreements = [e for e in d1.edges if e.agreement != AGREE_BOTH]
    assert len(disagreements) == 1
    assert disagreements[0].agreement == AGREE_NEITHER

    d2 = diff_parses(a, b_label)
    disagreements = [e for e in d2.edges if e.agreement != AGREE_BOTH]
    assert len(disagreements) == 1
    assert disagreements[0].agreement == AGREE_HEAD_ONLY


def test_diff_root_edge_compared_as_root():
    a = make_sentence(["a", "b"], heads=[2, 0], deprels=["nsubj", "root"])
    result = diff_parses(a, a)
    root_edges = [e for e in result.edges if e.left_head_span == ROOT]
    assert len(root_edges) == 1
    assert root_edges[0].agreement == AGREE_BOTH


def test_diff_rejects_different_texts():
    a = make_sentence(["ab"])
    b = make_sentence(["ax"])
    with pytest.raises(DiffError) as err:
        diff_parses(a, b)
    assert err.value.position == 1
    c = make_sentence(["abc"])
    with pytest.raises(DiffError) as err:
        diff_parses(a, c)
    assert err.value.position == 2


def test_diff_divergent_region():
    a = make_sentence(["ab", "cd"], heads=[0, 1])
    b = make_sentence(["a", "bc", "d"], heads=[0, 1, 2])
    result = diff_parses(a, b)
    assert result.summary.divergent == 1
    assert result.summary.identical == 0
    (edit,) = result.edits
    assert edit.left_ids == (1, 2)
    assert edit.right_ids == (1, 2, 3)


def test_edit_spans_tile_text():
    result = diff_parses(road_fine(), road_coarse())
    pos = 0
    for edit in result.edits:
        assert edit.span.start == pos
        pos = edit.span.end
    assert pos == 6  # 中山南路很长


def test_render_text_mentions_differences():
    text = render_text(road_fine(), road_coarse(), diff_parses(road_fine(), road_coarse()))
    assert "merge" in text
    assert "summary" in text


def _random_pair(seed):
    rng = random.Random(seed)
    text = "".join(rng.choice("山水天路人中") for _ in range(rng.randint(1, 8)))
    n = len(text)

    def random_side():
        cuts = sorted(rng.sample(range(1, n), rng.randint(0, n - 1))) if n > 1 else []
        bounds = [0] + cuts + [n]
        forms = [text[a:b] for a, b in zip(bounds, bounds[1:])]
        heads = random_heads(len(forms), rng)
        deprels = [rng.choice(LABELS) for _ in forms]
        return make_sentence(forms, heads, deprels)

    return random_side(), random_side()


@settings(max_examples=120, deadline=None)
@given(st.integers())
def test_mirror_symmetry_random(seed):
    a, b = _random_pair(seed)
    ab = diff_parses(a, b)
    ba = diff_parses(b, a)
    assert len(ab.edits) == len(ba.edits)
    for ea, eb in zip(ab.edits, ba.edits):
        assert ea.span == eb.span
        assert ea.left_ids == eb.right_ids
        assert ea.right_ids == eb.left_ids
        swap = {KIND_MERGE: KIND_SPLIT, KIND_SPLIT: KIND_MERGE}
        assert eb.kind == swap.get(ea.kind, ea.kind)
    assert len(ab.edges) == len(ba.edges)
    for ea, eb in zip(ab.edges, ba.edges):
        assert ea.dependent_span == eb.dependent_span
        assert ea.left_head_span == eb.right_head_span
        assert ea.right_head_span == eb.left_head_span
        assert ea.left_label == eb.right_label
        assert ea.agreement == eb.agreement
    assert ab.summary.incomparable == ba.summary.incomparable


@settings(max_examples=120, deadline=None)
@given(st.integers())
def test_tiling_invariant_random(seed):
    a, b = _random_pair(seed)
    result = diff_parses(a, b)
    pos = 0
    for edit in result.edits:
        assert edit.span.start == pos
        pos = edit.span.end
    assert pos == sum(len(t.form) for t in a.tokens)
