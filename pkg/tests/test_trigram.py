from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from plagscan.errors import NoPairsError, UsageError
from plagscan.preprocess import PreprocessedDocument
from plagscan.trigram import (
    SimilarityRecord,
    build_trigrams,
    compare,
    containment_pct,
    gram_hash,
    jaccard_pct,
    max_similarity,
    overlap,
)
from oracles import naive_grams, naive_scores


def ts(tokens, doc_id="d", n=3):
    return build_trigrams(PreprocessedDocument(doc_id, tuple(tokens)), n)


# 6 tokens -> 4 grams; 10 tokens -> 8 grams; the first two grams are shared
SMALL_A = "alpha beta gamma delta epsilon zeta".split()
SMALL_B = "alpha beta gamma delta omega psi chi phi rho sigma".split()


def test_window_definition():
    s = ts(["a", "b", "c", "d"])
    assert s.grams == {gram_hash(("a", "b", "c")), gram_hash(("b", "c", "d"))}
    assert s.size == 2


def test_too_short():
    assert ts(["a", "b"]).size == 0


def test_repeats_collapse():
    s = ts(list("xyxyxyx"))
    assert s.size == 2
    assert s.grams == {gram_hash(("x", "y", "x")), gram_hash(("y", "x", "y"))}


def test_gram_hash_is_order_sensitive():
    assert gram_hash(("a", "b", "c")) != gram_hash(("c", "b", "a"))
    assert gram_hash(("ab", "c")) != gram_hash(("a", "bc"))


def test_bad_n():
    with pytest.raises(UsageError):
        ts(["a"], n=0)


def test_overlap_cases():
    a = ts(list("abcdefghi"))
    assert overlap(a, a) == 7
    assert overlap(a, ts(list("zyxwv"))) == 0
    # 6 tokens give grams g1..g4; the second shares g3, g4 and adds g5
    a = ts(["p", "q", "r", "s", "t", "u"])
    b = ts(["r", "s", "t", "u", "v"])
    assert (a.size, b.size, overlap(a, b)) == (4, 3, 2)


def test_mismatched_n():
    with pytest.raises(UsageError):
        overlap(ts(list("abcd"), n=3), ts(list("abcd"), n=2))


def test_percentages_small_example():
    # expected values come from the list-intersection oracle, not the set path
    common, cont, jac = naive_scores(SMALL_A, SMALL_B)
    assert (len(naive_grams(SMALL_A)), len(naive_grams(SMALL_B)), common) == (4, 8, 2)
    assert (cont, jac) == (Fraction(50), Fraction(20))
    a, b = ts(SMALL_A, "a.txt"), ts(SMALL_B, "b.txt")
    assert containment_pct(a, b) == cont
    assert jaccard_pct(a, b) == jac


def test_degenerate_percentages():
    a = ts(list("abcde"))
    empty = ts([])
    assert containment_pct(a, a) == 100
    assert jaccard_pct(a, a) == 100
    assert containment_pct(a, empty) == 0
    assert jaccard_pct(empty, empty) == 0
    assert jaccard_pct(a, ts(list("vwxyz"))) == 0


def test_record_is_symmetric():
    a, b = ts(SMALL_A, "a.txt"), ts(SMALL_B, "b.txt")
    assert compare(a, b) == compare(b, a)
    rec = compare(b, a)
    assert (rec.doc_a, rec.doc_b, rec.overlap) == ("a.txt", "b.txt", 2)


def _rec(a, b, pct):
    return SimilarityRecord(a, b, 0, Fraction(pct), Fraction(0))


def test_max_similarity_tie_break():
    recs = [_rec("a", "b", 30), _rec("a", "d", 80), _rec("a", "c", 80)]
    assert max_similarity("a", recs) == ("c", 80)


def test_max_similarity_single_and_zero():
    assert max_similarity("a", [_rec("a", "b", 55)]) == ("b", 55)
    assert max_similarity("c", [_rec("b", "c", 0), _rec("a", "c", 0)]) == ("a", 0)


def test_max_similarity_no_pairs():
    with pytest.raises(NoPairsError, match="no pairs"):
        max_similarity("a", [_rec("b", "c", 10)])


token_lists = st.lists(st.sampled_from("abcdefghij"), max_size=50)


@given(token_lists, token_lists)
def test_matches_naive_oracle(xs, ys):
    common, cont, jac = naive_scores(xs, ys)
    a, b = ts(xs, "a"), ts(ys, "b")
    rec = compare(a, b)
    assert (rec.overlap, rec.containment_pct, rec.jaccard_pct) == (common, cont, jac)


@given(token_lists, token_lists)
def test_properties(xs, ys):
    a, b = ts(xs, "a"), ts(ys, "b")
    assert containment_pct(a, b) == containment_pct(b, a)
    assert jaccard_pct(a, b) == jaccard_pct(b, a)
    assert jaccard_pct(a, b) <= containment_pct(a, b)
    assert overlap(a, b) <= min(a.size, b.size)
    assert 0 <= jaccard_pct(a, b) <= containment_pct(a, b) <= 100


@given(token_lists)
def test_size_bounds_and_self_similarity(xs):
    s = ts(xs)
    if len(xs) < 3:
        assert s.size == 0
    else:
        assert 1 <= s.size <= len(xs) - 2
        assert containment_pct(s, s) == 100


@given(token_lists, token_lists, st.lists(st.sampled_from("abcdefghij"), max_size=20))
def test_appending_never_lowers_overlap(xs, ys, extra):
    a = ts(xs)
    assert overlap(a, ts(ys + extra)) >= overlap(a, ts(ys))


@given(token_lists, st.integers(1, 5))
def test_any_n_matches_naive(xs, n):
    assert ts(xs, n=n).size == len(naive_grams(xs, n))
