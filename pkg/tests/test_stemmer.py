import pytest
from hypothesis import given, strategies as st

from plagscan.stemmer import porter_measure, porter_stem, stem_tokens
from oracles import porter_reference


@pytest.mark.parametrize("word, m", [("tr", 0), ("ee", 0), ("tree", 0), ("y", 0), ("by", 0),
                                     ("trouble", 1), ("oats", 1), ("trees", 1), ("ivy", 1),
                                     ("troubles", 2), ("private", 2), ("oaten", 2), ("orrery", 2)])
def test_measure(word, m):
    # the worked examples from Porter's description of m
    assert porter_measure(word) == m


def test_measure_rejects_non_letters():
    with pytest.raises(ValueError):
        porter_measure("abc1")


@pytest.mark.parametrize("word", ["sky", "running", "runs", "agreed", "relate"])
def test_stem_matches_reference(word):
    lookup, _ = porter_reference()
    assert porter_stem(word) == lookup[word]


# words missing from the reference vocabulary; expected stems were taken from
# NLTK's PorterStemmer in MARTIN_EXTENSIONS mode, which reproduces that
# vocabulary exactly
@pytest.mark.parametrize(
    "word, stem",
    [("caresses", "caress"), ("relational", "relat"), ("generalizations", "gener"),
     ("oscillators", "oscil"), ("hopping", "hop")],
)
def test_spot_values(word, stem):
    assert porter_stem(word) == stem


@pytest.mark.parametrize("token", ["a", "is", "x1y2", "café", "Running", "3rd", ""])
def test_passthrough(token):
    assert porter_stem(token) == token


def test_stem_tokens():
    assert stem_tokens(["running", "runs"]) == ["run", "run"]
    assert stem_tokens([]) == []
    assert stem_tokens(["cat"]) == ["cat"]


def test_full_reference_vocabulary():
    _, pairs = porter_reference()
    assert len(pairs) == 23531
    wrong = [(w, s, porter_stem(w)) for w, s in pairs if porter_stem(w) != s]
    assert wrong == []


@given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=20))
def test_stem_never_empty_and_bounded(word):
    stem = porter_stem(word)
    assert stem
    assert len(stem) <= len(word) + 1
