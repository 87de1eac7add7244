"""Porter suffix-stripping stemmer.

Follows Martin Porter's reference C implementation, including its two
departures from the 1980 description (``bli -> ble`` replaces
``abli -> able`` in step 2, and ``logi -> log`` is added), so output agrees
with the published ``voc.txt``/``output.txt`` test vocabulary.
"""

from __future__ import annotations

from typing import Iterable

_VOWELS = frozenset("aeiou")
_LETTERS = frozenset("abcdefghijklmnopqrstuvwxyz")

_STEP2 = (
    ("ational", "ate"), ("tional", "tion"),
    ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"),
    ("bli", "ble"), ("alli", "al"), ("entli", "ent"), ("eli", "e"), ("ousli", "ous"),
    ("ization", "ize"), ("ation", "ate"), ("ator", "ate"),
    ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"), ("ousness", "ous"),
    ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
    ("logi", "log"),
)

_STEP3 = (
    ("icate", "ic"), ("ative", ""), ("alize", "al"),
    ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""),
    ("ness", ""),
)

# order matters where one suffix ends another (ement / ment / ent)
_STEP4 = (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment",
    "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
)


def _is_consonant(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Number of VC sequences in ``stem`` read as [C](VC)^m[V]."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        cons = _is_consonant(stem, i)
        if cons and prev_vowel:
            m += 1
        prev_vowel = not cons
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_double_consonant(word: str) -> bool:
    return len(word) >= 2 and word[-1] == word[-2] and _is_consonant(word, len(word) - 1)


def _ends_cvc(word: str) -> bool:
    # consonant-vowel-consonant where the final consonant is not w, x or y
    i = len(word) - 1
    if i < 2 or word[i] in "wxy":
        return False
    return (
        _is_consonant(word, i)
        and not _is_consonant(word, i - 1)
        and _is_consonant(word, i - 2)
    )


def porter_measure(word: str) -> int:
    """Return Porter's measure *m* of a lowercase letter word.

    >>> porter_measure("trouble")
    1
    """
    if not word or not set(word) <= _LETTERS:
        raise ValueError(f"porter_measure needs a lowercase ASCII letter word, got {word!r}")
    return _measure(word)


def _step1ab(w: str) -> str:
    if w.endswith("s"):
        if w.endswith("sses"):
            w = w[:-2]
        elif w.endswith("ies"):
            w = w[:-2]
        elif w[-2] != "s":
            w = w[:-1]

    if w.endswith("eed"):
        if _measure(w[:-3]) > 0:
            w = w[:-1]
        return w

    if w.endswith("ed"):
        stem = w[:-2]
    elif w.endswith("ing"):
        stem = w[:-3]
    else:
        return w
    if not _has_vowel(stem):
        return w

    w = stem
    if w.endswith(("at", "bl", "iz")):
        w += "e"
    elif _ends_double_consonant(w):
        if w[-1] not in "lsz":
            w = w[:-1]
    elif _measure(w) == 1 and _ends_cvc(w):
        w += "e"
    return w


def _step1c(w: str) -> str:
    if w.endswith("y") and _has_vowel(w[:-1]):
        return w[:-1] + "i"
    return w


def _replace_first(w: str, rules) -> str:
    for suffix, repl in rules:
        if w.endswith(suffix):
            stem = w[: -len(suffix)]
            if _measure(stem) > 0:
                return stem + repl
            return w
    return w


def _step4(w: str) -> str:
    for suffix in _STEP4:
        if w.endswith(suffix):
            stem = w[: -len(suffix)]
            if suffix == "ion" and not stem.endswith(("s", "t")):
                return w
            if _measure(stem) > 1:
                return stem
            return w
    return w


def _step5(w: str) -> str:
    m = _measure(w)
    if w.endswith("e") and (m > 1 or (m == 1 and not _ends_cvc(w[:-1]))):
        w = w[:-1]
    if w.endswith("ll") and m > 1:
        w = w[:-1]
    return w


def porter_stem(word: str) -> str:
    """Stem one token. Short words and anything that is not purely
    lowercase ASCII letters come back unchanged."""
    if len(word) <= 2 or not set(word) <= _LETTERS:
        return word
    w = _step1ab(word)
    if len(w) > 1:
        w = _step1c(w)
        w = _replace_first(w, _STEP2)
        w = _replace_first(w, _STEP3)
        w = _step4(w)
        w = _step5(w)
    return w


def stem_tokens(tokens: Iterable[str]) -> list[str]:
    return [porter_stem(t) for t in tokens]
