"""Text normalization: case folding, delimiter stripping, tokenization,
stop-word removal and optional stemming."""

from __future__ import annotations

import os
import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .corpus import RawDocument
from .errors import UsageError
from .stemmer import stem_tokens

DEFAULT_STOPWORDS = frozenset("""
a about above after again against all also am an and any are as at
be because been before being below between both but by
can could did do does doing down during each few for from further
had has have having he her here hers herself him himself his how
i if in into is it its itself just me more most my myself
no nor not now of off on once only or other our ours ourselves out over own
same she should so some such than that the their theirs them themselves then
there these they this those through to too under until up upon very
was we were what when where which while who whom why will with would
you your yours yourself yourselves
""".split())


class _DelimiterTable(dict):
    # lazily classifies code points for str.translate
    def __missing__(self, codepoint: int):
        value = 0x20 if is_delimiter(chr(codepoint)) else codepoint
        self[codepoint] = value
        return value


_DELIMS = _DelimiterTable()


def is_delimiter(ch: str) -> bool:
    return unicodedata.category(ch)[0] in "PS"


def normalize_case(text: str) -> str:
    return text.lower()


def strip_delimiters(text: str) -> str:
    """Replace every punctuation or symbol character with a single space."""
    return text.translate(_DELIMS)


def tokenize(text: str, min_token_length: int = 1) -> list[str]:
    return [t for t in text.split() if len(t) >= min_token_length]


def remove_stopwords(tokens: Iterable[str], stopword_list: Iterable[str]) -> list[str]:
    stop = stopword_list if isinstance(stopword_list, (set, frozenset)) else set(stopword_list)
    return [t for t in tokens if t not in stop]


@dataclass(frozen=True)
class PreprocessConfig:
    stopword_list: frozenset[str] = DEFAULT_STOPWORDS
    stemming_enabled: bool = False
    min_token_length: int = 1

    def __post_init__(self):
        if self.min_token_length < 1:
            raise UsageError("min_token_length must be >= 1")
        object.__setattr__(self, "stopword_list", frozenset(self.stopword_list))
        bad = sorted(w for w in self.stopword_list if not _is_clean_word(w))
        if bad:
            raise UsageError(
                f"stop words must be lowercase and delimiter-free: {', '.join(map(repr, bad[:5]))}"
            )


def _is_clean_word(word: str) -> bool:
    return (
        bool(word)
        and word == word.lower()
        and not any(ch.isspace() or is_delimiter(ch) for ch in word)
    )


@dataclass(frozen=True)
class PreprocessedDocument:
    id: str
    tokens: tuple[str, ...] = field(default=())


def preprocess_text(text: str, cfg: PreprocessConfig) -> list[str]:
    tokens = tokenize(strip_delimiters(normalize_case(text)), cfg.min_token_length)
    tokens = remove_stopwords(tokens, cfg.stopword_list)
    if cfg.stemming_enabled:
        tokens = stem_tokens(tokens)
    return tokens


def preprocess(doc: RawDocument, cfg: PreprocessConfig) -> PreprocessedDocument:
    return PreprocessedDocument(id=doc.id, tokens=tuple(preprocess_text(doc.text, cfg)))


def preprocess_all(
    docs: Sequence[RawDocument], cfg: PreprocessConfig
) -> list[PreprocessedDocument]:
    return [preprocess(d, cfg) for d in docs]


def load_stopwords(path: str | os.PathLike) -> frozenset[str]:
    """Read a stop-word file: UTF-8, one word per line, ``#`` starts a comment."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            word = line.split("#", 1)[0].strip()
            if not word:
                continue
            word = normalize_case(word)
            if not _is_clean_word(word):
                raise UsageError(f"{path}:{lineno}: stop word {word!r} contains a delimiter")
            words.add(word)
    return frozenset(words)
