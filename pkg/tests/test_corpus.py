import logging
from pathlib import Path

import pytest

from plagscan.corpus import Corpus, RawDocument, load_corpus
from plagscan.errors import CorpusError


def test_ids_sorted(write_tree):
    root = write_tree({"b.txt": "second", "a.txt": "first"})
    corpus = load_corpus(root)
    assert corpus.ids == ["a.txt", "b.txt"]
    assert corpus.documents[0].text == "first"


def test_nested_id_uses_forward_slash(write_tree):
    root = write_tree({"sub/c.txt": "x", "a.txt": "y"})
    assert load_corpus(root).ids == ["a.txt", "sub/c.txt"]


def test_invalid_utf8_names_file_and_offset(write_tree):
    root = write_tree({"a.txt": b"ok \xff bad", "b.txt": "fine"})
    with pytest.raises(CorpusError, match=r"a\.txt.*byte offset 3"):
        load_corpus(root)


def test_empty_corpus(write_tree):
    root = write_tree({"notes.md": "not text"})
    with pytest.raises(CorpusError, match="empty corpus"):
        load_corpus(root)


def test_missing_dir(tmp_path):
    with pytest.raises(CorpusError):
        load_corpus(tmp_path / "nope")


def test_extension_filter(write_tree):
    root = write_tree({"a.txt": "1", "b.md": "2", "c.TXT": "3"})
    assert load_corpus(root, ["md"]).ids == ["b.md"]
    assert load_corpus(root, [".txt"]).ids == ["a.txt", "c.TXT"]
    assert len(load_corpus(root, ["txt", "md"])) == 3


def test_empty_file_is_loaded_with_warning(write_tree, caplog):
    root = write_tree({"a.txt": "", "b.txt": "words"})
    with caplog.at_level(logging.WARNING):
        corpus = load_corpus(root)
    assert len(corpus) == 2
    assert any("a.txt" in w for w in corpus.warnings)
    assert "a.txt" in caplog.text


def test_unreadable_file(write_tree, monkeypatch):
    root = write_tree({"a.txt": "x", "b.txt": "y"})
    real = Path.read_bytes

    def deny(self):
        if self.name == "b.txt":
            raise PermissionError(13, "Permission denied")
        return real(self)

    monkeypatch.setattr(Path, "read_bytes", deny)
    with pytest.raises(CorpusError, match="cannot read b.txt"):
        load_corpus(root)


def test_load_is_pure(write_tree):
    root = write_tree({"x/y.txt": "alpha", "z.txt": "beta\ngamma", "m.txt": "ünïcode"})
    assert load_corpus(root) == load_corpus(root)


def test_duplicate_ids_rejected():
    d = RawDocument("a.txt", "a.txt", "")
    with pytest.raises(CorpusError, match="duplicate"):
        Corpus("c", (d, d))


def test_corpus_sorts_documents():
    docs = (RawDocument("b", "b", ""), RawDocument("a", "a", ""))
    assert Corpus("c", docs).ids == ["a", "b"]


def test_text_not_truncated(write_tree):
    text = "word " * 100_000
    root = write_tree({"big.txt": text})
    assert load_corpus(root).documents[0].text == text
