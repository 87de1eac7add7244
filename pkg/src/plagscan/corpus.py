"""Loading a directory of plain-text assignments."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import CorpusError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RawDocument:
    id: str
    path: str
    text: str


@dataclass(frozen=True)
class Corpus:
    name: str
    documents: tuple[RawDocument, ...]
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        ids = [d.id for d in self.documents]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise CorpusError(f"duplicate document ids: {', '.join(dupes)}")
        if ids != sorted(ids):
            object.__setattr__(
                self, "documents", tuple(sorted(self.documents, key=lambda d: d.id))
            )

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    @property
    def ids(self) -> list[str]:
        return [d.id for d in self.documents]


def _normalize_exts(extension_filter: Iterable[str]) -> tuple[str, ...]:
    exts = tuple("." + e.lower().lstrip(".") for e in extension_filter if e.strip("."))
    if not exts:
        raise CorpusError("no file extensions given")
    return exts


def _read_text(path: Path, doc_id: str) -> str:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise CorpusError(f"cannot read {doc_id}: {exc.strerror or exc}") from exc
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusError(
            f"{doc_id}: invalid UTF-8 at byte offset {exc.start}"
        ) from exc


def load_corpus(
    root_dir: str | os.PathLike, extension_filter: Sequence[str] = ("txt",)
) -> Corpus:
    """Read every matching file under ``root_dir`` (recursively).

    Document ids are paths relative to ``root_dir`` using ``/`` separators,
    and documents come back sorted by id.
    """
    root = Path(root_dir)
    if not root.is_dir():
        raise CorpusError(f"not a readable directory: {root}")
    exts = _normalize_exts(extension_filter)

    docs = []
    warnings = []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        for fname in sorted(filenames):
            if not fname.lower().endswith(exts):
                continue
            path = Path(dirpath) / fname
            doc_id = path.relative_to(root).as_posix()
            text = _read_text(path, doc_id)
            if not text.strip():
                msg = f"{doc_id}: empty document"
                log.warning(msg)
                warnings.append(msg)
            docs.append(RawDocument(id=doc_id, path=str(path), text=text))

    if not docs:
        raise CorpusError(f"empty corpus: no {'/'.join(exts)} files under {root}")
    docs.sort(key=lambda d: d.id)
    return Corpus(name=root.resolve().name, documents=tuple(docs), warnings=tuple(warnings))
