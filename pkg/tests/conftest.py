import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from plagscan.engine import generate_synthetic_corpus  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def planted_corpus():
    """100 docs in 10 groups, copy rate 0.9, seed 0."""
    return generate_synthetic_corpus(
        n_docs=100, n_groups=10, copy_rate=0.9, vocab_size=2000, doc_len=200, seed=0
    )


@pytest.fixture
def write_tree(tmp_path):
    def _write(files: dict):
        for name, content in files.items():
            p = tmp_path / name
            p.parent.mkdir(parents=True, exist_ok=True)
            if isinstance(content, bytes):
                p.write_bytes(content)
            else:
                p.write_text(content, encoding="utf-8")
        return tmp_path

    return _write


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
