from __future__ import annotations

from pathlib import Path

import pytest

from littext import textproc

ROOT = Path(__file__).resolve().parents[1]
SAMPLES = ROOT / "samples"
DATA = ROOT / "src" / "littext" / "data"
FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def lexicon() -> textproc.Lexicon:
    return textproc.default_lexicon()


@pytest.fixture(scope="session")
def sample_tsv() -> bytes:
    return (DATA / "inquests_sample.tsv").read_bytes()


@pytest.fixture(scope="session")
def alice_text() -> str:
    return (SAMPLES / "alice_excerpt.txt").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def alice_utterances_tsv() -> bytes:
    return (SAMPLES / "alice_utterances.tsv").read_bytes()
