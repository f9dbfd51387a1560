from __future__ import annotations

import sys
from pathlib import Path

import pytest

TESTS = Path(__file__).resolve().parent
sys.path.insert(0, str(TESTS))

from citeval import TableOracle, VerificationEngine, load_dataset  # noqa: E402

FIXTURES = TESTS / "fixtures"
GOLDEN = TESTS / "golden"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def fixture_samples():
    return load_dataset(FIXTURES / "corpus.jsonl")


@pytest.fixture()
def fixture_engine() -> VerificationEngine:
    oracle = TableOracle.from_file(FIXTURES / "oracle.json")
    return VerificationEngine(oracle, oracle)
