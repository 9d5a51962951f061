from __future__ import annotations

from pathlib import Path

import pytest

from graphsynth import vocab
from graphsynth.quadstore import QuadStore
from graphsynth.seed import example_statement_path, load_kb
from graphsynth.turtle import parse_document

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def seed_kb():
    """The shipped KB, loaded once; treat as read-only."""
    store, report = load_kb()
    return store, report


@pytest.fixture()
def kb_store(seed_kb) -> QuadStore:
    """A private copy of the loaded KB, safe to mutate."""
    store, _ = seed_kb
    return store.clone()


@pytest.fixture(scope="session")
def statement_text() -> str:
    return example_statement_path().read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def golden_source() -> str:
    return (GOLDEN_DIR / "hello_analytic.golden").read_text(encoding="utf-8")


def insert_turtle(store: QuadStore, text: str, graph: str = vocab.CORE_GRAPH) -> int:
    """Parse subset-Turtle and insert every statement into `graph`."""
    inserted = 0
    for quad in parse_document(text, graph=graph).statements:
        if store.insert(quad):
            inserted += 1
    return inserted
