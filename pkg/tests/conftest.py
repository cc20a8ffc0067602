from pathlib import Path

import pytest

from fragrec.corpus import load_catalog, load_corpus, segment_tutorial
from fragrec.parsing import parse_fragment

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS_DIR = FIXTURES / "corpus"
CATALOG_PATH = CORPUS_DIR / "apis.txt"
ANNOTATIONS_PATH = FIXTURES / "annotations.csv"


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS_DIR


@pytest.fixture(scope="session")
def catalog_path():
    return CATALOG_PATH


@pytest.fixture(scope="session")
def annotations_path():
    return ANNOTATIONS_PATH


@pytest.fixture(scope="session")
def catalog():
    return load_catalog(CATALOG_PATH)


@pytest.fixture(scope="session")
def corpus(catalog):
    docs, _ = load_corpus(CORPUS_DIR, CATALOG_PATH)
    return {doc.id: doc for doc in docs}


@pytest.fixture(scope="session")
def graphics_parsed(corpus, catalog):
    """The drawing-tutorial fixture, parsed: one 11-sentence fragment."""
    fragments = segment_tutorial(corpus["graphics"])
    assert len(fragments) == 1
    return parse_fragment(fragments[0], catalog)


@pytest.fixture(scope="session")
def jodatime_parsed(corpus, catalog):
    """The date-library fixture, parsed: one 6-sentence fragment."""
    fragments = segment_tutorial(corpus["jodatime"])
    assert len(fragments) == 1
    return parse_fragment(fragments[0], catalog)
