
from cids.corpus import load_corpus, load_units
from cids.identity import load_registry

from pathlib import Path
import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def corpus():
    return load_corpus(FIXTURES / "corpus.tsv")

@pytest.fixture
def registry():
    return load_registry(FIXTURES / "registry.tsv")

@pytest.fixture
def units(registry):
    return load_units(FIXTURES / "units.tsv", registry)
