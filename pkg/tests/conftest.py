import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from wbkit.conllu import load_document

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def sample_gold():
    return load_document(DATA / "sample_gold.conllu")


@pytest.fixture(scope="session")
def compounds_gold():
    return load_document(DATA / "compounds_gold.conllu")
