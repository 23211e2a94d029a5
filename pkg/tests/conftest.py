import pytest

from depforge.fixture import generate_corpus


@pytest.fixture(scope="session")
def fixture_corpus():
    return generate_corpus(300, seed=42)
