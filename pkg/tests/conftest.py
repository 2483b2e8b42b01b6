import random
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def fixtures_dir():
    return FIXTURES
