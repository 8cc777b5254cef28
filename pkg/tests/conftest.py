import os
import random

import pytest

from notesketch import bundled_library, bundled_lessons_dir
from notesketch.staff import StaffModel

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CORPUS_DIR = os.path.join(REPO_ROOT, "assets", "corpus")


@pytest.fixture(scope="session")
def library():
    return bundled_library()


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS_DIR


@pytest.fixture(scope="session")
def lessons_dir():
    return bundled_lessons_dir()


@pytest.fixture
def staff():
    """Standard test staff: lines at y=100..180, step 20."""
    return StaffModel((100.0, 120.0, 140.0, 160.0, 180.0), 20.0)


@pytest.fixture
def rng():
    return random.Random(0xBEEF)
