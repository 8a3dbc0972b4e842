"""
Test configuration and fixtures
"""

import os
from pathlib import Path

import pytest

# Set test environment variables before importing the app
os.environ["ENVIRONMENT"] = "test"
os.environ["LOG_LEVEL"] = "WARNING"
os.environ["ENABLE_METRICS"] = "true"

from src.models.contest import ContestSpec, ImpactFunction  # noqa: E402
from src.utils.config_file import load_spec  # noqa: E402

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "configs" / "golden"


@pytest.fixture
def golden_dir() -> Path:
    """Directory holding the checked-in golden configs"""
    return GOLDEN_DIR


@pytest.fixture
def golden():
    """Load a golden config by file stem"""

    def _load(name: str) -> ContestSpec:
        return load_spec(GOLDEN_DIR / f"{name}.json")

    return _load


@pytest.fixture
def linear() -> ImpactFunction:
    """f(e) = e"""
    return ImpactFunction(r=1.0)


@pytest.fixture
def square_root() -> ImpactFunction:
    """f(e) = sqrt(e)"""
    return ImpactFunction(r=0.5)


@pytest.fixture
def make_spec():
    """Build a symmetric contest over a shared choice set"""

    def _make(choice_set, v: float = 1.0, r: float = 1.0) -> ContestSpec:
        return ContestSpec(valuations=[v], impact={"r": r}, choice_set=choice_set)

    return _make
