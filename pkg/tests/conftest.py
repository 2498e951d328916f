"""
Shared fixtures: paths and text of the reference 4-level listings.
"""
from pathlib import Path

import pytest

QASM_DIR = Path(__file__).resolve().parent.parent / "assets" / "qasm"


@pytest.fixture
def qasm_dir() -> Path:
    return QASM_DIR


@pytest.fixture
def unbiased_text() -> str:
    return (QASM_DIR / "qgb4_unbiased.qasm").read_text(encoding="utf-8")


@pytest.fixture
def biased_text() -> str:
    return (QASM_DIR / "qgb4_biased_2pi3.qasm").read_text(encoding="utf-8")


@pytest.fixture
def fine_text() -> str:
    return (QASM_DIR / "qgb4_fine_grained_2pi3.qasm").read_text(encoding="utf-8")
