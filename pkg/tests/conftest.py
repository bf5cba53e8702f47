"""Shared fixtures: the named ideals and matrix tuples most tests start from."""

import os
from pathlib import Path

import pytest

from src.catalog import get_problem
from src.freepoly import FieldMode
from src.groebner import complete
from src.parser import parse_poly
from src.repvar import MatrixTuple

ROOT = Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """No NCSTAR_* setting leaks in from the developer's shell."""
    for name in list(os.environ):
        if name.startswith("NCSTAR_"):
            monkeypatch.delenv(name)


@pytest.fixture
def poly():
    def parse(text, g=2, field=FieldMode.RATIONAL):
        return parse_poly(text, g, field)
    return parse


@pytest.fixture
def commutator_ideal():
    return get_problem("commutator").ideal()


@pytest.fixture
def commutator_gb(commutator_ideal):
    return complete(commutator_ideal, 6)


@pytest.fixture
def toeplitz_ideal():
    return get_problem("toeplitz").ideal()


@pytest.fixture
def toeplitz_gb(toeplitz_ideal):
    return complete(toeplitz_ideal, 6)


@pytest.fixture
def jordan():
    return MatrixTuple.from_rows([[[0, 1], [0, 0]]])


@pytest.fixture
def diag():
    return MatrixTuple.from_rows([[[0, 0], [0, 1]]])


@pytest.fixture
def rotation():
    return MatrixTuple.from_rows([[[0, -1], [1, 0]]])
