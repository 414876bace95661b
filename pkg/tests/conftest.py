from __future__ import annotations

from pathlib import Path

import pytest

from src.schemas import Behavior, SimplicialComplex
from src.tools import (
    complete_graph_complex,
    cycle_complex,
    full_simplex_complex,
    pr_box_behavior,
    product_behavior,
)

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def pentagon() -> SimplicialComplex:
    return cycle_complex(5)


@pytest.fixture
def pentagram() -> SimplicialComplex:
    return complete_graph_complex(5)


@pytest.fixture
def pentachoron() -> SimplicialComplex:
    return full_simplex_complex(5)


@pytest.fixture
def pr() -> Behavior:
    return pr_box_behavior()


@pytest.fixture(scope="session")
def pr2() -> Behavior:
    pr = pr_box_behavior()
    return product_behavior(pr, pr)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR
