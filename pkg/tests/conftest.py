import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from benchmark_data import (
    T60_BINS,
    T60_CAPACITY,
    T60_ITEMS,
    T60_PER_BIN,
)
from exactpack import Instance, Multiset

DATA_DIR = Path(__file__).parent.parent / "data"


@pytest.fixture(scope="session")
def t60():
    return Instance(
        items=Multiset(T60_ITEMS),
        bins=T60_BINS,
        per_bin=T60_PER_BIN,
        capacity=T60_CAPACITY,
    )


@pytest.fixture(scope="session")
def tiny_pairs():
    # unique solution: (1,6) (2,5) (3,4)
    return Instance(items=Multiset([1, 2, 3, 4, 5, 6]), bins=3, per_bin=2, capacity=7)


@pytest.fixture(scope="session")
def all_twos():
    # only pattern is (2,2); two bins can never be distinct
    return Instance(items=Multiset([2, 2, 2, 2]), bins=2, per_bin=2, capacity=4)


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR
