import sys
from pathlib import Path

import pytest

# Make the sibling oracle/helper modules importable as plain names.
sys.path.insert(0, str(Path(__file__).parent))

from voltafx import PotentialTable, load_electrode_series


@pytest.fixture(scope="session")
def series_table() -> PotentialTable:
    return load_electrode_series()


@pytest.fixture()
def small_table() -> PotentialTable:
    return PotentialTable(
        reference="USD",
        entries={"USD": 0.0, "EUR": 0.25, "GBP": 0.4, "JPY": -1.2},
    )
