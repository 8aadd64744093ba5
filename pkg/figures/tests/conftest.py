from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def sweep_csv():
    return DATA / "tiny_sweep.csv"


@pytest.fixture(scope="session")
def trajectory_csv():
    return DATA / "trajectory_nr2.csv"


@pytest.fixture(scope="session")
def compare_csv():
    return DATA / "compare_dynamical.csv"
