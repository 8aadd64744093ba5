import numpy as np
import pytest

from holonoise import mixing_loop, phase_shift_loop

# the study's headline parameters: 1/omega = 50 fs, omega * t_ad = 150
OMEGA = 0.02
T_AD = 7500.0


@pytest.fixture(scope="session")
def standard_mixing():
    return mixing_loop(OMEGA, T_AD)


@pytest.fixture(scope="session")
def standard_phase():
    return phase_shift_loop(OMEGA, T_AD)


@pytest.fixture(scope="session")
def quick_mixing():
    # omega * t_ad = 50: cheapest loop that avoids the adiabaticity warning
    return mixing_loop(OMEGA, 2500.0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
