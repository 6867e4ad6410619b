import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from zgkn.config import ScanConfig, SolverConfig, Tolerances  # noqa: E402
from zgkn.model import ModelParams, StateIndex  # noqa: E402


@pytest.fixture
def tols():
    return Tolerances()


@pytest.fixture
def serial_config():
    return SolverConfig(scan=ScanConfig(workers=1))


@pytest.fixture(scope="session")
def ground_params():
    return ModelParams(a=0.1, gamma=-0.3, two_kappa=1)


@pytest.fixture(scope="session")
def ground_state(ground_params):
    """The 1s1/2 (mj=+1/2) state at a=0.1, gamma=-0.3; solved once per session."""
    from zgkn.spectrum import solve_bound_state
    return solve_bound_state(ground_params, StateIndex(0, 0, 1), SolverConfig(scan=ScanConfig(workers=1)))
