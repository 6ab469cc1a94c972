"""Test configuration and shared fixtures."""

import math
from unittest.mock import Mock

import pytest

from engine.distributions import canonical_kernel, su2_kernel
from engine.states import make_atomic_coherent, make_equatorial, make_glauber_coherent


@pytest.fixture
def equator():
    """Equatorial qubit (|0> + |1>)/sqrt(2)."""
    return make_equatorial(0.0)


@pytest.fixture
def vacuum():
    """Glauber state at alpha = 0."""
    return make_glauber_coherent(0.0)


@pytest.fixture
def qubit_kernel():
    return su2_kernel(2)


@pytest.fixture
def qubit_canonical_kernel():
    return canonical_kernel(2)


@pytest.fixture
def pole_state():
    """Atomic coherent state at the north pole, a number state."""
    return make_atomic_coherent(0.0, 0.0, 2)


@pytest.fixture
def sample_state_documents():
    """One JSON state document per specification variant."""
    return {
        "fock": {"variant": "fock", "m": 1, "dim": 3},
        "glauber": {"variant": "glauber", "alpha_re": 1.0, "alpha_im": 0.0},
        "atomic_coherent": {"variant": "atomic_coherent", "alpha_p": math.pi / 2, "beta_p": 0.0, "d": 2},
        "equatorial": {"variant": "equatorial", "phi0": 0.5},
        "random_pure": {"variant": "random_pure", "seed": 7, "d": 3},
        "explicit": {"variant": "explicit", "dim": 2, "re": [[0.5, 0.0], [0.0, 0.5]]},
    }


@pytest.fixture
def non_hermitian_document():
    """Explicit matrix whose off-diagonal entries do not mirror each other."""
    return {"variant": "explicit", "dim": 2, "re": [[0.5, 0.3], [0.0, 0.5]]}


@pytest.fixture
def mock_settings():
    """Mock settings for testing."""
    settings = Mock()
    settings.grid_k = 1024
    settings.tail_tol = 1e-10
    settings.ratio_floor = 1e-9
    settings.environment = "testing"
    settings.log_level = "INFO"
    return settings
