import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def bell_ket():
    return np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


def bell_projector():
    k = bell_ket()
    return np.outer(k, k.conj())
