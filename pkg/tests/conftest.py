import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240117)


def random_pure_state_amplitudes(rng, count):
    """Haar-ish random normalized 2-vectors."""
    raw = rng.normal(size=(count, 2)) + 1j * rng.normal(size=(count, 2))
    return raw / np.linalg.norm(raw, axis=1, keepdims=True)
