import numpy as np
import pytest

from tracemink import random_psd


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def rand_psd(rng, dim, scale=1.0):
    return random_psd(dim, scale, rng)


def rand_herm(rng, dim):
    X = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (X + X.conj().T) / 2
