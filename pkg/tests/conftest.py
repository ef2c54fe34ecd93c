import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0FFEE)


def hermitian_contraction(rng, n, scale=0.9):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    m = (m + m.conj().T) / 2
    top = np.linalg.norm(m, 2)
    return m / top * scale if top else m
