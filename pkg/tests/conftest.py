import numpy as np
import pytest

from app.config import reset_configuration


@pytest.fixture(autouse=True)
def _clean_configuration():
    """La CLI impose des paramètres globaux (max_n, seed) ; on les retire après chaque test"""
    yield
    reset_configuration()


@pytest.fixture
def feasible_integers():
    """Spectres entiers réalisables : somme de matrices diagonales aux entrées permutées"""
    def make(rng, N, m, high=4):
        betas = [np.sort(rng.integers(0, high, size=N))[::-1].astype(float) for _ in range(m)]
        alpha = np.sort(sum(rng.permutation(b) for b in betas))[::-1]
        return alpha, betas
    return make
