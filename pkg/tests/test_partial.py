"""
Tests des données spectrales partielles
"""

import numpy as np
import pytest
from scipy.stats import unitary_group

from app.schemas.horn import PartialSpectrum, TwoSidedSpectrum
from app.services.errors import HypothesisError
from app.services.partial_service import PartialService
from app.services.spectra_service import SpectraService

BETAS = [[3, 1], [2, 0]]
FULL = [PartialSpectrum.full(b) for b in BETAS]


def test_min_max_finite():
    """Test enveloppes en mode fini"""
    env = PartialService.min_max(PartialSpectrum(spec={1: 2.0, 3: -1.0}), 3)
    assert env.min.tolist() == [2.0, -1.0, -1.0]
    assert env.max.tolist() == [2.0, 2.0, -1.0]
    assert env.contains([2.0, 0.5, -1.0])
    assert not env.contains([2.0, 3.0, -1.0])


def test_min_max_unspecified():
    """Test indices libres : ±∞"""
    env = PartialService.min_max(PartialSpectrum(spec={2: 1.0}), 3)
    assert env.min.tolist() == [1.0, 1.0, -np.inf]
    assert env.max.tolist() == [np.inf, 1.0, 1.0]
    assert env.to_dict()["max"][0] == "inf"


def test_min_max_two_sided():
    """Test modèle à support fini en mode bilatère"""
    env = PartialService.min_max(PartialSpectrum(spec={2: 1.0, -1: -2.0}, two_sided=True))
    assert env.min.pos == (1.0, 1.0)
    assert env.max.pos == (np.inf, 1.0)
    assert env.min.neg == (-2.0,)
    assert env.max.neg == (-2.0,)


def test_partial_validation():
    """Test spectres partiels invalides"""
    with pytest.raises(ValueError):
        PartialSpectrum(spec={1: 1.0, 2: 2.0})
    with pytest.raises(ValueError):
        PartialSpectrum(spec={-1: -1.0})


def test_johnson_bounds():
    """Test intervalles de Johnson"""
    assert PartialService.johnson_bounds(BETAS, 1, 2) == (3.0, 5.0)
    assert PartialService.johnson_bounds(BETAS, 2, 2) == (1.0, 3.0)
    with pytest.raises(ValueError):
        PartialService.johnson_bounds(BETAS, 3, 2)


@pytest.mark.parametrize("seed", range(3))
def test_johnson_matches_grid_scan(seed):
    """Test intervalle de Johnson = valeurs de α_p acceptées par check_partial"""
    rng = np.random.default_rng(seed)
    N = int(rng.integers(2, 5))
    betas = [np.sort(rng.integers(0, 4, size=N))[::-1].tolist() for _ in range(2)]
    full = [PartialSpectrum.full(b) for b in betas]
    for p in range(1, N + 1):
        lower, upper = PartialService.johnson_bounds(betas, p, N)
        for v in np.arange(lower - 2.0, upper + 2.5, 0.5):
            feasible = PartialService.check_partial(PartialSpectrum(spec={p: float(v)}), full, N).feasible
            assert feasible == (lower <= v <= upper), (betas, p, v)


def test_johnson_contains_random_sums():
    """Test α_p de B + C (B, C conjuguées aléatoires) dans l'intervalle de Johnson"""
    rng = np.random.default_rng(0)
    for N, samples in [(2, 3000), (3, 3000), (4, 4000)]:
        betas = [np.sort(rng.integers(0, 5, size=N))[::-1].astype(float) for _ in range(2)]
        bounds = [PartialService.johnson_bounds(betas, p, N) for p in range(1, N + 1)]
        U = unitary_group.rvs(N, size=samples, random_state=rng)
        V = unitary_group.rvs(N, size=samples, random_state=rng)
        M = (U * betas[0]) @ U.conj().transpose(0, 2, 1) + (V * betas[1]) @ V.conj().transpose(0, 2, 1)
        alphas = np.linalg.eigvalsh(M)[:, ::-1]
        for p, (lower, upper) in enumerate(bounds):
            assert np.all(alphas[:, p] >= lower - 1e-9)
            assert np.all(alphas[:, p] <= upper + 1e-9)


def test_check_partial_inside_and_outside():
    """Test α₁ dans et hors de l'intervalle de Johnson"""
    inside = PartialService.check_partial(PartialSpectrum(spec={1: 4.0}), FULL, 2)
    assert inside.feasible
    outside = PartialService.check_partial(PartialSpectrum(spec={1: 6.0}), FULL, 2)
    assert not outside.feasible
    assert outside.violations


def test_realize_partial():
    """Test réalisation des valeurs manquantes"""
    real = PartialService.realize_partial(PartialSpectrum(spec={1: 4.0}), FULL, 2)
    assert real.alpha.tolist() == pytest.approx([4.0, 2.0])
    assert [b.tolist() for b in real.betas] == [pytest.approx([3, 1]), pytest.approx([2, 0])]
    assert real.C >= 11.0

    real = PartialService.realize_partial(PartialSpectrum(spec={1: 3.0}), FULL, 2)
    assert real.alpha.tolist() == pytest.approx([3.0, 3.0])


def test_realize_partial_integer():
    """Test réalisation entière"""
    real = PartialService.realize_partial(PartialSpectrum(spec={1: 4.0}), FULL, 2, integer_mode=True)
    assert real.alpha.tolist() == [4.0, 2.0]


def test_realize_partial_infeasible():
    """Test données infaisables"""
    with pytest.raises(HypothesisError):
        PartialService.realize_partial(PartialSpectrum(spec={1: 6.0}), FULL, 2)


def test_realize_partial_with_witness():
    """Test réalisation avec matrices témoins"""
    real = PartialService.realize_partial(PartialSpectrum(spec={1: 4.0}), FULL, 2, with_witness=True)
    assert real.witness is not None
    assert real.witness.sum_residual <= 1e-8


def test_lowrank_check():
    """Test somme positive de rang borné"""
    assert PartialService.lowrank_check([[1, 0], [0, -1]], 0, 2).feasible
    assert not PartialService.lowrank_check([[1, 0], [1, 0]], 0, 2).feasible
    assert PartialService.lowrank_check([[1, 0], [1, 0]], 2, 2).feasible


def test_check_envelopes():
    """Test enveloppes arbitraires (bornes infinies)"""
    betas = [[1, 0], [1, 0]]
    assert PartialService.check_envelopes([0, 0], [np.inf, np.inf], betas, betas, 2) == []
    records = PartialService.check_envelopes([3, 0], [3, 0], betas, betas, 2)
    assert records and all(rec.violated for rec in records)


def test_extend_two_sided():
    """Test extension bilatère vérifiée"""
    alpha = PartialSpectrum(spec={1: 1.0, 2: 0.5}, two_sided=True)
    betas = [PartialSpectrum(spec={1: 0.5, 2: 0.25}, two_sided=True)] * 2
    ext = PartialService.extend_two_sided(alpha, betas, N_max=2)
    assert ext.alphaP.pos == (1.0, 0.5)
    assert isinstance(ext.alphaPP, TwoSidedSpectrum)
    assert set(ext.to_dict()) == {"alphaP", "betasP", "alphaPP", "betasPP"}


def test_extend_requires_two_sided():
    """Test mode fini refusé"""
    with pytest.raises(ValueError):
        PartialService.extend_two_sided(PartialSpectrum(spec={1: 1.0}), FULL)


def test_realize_two_sided():
    """Test réalisation bilatère tronquée"""
    alpha = PartialSpectrum(spec={1: 1.0, 2: 0.5}, two_sided=True)
    betas = [PartialSpectrum(spec={1: 0.5, 2: 0.25}, two_sided=True)] * 2
    res = PartialService.realize_two_sided(alpha, betas, 1, N_max=2)
    assert SpectraService.scan_finite(res.alpha, res.betas, len(res.alpha)) == []


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
