"""
Tests des familles d'inégalités spectrales
"""

import numpy as np
import pytest

from app.schemas.horn import HornTuple, TwoSidedSpectrum
from app.services.errors import HypothesisError
from app.services.spectra_service import SpectraService as ss

T212 = HornTuple(m=2, N=2, r=1, I=(2,), J=((1,), (2,)))
BETAS = [[1, 0], [1, 0]]


def test_as_spectrum():
    """Test validation et complétion"""
    assert ss.as_spectrum(["inf", 1, 0]).tolist() == [np.inf, 1.0, 0.0]
    assert ss.as_spectrum([2], length=3, pad=True).tolist() == [2.0, 0.0, 0.0]
    with pytest.raises(ValueError):
        ss.as_spectrum([0, 1])
    with pytest.raises(ValueError):
        ss.as_spectrum([1], length=2)


def test_split_two_sided():
    """Test Λ₀ d'une liste de valeurs propres"""
    s = ss.split_two_sided([3, -1, 0, -2])
    assert s.pos == (3.0,)
    assert s.neg == (-2.0, -1.0)
    assert s.bar().pos == (2.0, 1.0)


def test_trace_gap():
    """Test écart de trace"""
    assert ss.trace_gap([2, 0], BETAS) == 0.0
    assert ss.trace_gap([3, 0], BETAS) == 1.0
    with pytest.raises(ValueError):
        ss.trace_gap([np.inf, 0], BETAS)


def test_eval_horn():
    """Test inégalité de Horn unitaire"""
    rec = ss.eval_horn(T212, [2, 0], BETAS)
    assert rec.lhs == 0.0
    assert rec.rhs == 1.0
    assert rec.slack == 1.0
    assert not rec.violated


def test_eval_reverse():
    """Test forme inverse"""
    rec = ss.eval_reverse(T212, [2, 0], BETAS)
    assert rec.sense == "ge"
    assert rec.lhs == 2.0
    assert rec.rhs == 1.0
    assert rec.slack == 1.0


def test_eval_horn_sym():
    """Test forme complémentaire"""
    rec = ss.eval_horn_sym(T212, [2, 0], BETAS)
    assert rec.family == "horn_sym"
    assert not rec.violated


def test_infinite_placement():
    """Test ±∞ : satisfaite d'office ou placement invalide"""
    rec = ss.eval_horn(T212, [0, "-inf"], BETAS)
    assert rec.auto_satisfied
    assert rec.slack == np.inf
    t111 = HornTuple(m=2, N=2, r=1, I=(1,), J=((1,), (1,)))
    with pytest.raises(ValueError):
        ss.eval_horn(t111, ["inf", 0], BETAS)


def test_scan_finite():
    """Test balayage fini"""
    assert ss.scan_finite([2, 0], BETAS, 2) == []
    records = ss.scan_finite([3, 0], BETAS, 2)
    assert [rec.horn_tuple.r for rec in records] == [1, 2]
    assert all(rec.violated for rec in records)


def test_scan_finite_tight():
    """Test contraintes serrées incluses à la demande"""
    records = ss.scan_finite([1, 1], BETAS, 2, include_tight=True)
    assert {rec.horn_tuple.label() for rec in records} == {
        "({2},{1},{2})", "({2},{2},{1})", "({1,2},{1,2},{1,2})", "({},{},{})"
    }


def test_scan_reverse():
    """Test balayage inverse"""
    assert ss.scan_reverse([2, 0], BETAS, 2) == []
    assert ss.scan_reverse([1, 0], BETAS, 2)


def test_eval_extended():
    """Test inégalité étendue et Σq > r"""
    alpha = TwoSidedSpectrum(pos=(1.0,), neg=(-1.0,))
    betas = [TwoSidedSpectrum(pos=(1.0,)), TwoSidedSpectrum(neg=(-1.0,))]
    t = HornTuple(m=2, N=1, r=1, I=(1,), J=((1,), (1,)))
    rec = ss.eval_extended(t, [0, 0], alpha, betas)
    assert rec.lhs == 1.0
    assert rec.rhs == 1.0
    rec = ss.eval_extended(t, [0, 1], alpha, betas)
    assert rec.lhs == -1.0
    assert rec.rhs == 0.0
    with pytest.raises(HypothesisError):
        ss.eval_extended(t, [1, 1], alpha, betas)


def test_scan_extended_feasible():
    """Test données réalisables par des matrices diagonales"""
    alpha = TwoSidedSpectrum(pos=(1.0, 0.5))
    betas = [TwoSidedSpectrum(pos=(0.5, 0.25)), TwoSidedSpectrum(pos=(0.5, 0.25))]
    assert ss.scan_extended(alpha, betas, 3) == []


def test_scan_extended_violation():
    """Test violation α₁ > β₁ + γ₁"""
    alpha = TwoSidedSpectrum(pos=(2.0,))
    betas = [TwoSidedSpectrum(pos=(0.5,)), TwoSidedSpectrum(pos=(0.5,))]
    records = ss.scan_extended(alpha, betas, 2, one_sided=True)
    assert records
    assert all(rec.family == "extended" for rec in records)
    assert records == sorted(records, key=lambda rec: rec.sort_key())


def test_scan_positive_feasible():
    """Test cas positif réalisable"""
    assert ss.scan_positive([1, 0.5], [[0.5, 0.25], [0.5, 0.25]], 3) == []


def test_scan_positive_rejects_negative():
    """Test suites négatives refusées"""
    with pytest.raises(ValueError):
        ss.scan_positive([1, -1], [[0.5], [0.5]], 2)


def test_scan_extended_default_window():
    """Test fenêtre par défaut : tuple plein [4] au-delà de N_max = 3"""
    alpha = TwoSidedSpectrum(pos=(3.0, 1.0, 1.0))
    betas = [TwoSidedSpectrum(pos=(2.0, 1.0, 0.0)), TwoSidedSpectrum(pos=(2.0, 1.0))]
    assert ss.scan_positive([3, 1, 1], [[2, 1, 0], [2, 1]], 3)
    records = ss.scan_extended(alpha, betas, 3)
    assert records
    assert any(rec.horn_tuple.N == 4 and rec.q == (2, 2) and rec.family == "extended_reverse"
               for rec in records)
    assert ss.scan_extended(alpha, betas, 3, window=3) == []


def random_positive(rng, m=2, length=3, high=5):
    """Suites positives décroissantes de longueur ≤ length"""
    vecs = [np.sort(rng.integers(0, high, size=rng.integers(1, length + 1)))[::-1].astype(float)
            for _ in range(m + 1)]
    return vecs[0], vecs[1:]


@pytest.mark.parametrize("seed", range(4))
def test_positive_matches_extended(seed):
    """Test même verdict pour le cas positif et son plongement bilatère"""
    rng = np.random.default_rng(seed)
    for _ in range(25):
        alpha, betas = random_positive(rng)
        positive = ss.scan_positive(alpha, betas, 3)
        extended = ss.scan_extended(TwoSidedSpectrum(pos=tuple(alpha)),
                                    [TwoSidedSpectrum(pos=tuple(b)) for b in betas], 3)
        assert bool(positive) == bool(extended), (alpha.tolist(), [b.tolist() for b in betas])


@pytest.mark.parametrize("seed", range(4))
def test_horn_and_complement_forms_agree(seed):
    """Test verdict identique pour la forme de Horn et la forme complémentaire"""
    rng = np.random.default_rng(seed)
    for _ in range(50):
        N = int(rng.integers(1, 5))
        alpha, *betas = [np.sort(rng.integers(-3, 4, size=N))[::-1].astype(float) for _ in range(3)]
        horn = ss.scan_finite(alpha, betas, N)
        sym = ss.scan_finite(alpha, betas, N, form="horn_sym")
        assert bool(horn) == bool(sym)


def random_two_sided(rng, high=4):
    pos = np.sort(rng.integers(0, high, size=rng.integers(0, 3)))[::-1]
    neg = np.sort(-rng.integers(0, high, size=rng.integers(0, 3)))
    return TwoSidedSpectrum(pos=tuple(pos.tolist()), neg=tuple(neg.tolist()))


@pytest.mark.parametrize("seed", range(4))
def test_scan_extended_swap_invariance(seed):
    """Test (α, β, γ) et (β̄, ᾱ, γ) : même verdict"""
    rng = np.random.default_rng(seed)
    for _ in range(50):
        alpha, beta, gamma = (random_two_sided(rng) for _ in range(3))
        direct = ss.scan_extended(alpha, [beta, gamma], 3)
        swapped = ss.scan_extended(beta.bar(), [alpha.bar(), gamma], 3)
        assert bool(direct) == bool(swapped)


def test_incidence_shapes():
    """Test système linéaire"""
    tuples, A, B = ss.incidence(2, 2, r_min=1)
    assert len(tuples) == 4
    assert A.shape == (4, 2)
    assert B.shape == (2, 4, 2)


def test_violations_frame():
    """Test table des violations"""
    frame = ss.violations_frame(ss.scan_finite([3, 0], BETAS, 2))
    assert list(frame.columns) == ["family", "N", "r", "tuple", "q", "lhs", "rhs", "slack"]
    assert len(frame) == 2


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
