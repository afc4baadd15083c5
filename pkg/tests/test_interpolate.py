"""
Tests de l'interpolation entre familles de Horn
"""

import numpy as np
import pytest

from app.schemas.horn import HornTuple, TwoSidedSpectrum
from app.services.errors import HypothesisError
from app.services.interpolate_service import InterpolateService as interp
from app.services.spectra_service import SpectraService
from app.services.witness_service import WitnessService

BETAS = [[1, 0], [1, 0]]


def test_tau_and_tight_set():
    """Test τ = 1 et contraintes serrées triées"""
    tau, tight = interp.tau_tight([1, 1], [3, 1], BETAS, BETAS, 2)
    assert tau == pytest.approx(1.0)
    assert [t.label() for t in tight] == ["({2},{1},{2})", "({2},{2},{1})", "({1,2},{1,2},{1,2})"]


def test_interpolate_real_split():
    """Test découpage sur le premier tuple serré"""
    res = interp.interpolate([1, 1], [3, 1], BETAS, BETAS, 2)
    assert res.alpha.tolist() == pytest.approx([1, 1])
    assert [b.tolist() for b in res.betas] == [pytest.approx([1, 0]), pytest.approx([1, 0])]
    assert res.decomposition["tuple"] == "({2},{1},{2})"
    assert len(res.decomposition["children"]) == 1
    assert res.steps


def test_interpolate_tau_zero():
    """Test τ = 0 : les données doublement primées sont déjà admissibles"""
    res = interp.interpolate([1, 0], [2, 0], BETAS, BETAS, 2)
    assert res.tau == 0.0
    assert res.alpha.tolist() == [2.0, 0.0]


def test_interpolate_integer_walk():
    """Test marche entière"""
    res = interp.interpolate([1, 0], [2, 0], BETAS, BETAS, 2, integer_mode=True)
    assert res.alpha.tolist() == [2.0, 0.0]
    assert res.steps == ["α[1] += 1"]
    assert res.integer_mode


def test_interpolate_integer_split():
    """Test marche entière avec contrainte serrée immédiate"""
    res = interp.interpolate([1, 1], [3, 1], BETAS, BETAS, 2, integer_mode=True)
    assert res.alpha.tolist() == [1.0, 1.0]


def test_integer_mode_requires_integers():
    """Test données non entières en mode entier"""
    with pytest.raises(ValueError):
        interp.interpolate([0.5, 0], [2, 0], BETAS, BETAS, 2, integer_mode=True)


def test_hypothesis_checks():
    """Test hypothèses d'admissibilité (Horn pour α′, inverse pour α″)"""
    with pytest.raises(HypothesisError):
        interp.interpolate([3, 1], [1, 1], BETAS, BETAS, 2)
    with pytest.raises(HypothesisError):
        interp.interpolate([3, 0], [3, 0], BETAS, BETAS, 2)


def test_output_between_bounds():
    """Test α entre α′ et α″ et Horn satisfait"""
    res = interp.interpolate([2, 1, 0], [4, 2, 1], [[2, 1, 0], [1, 0, 0]], [[1, 0, 0], [1, 0, 0]], 3)
    assert interp.is_between(res.alpha, [2, 1, 0], [4, 2, 1])
    assert SpectraService.scan_finite(res.alpha, res.betas, 3) == []
    assert SpectraService.trace_gap(res.alpha, res.betas) == pytest.approx(0.0, abs=1e-9)


def test_tau_unordered_bounds():
    """Test bornes non ordonnées : α′ = (1,1), α″ = (2,0)"""
    tau, tight = interp.tau_tight([1, 1], [2, 0], BETAS, BETAS, 2)
    assert tau == 0.0
    assert [t.label() for t in tight] == ["({1},{1},{1})", "({1,2},{1,2},{1,2})"]


def test_interpolate_unordered_bounds():
    """Test interpolation réelle et entière entre (1,1) et (2,0)"""
    res = interp.interpolate([1, 1], [2, 0], BETAS, BETAS, 2)
    assert res.alpha.tolist() == [2.0, 0.0]
    assert interp.is_between(res.alpha, [1, 1], [2, 0])

    res = interp.interpolate([1, 1], [2, 0], BETAS, BETAS, 2, integer_mode=True)
    assert res.alpha.tolist() == [1.0, 1.0]
    assert [b.tolist() for b in res.betas] == [[1.0, 0.0], [1.0, 0.0]]


@pytest.mark.parametrize("J", [((1,), (2,)), ((2,), (1,))])
def test_unordered_bounds_tight_at_primed(J):
    """Test α₂ = β₁ + γ₂ (et son miroir) serrée en α′ = (1,1)"""
    t = HornTuple(m=2, N=2, r=1, I=(2,), J=J)
    assert SpectraService.eval_horn(t, [1, 1], BETAS).slack == 0.0


def test_integer_walk_both_directions():
    """Test marche entière montante sur α₁, descendante sur α₂ et sur les β"""
    res = interp.interpolate([1, 1], [2, 0], [[2, 0], [2, 0]], BETAS, 2, integer_mode=True)
    assert res.steps == ["α[1] += 1", "α[2] -= 1", "β1[1] -= 1", "β2[1] -= 1"]
    assert res.alpha.tolist() == [2.0, 0.0]
    assert [b.tolist() for b in res.betas] == [[1.0, 0.0], [1.0, 0.0]]


def l1_distance(alpha, betas, alpha_target, betas_target):
    return float(np.abs(alpha - alpha_target).sum()
                 + sum(np.abs(b - t).sum() for b, t in zip(betas, betas_target)))


def test_integer_walk_l1_decreases_by_one():
    """Test distance L¹ à la cible : −1 à chaque pas"""
    aP, aPP = np.array([1.0, 1.0]), np.array([2.0, 0.0])
    bPs, bPPs = [np.array([2.0, 0.0])] * 2, [np.array([1.0, 0.0])] * 2
    res = interp.interpolate(aP, aPP, bPs, bPPs, 2, integer_mode=True)

    vectors = {"α": aP.copy(), "β1": bPs[0].copy(), "β2": bPs[1].copy()}
    distance = l1_distance(vectors["α"], [vectors["β1"], vectors["β2"]], aPP, bPPs)
    assert distance == len(res.steps)
    for step in res.steps:
        name, rest = step.split("[")
        index, op = rest.split("] ")
        vectors[name][int(index) - 1] += 1 if op.startswith("+") else -1
        new = l1_distance(vectors["α"], [vectors["β1"], vectors["β2"]], aPP, bPPs)
        assert new == distance - 1
        distance = new


@pytest.mark.parametrize("seed", range(4))
def test_rearrangement_stays_between(seed):
    """Test réarrangement décroissant d'un vecteur compris entre deux suites décroissantes"""
    rng = np.random.default_rng(seed)
    for _ in range(25):
        first = interp.rearrange(rng.normal(size=5))
        second = interp.rearrange(rng.normal(size=5))
        lower, upper = np.minimum(first, second), np.maximum(first, second)
        values = rng.uniform(lower, upper)
        assert interp.is_between(interp.rearrange(values), first, second)


def test_realize_two_sided_converges_with_order():
    """Test troncatures d'ordre 1 et 2 : les premiers termes reproduisent α, β, γ"""
    alpha = TwoSidedSpectrum(pos=tuple(1.0 / i for i in range(1, 9)))
    beta = TwoSidedSpectrum(pos=tuple(1.0 / (2 * i) for i in range(1, 9)))
    errors = []
    for n in (1, 2):
        res = interp.realize_two_sided(alpha, [beta, beta], n)
        assert len(res.alpha) == 3 * n
        error = max(abs(res.alpha[i] - alpha.pos[i]) for i in range(n))
        error = max([error] + [abs(b[i] - beta.pos[i]) for b in res.betas for i in range(n)])
        errors.append(error)
    assert errors[1] <= errors[0] + 1e-12
    assert max(errors) <= 1e-9


@pytest.mark.parametrize("seed", range(4))
def test_interpolate_then_synthesize(seed, feasible_integers):
    """Test interpolation entière puis témoin matriciel sur des instances réalisables"""
    rng = np.random.default_rng(seed)
    for _ in range(25):
        N, m = int(rng.integers(2, 5)), int(rng.integers(1, 4))
        alpha, betas = feasible_integers(rng, N, m)
        d = float(rng.integers(1, 3))
        aP, aPP = alpha.copy(), alpha.copy()
        aP[-1] -= d
        aPP[0] += d

        res = interp.interpolate(aP, aPP, betas, betas, N, integer_mode=True)
        assert interp.is_between(res.alpha, aP, aPP)
        assert all(interp.is_between(b, t, t) for b, t in zip(res.betas, betas))
        assert SpectraService.trace_gap(res.alpha, res.betas) == 0.0
        assert SpectraService.scan_finite(res.alpha, res.betas, N) == []
        assert len([s for s in res.steps if s.endswith("= 1")]) <= 2 * d

        W = WitnessService.synthesize(res.alpha, res.betas, seed=seed)
        assert W.sum_residual <= 1e-8


def test_rearrange():
    """Test réarrangement décroissant"""
    assert interp.rearrange([1, 3, 2]).tolist() == [3, 2, 1]


def test_truncate_pad():
    """Test instance tronquée d'ordre n"""
    alpha = TwoSidedSpectrum(pos=(5.0,), neg=(-3.0, -1.0))
    betas = [TwoSidedSpectrum(pos=(2.0, 1.0)), TwoSidedSpectrum(pos=(1.0,))]
    aP, aPP, bPs, bPPs = interp.truncate_pad(alpha, betas, 1)
    assert aP.tolist() == [5.0, -1.0, -3.0]
    assert aPP.tolist() == [5.0, 0.0, -3.0]
    assert bPs[0].tolist() == [2.0, 1.0, 0.0]
    assert bPPs[0].tolist() == [2.0, 0.0, 0.0]


def test_truncate_pad_invalid_order():
    """Test n < 1"""
    with pytest.raises(ValueError):
        interp.truncate_pad(TwoSidedSpectrum(), [TwoSidedSpectrum()], 0)


def test_realize_two_sided():
    """Test réalisation de rang ≤ (m+1)n"""
    alpha = TwoSidedSpectrum(pos=(1.0, 0.5))
    betas = [TwoSidedSpectrum(pos=(0.5, 0.25)), TwoSidedSpectrum(pos=(0.5, 0.25))]
    res = interp.realize_two_sided(alpha, betas, 1)
    assert len(res.alpha) == 3
    assert SpectraService.scan_finite(res.alpha, res.betas, 3) == []
    assert float(np.sum(res.alpha)) == pytest.approx(sum(float(np.sum(b)) for b in res.betas))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
