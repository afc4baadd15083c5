"""
Tests des ensembles de Horn T, T̄ et Ṫ
"""

from itertools import product

import pytest

from app.schemas.horn import HornTuple
from app.services.combinatorics_service import CombinatoricsService as comb
from app.services.errors import HypothesisError, ResourceCapError
from app.services.horn_sets_service import HornSetKind, HornSetsService
from app.services.schur_hive_service import SchurHiveService


def labels(tuples):
    return {t.label() for t in tuples}


def test_enumerate_T_small():
    """Test T_1^2(3)"""
    out = HornSetsService.enumerate(HornSetKind.T, 2, 1, 2)
    assert labels(out) == {"({1},{1},{1})", "({2},{1},{2})", "({2},{2},{1})"}


def test_enumerate_trivial_cells():
    """Test r = 0 et r = N"""
    assert len(HornSetsService.enumerate("T", 3, 0, 2)) == 1
    full = HornSetsService.enumerate("T", 3, 3, 2)
    assert full[0].raw == ((1, 2, 3),) * 3


def test_enumerate_m1_is_diagonal():
    """Test m = 1 : I = J"""
    out = HornSetsService.enumerate("T", 3, 2, 1)
    assert all(t.I == t.J[0] for t in out)
    assert len(out) == 3


def test_nesting_Tdot_T_Tbar():
    """Test inclusions Ṫ ⊆ T ⊆ T̄"""
    for r in range(4):
        dot = labels(HornSetsService.enumerate("Tdot", 3, r, 2))
        t = labels(HornSetsService.enumerate("T", 3, r, 2))
        bar = labels(HornSetsService.enumerate("Tbar", 3, r, 2))
        assert dot <= t <= bar


def test_T_weight_condition():
    """Test |π(I)| = Σ|π(J)| pour tout tuple de T"""
    for t in HornSetsService.enumerate("T", 4, 2, 2):
        assert comb.weight(t.I) == sum(comb.weight(j) for j in t.J)


def test_member():
    """Test appartenance"""
    t = HornTuple(m=2, N=2, r=1, I=(2,), J=((1,), (2,)))
    assert HornSetsService.member("T", t)
    assert HornSetsService.member("Tdot", t)
    loose = HornTuple(m=2, N=2, r=1, I=(2,), J=((1,), (1,)))
    assert not HornSetsService.member("T", loose)
    assert HornSetsService.member("Tbar", loose)


def test_reduce_to_T():
    """Test réduction T̄ → T"""
    loose = HornTuple(m=2, N=2, r=1, I=(2,), J=((1,), (1,)))
    out = HornSetsService.reduce_to_T(loose)
    assert out.raw == ((1,), (1,), (1,))


def test_reduce_outside_Tbar():
    """Test réduction d'un tuple hors de T̄"""
    bad = HornTuple(m=2, N=2, r=1, I=(1,), J=((2,), (1,)))
    with pytest.raises(HypothesisError):
        HornSetsService.reduce_to_T(bad)


def test_resource_cap():
    """Test plafond explicite"""
    with pytest.raises(ResourceCapError) as exc:
        HornSetsService.enumerate("T", 3, 1, 2, max_n=2)
    assert exc.value.cap == 2


def test_counts_frame():
    """Test table des cardinalités"""
    frame = HornSetsService.counts("T", 2, 2)
    assert list(frame.columns) == ["N", "r", "kind", "count"]
    row = frame[(frame["N"] == 2) & (frame["r"] == 1)]
    assert int(row["count"].iloc[0]) == 3


def test_catalog_threads_match_serial():
    """Test catalogue parallèle identique au catalogue séquentiel"""
    serial = HornSetsService.catalog("T", 2, 3, n_jobs=1)
    threaded = HornSetsService.catalog("T", 2, 3, n_jobs=2)
    for N, r in serial.cells():
        assert serial.tuples(N, r) == threaded.tuples(N, r)


def lr_oracle(N, r, unique=False):
    """Tuples de poids équilibré dont le coefficient LR est non nul (ou égal à 1)"""
    out = set()
    for I, J1, J2 in product(comb.subsets(N, r), repeat=3):
        if comb.weight(I) != comb.weight(J1) + comb.weight(J2):
            continue
        c = SchurHiveService.lr_coeff(comb.pi(I), comb.pi(J1), comb.pi(J2))
        if (c == 1) if unique else (c > 0):
            out.add((I, J1, J2))
    return out


@pytest.mark.parametrize("N", range(1, 6))
def test_T_matches_lr_oracle(N):
    """Test T et Ṫ contre les coefficients de Littlewood–Richardson"""
    for r in range(N + 1):
        assert {t.raw for t in HornSetsService.enumerate("T", N, r, 2)} == lr_oracle(N, r)
        assert {t.raw for t in HornSetsService.enumerate("Tdot", N, r, 2)} == lr_oracle(N, r, unique=True)


@pytest.mark.parametrize("N", range(1, 6))
def test_T_nesting(N):
    """Test T_r^N = tuples de T_r^{N+1} contenus dans [N]"""
    for r in range(N + 1):
        small = {t.raw for t in HornSetsService.enumerate("T", N, r, 2)}
        large = {t.raw for t in HornSetsService.enumerate("T", N + 1, r, 2)}
        assert small <= large
        assert {raw for raw in large if all(max(s, default=0) <= N for s in raw)} == small


@pytest.mark.parametrize("N", range(1, 6))
def test_Tbar_J_inside_I_range(N):
    """Test I ⊆ [n] entraîne J⁽ᵏ⁾ ⊆ [n] sur T̄"""
    for r in range(1, N + 1):
        for t in HornSetsService.enumerate("Tbar", N, r, 2):
            assert all(max(j) <= max(t.I) for j in t.J)


@pytest.mark.parametrize("N", [1, 2])
def test_Tbar_counting_bound(N):
    """Test |I∩[N]| + Σ|J⁽ᵏ⁾∖[2N]| ≤ r sur T̄_r^{3N}(3)"""
    for r in range(3 * N + 1):
        for t in HornSetsService.enumerate("Tbar", 3 * N, r, 2):
            low = sum(1 for i in t.I if i <= N)
            high = sum(1 for j in t.J for x in j if x > 2 * N)
            assert low + high <= r


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
