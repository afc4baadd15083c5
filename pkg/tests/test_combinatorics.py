"""
Tests du service de combinatoire
"""

from itertools import product

import pytest

from app.schemas.horn import HornTuple
from app.services.combinatorics_service import CombinatoricsService as comb
from app.services.errors import HypothesisError
from app.services.horn_sets_service import HornSetsService


def test_pi_and_weight():
    """Test π(I) et poids"""
    assert comb.pi([2, 4]) == (2, 1)
    assert comb.pi([1, 2, 3]) == (0, 0, 0)
    assert comb.weight([2, 4]) == 3
    assert comb.pi([]) == ()


def test_pi_rejects_unsorted():
    """Test ensemble non strictement croissant"""
    with pytest.raises(ValueError):
        comb.pi([2, 2])


def test_sym_and_complement():
    """Test symétrie et complément"""
    assert comb.sym([1, 3], 5) == (3, 5)
    assert comb.complement([2, 4], 5) == (1, 3, 5)
    assert comb.complement([], 2) == (1, 2)


def test_complement_prefix():
    """Test préfixe du complément"""
    assert comb.complement_prefix([1, 3], 3) == (2, 4, 5)
    assert comb.complement_prefix([5], 0) == ()


def test_compose():
    """Test composition I∘I′"""
    assert comb.compose([2, 4, 5], [1, 3]) == (2, 5)
    with pytest.raises(ValueError):
        comb.compose([2, 4], [3])


def test_subsets_lexicographic():
    """Test énumération des parties"""
    assert comb.subsets(3, 2) == [(1, 2), (1, 3), (2, 3)]


def test_normalize_partition():
    """Test suppression des zéros finaux"""
    assert comb.normalize_partition([2, 1, 0, 0]) == (2, 1)
    assert comb.partitions_equal([1, 0], [1])
    with pytest.raises(ValueError):
        comb.normalize_partition([1, 2])


def test_insert_gaps():
    """Test insertion de trous"""
    t = HornTuple(m=2, N=2, r=2, I=(1, 2), J=((1, 2), (1, 2)))
    out = comb.insert_gaps(t, [1, 0], 3)
    assert out.N == 5
    assert out.I == (1, 5)
    assert out.J == ((1, 5), (1, 2))


def test_insert_gaps_too_many():
    """Test Σq > r"""
    t = HornTuple(m=2, N=2, r=1, I=(2,), J=((1,), (2,)))
    with pytest.raises(HypothesisError):
        comb.insert_gaps(t, [1, 1], 1)


def test_compose_tuples():
    """Test composition de tuples"""
    t = HornTuple(m=2, N=3, r=2, I=(2, 3), J=((1, 3), (1, 3)))
    tp = HornTuple(m=2, N=2, r=1, I=(2,), J=((1,), (2,)))
    out = comb.compose_tuples(t, tp)
    assert out.raw == ((3,), (1,), (3,))


def test_union_tuples():
    """Test union avec le complément"""
    t = HornTuple(m=2, N=3, r=1, I=(2,), J=((1,), (2,)))
    tp = HornTuple(m=2, N=2, r=1, I=(1,), J=((1,), (1,)))
    out = comb.union_tuples(t, tp)
    assert out.raw == ((1, 2), (1, 2), (1, 2))


def test_complement_sym_involution():
    """Test involution de la bijection complémentaire"""
    t = HornTuple(m=2, N=3, r=1, I=(2,), J=((1,), (2,)))
    out = comb.complement_sym(t)
    assert out.r == 2
    assert comb.complement_sym(out) == t


@pytest.mark.parametrize("N", range(1, 9))
def test_sym_weight_identity(N):
    """Test |π(I)| + |π(I_sym)| = r(N−r)"""
    for r in range(N + 1):
        for I in comb.subsets(N, r):
            assert comb.weight(I) + comb.weight(comb.sym(I, N)) == r * (N - r)
            assert comb.sym(comb.sym(I, N), N) == I


@pytest.mark.parametrize("N", range(1, 5))
def test_insert_gaps_stays_in_T(N):
    """Test insertion de trous : le résultat appartient à T"""
    for r in range(1, N + 1):
        for t in HornSetsService.enumerate("T", N, r, 2):
            for q in product(range(r + 1), repeat=2):
                if sum(q) > r:
                    continue
                for M in range(3):
                    assert HornSetsService.member("T", comb.insert_gaps(t, q, M))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
