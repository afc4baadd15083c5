"""
Service de combinatoire des ensembles d'indices
Partitions π(I), symétrie, compléments, composition et opérations
structurelles sur les tuples de Horn
"""

from itertools import combinations
from typing import Iterable, List, Sequence, Tuple

from app.schemas.horn import HornTuple, IndexSet, check_index_set
from app.services.errors import HypothesisError


Partition = Tuple[int, ...]


class CombinatoricsService:
    """
    Opérations pures sur ensembles d'indices et tuples de Horn

    Un ensemble d'indices est un tuple strictement croissant ; sa vue
    fonctionnelle I(ℓ) est I[ℓ-1].
    """

    # ========================================================================
    # ENSEMBLES D'INDICES ET PARTITIONS
    # ========================================================================

    @staticmethod
    def pi(I: Sequence[int]) -> Partition:
        """
        Partition π(I) = (I(r)−r ≥ … ≥ I(1)−1)

        Args:
            I: ensemble d'indices

        Returns:
            Partition de longueur r (zéros finaux conservés)
        """
        I = check_index_set(I)
        r = len(I)
        return tuple(I[l - 1] - l for l in range(r, 0, -1))

    @staticmethod
    def weight(I: Sequence[int]) -> int:
        """|π(I)| = Σ (I(ℓ) − ℓ)"""
        return sum(i - l for l, i in enumerate(I, start=1))

    @staticmethod
    def normalize_partition(parts: Iterable[int]) -> Partition:
        """Supprime les zéros finaux et vérifie la décroissance"""
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"Partition avec part négative : {list(parts)}")
        if any(b > a for a, b in zip(parts, parts[1:])):
            raise ValueError(f"Partition non décroissante : {list(parts)}")
        end = len(parts)
        while end and parts[end - 1] == 0:
            end -= 1
        return parts[:end]

    @staticmethod
    def partitions_equal(a: Sequence[int], b: Sequence[int]) -> bool:
        """Égalité de partitions aux zéros finaux près"""
        norm = CombinatoricsService.normalize_partition
        return norm(a) == norm(b)

    @staticmethod
    def sym(I: Sequence[int], N: int) -> IndexSet:
        """I_sym = {N+1−i : i ∈ I}"""
        I = check_index_set(I, N)
        return tuple(sorted(N + 1 - i for i in I))

    @staticmethod
    def complement(I: Sequence[int], N: int) -> IndexSet:
        """Complément de I dans [N]"""
        members = set(check_index_set(I, N))
        return tuple(i for i in range(1, N + 1) if i not in members)

    @staticmethod
    def complement_prefix(I: Sequence[int], p: int) -> IndexSet:
        """Les p plus petits entiers positifs hors de I"""
        if p < 0:
            raise ValueError("p doit être ≥ 0")
        members = set(I)
        out: List[int] = []
        candidate = 1
        while len(out) < p:
            if candidate not in members:
                out.append(candidate)
            candidate += 1
        return tuple(out)

    @staticmethod
    def compose(I: Sequence[int], Iprime: Sequence[int]) -> IndexSet:
        """I∘I′ = {I(ℓ) : ℓ ∈ I′}"""
        Iprime = check_index_set(Iprime)
        if Iprime and Iprime[-1] > len(I):
            raise ValueError(f"Élément {Iprime[-1]} de I′ dépasse |I| = {len(I)}")
        return tuple(I[l - 1] for l in Iprime)

    @staticmethod
    def subsets(N: int, r: int) -> List[IndexSet]:
        """Parties à r éléments de [N] en ordre lexicographique"""
        return list(combinations(range(1, N + 1), r))

    # ========================================================================
    # OPÉRATIONS SUR LES TUPLES
    # ========================================================================

    @staticmethod
    def insert_gaps(t: HornTuple, q: Sequence[int], M: int) -> HornTuple:
        """
        Insertion de trous : les Σq_k plus grands éléments de I et les q_k
        plus grands éléments de J⁽ᵏ⁾ sont décalés de M

        Args:
            t: tuple de T_r^N(m+1)
            q: m entiers ≥ 0 avec Σq_k ≤ r
            M: décalage ≥ 0

        Returns:
            Tuple de T_r^{N+M}(m+1)
        """
        q = tuple(int(x) for x in q)
        if len(q) != t.m or any(x < 0 for x in q):
            raise ValueError(f"q doit contenir {t.m} entiers ≥ 0")
        if M < 0:
            raise ValueError("M doit être ≥ 0")
        total = sum(q)
        if total > t.r:
            raise HypothesisError(f"Σq_k = {total} > r = {t.r}")

        def shift(s: IndexSet, count: int) -> IndexSet:
            cut = len(s) - count
            return s[:cut] + tuple(x + M for x in s[cut:])

        return HornTuple(
            m=t.m, N=t.N + M, r=t.r,
            I=shift(t.I, total),
            J=tuple(shift(j, qk) for j, qk in zip(t.J, q)),
        )

    @staticmethod
    def compose_tuples(t: HornTuple, tp: HornTuple) -> HornTuple:
        """(I∘I′, J⁽¹⁾∘J′⁽¹⁾, …) pour t ∈ T̄_r^N et tp ∈ T̄_x^r"""
        if tp.N != t.r or tp.m != t.m:
            raise ValueError(f"Dimensions incompatibles : tp.N={tp.N}, r={t.r}, m={t.m}/{tp.m}")
        compose = CombinatoricsService.compose
        return HornTuple(
            m=t.m, N=t.N, r=tp.r,
            I=compose(t.I, tp.I),
            J=tuple(compose(j, jp) for j, jp in zip(t.J, tp.J)),
        )

    @staticmethod
    def union_tuples(t: HornTuple, tp: HornTuple) -> HornTuple:
        """
        I″ = I ∪ (Iᶜ∘I′), J″⁽ᵏ⁾ = J⁽ᵏ⁾ ∪ (J⁽ᵏ⁾ᶜ∘J′⁽ᵏ⁾), compléments dans [N]
        pour t ∈ T̄_r^N et tp ∈ T̄_y^{N−r}
        """
        if tp.N != t.N - t.r or tp.m != t.m:
            raise ValueError(f"Dimensions incompatibles : tp.N={tp.N}, N−r={t.N - t.r}")
        comb = CombinatoricsService

        def merge(s: IndexSet, sp: IndexSet) -> IndexSet:
            return tuple(sorted(s + comb.compose(comb.complement(s, t.N), sp)))

        return HornTuple(
            m=t.m, N=t.N, r=t.r + tp.r,
            I=merge(t.I, tp.I),
            J=tuple(merge(j, jp) for j, jp in zip(t.J, tp.J)),
        )

    @staticmethod
    def complement_sym(t: HornTuple) -> HornTuple:
        """
        Bijection T_r^N → T_{N−r}^N : (complément de I_sym, compléments des J_sym)
        """
        comb = CombinatoricsService

        def flip(s: IndexSet) -> IndexSet:
            return comb.complement(comb.sym(s, t.N), t.N)

        return HornTuple(m=t.m, N=t.N, r=t.N - t.r, I=flip(t.I), J=tuple(flip(j) for j in t.J))
