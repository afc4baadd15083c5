"""
Service des ensembles de Horn T_r^N(m+1), T̄_r^N(m+1), Ṫ_r^N(m+1)
Énumération récursive mémoïsée, appartenance, réduction T̄ → T
"""

import logging
import threading
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
import pandas as pd
from joblib import Memory, Parallel, delayed

from app.config import get_settings
from app.schemas.horn import HornTuple, RawTuple
from app.services.combinatorics_service import CombinatoricsService
from app.services.errors import HypothesisError, InternalInconsistencyError, ResourceCapError
from app.services.schur_hive_service import SchurHiveService

logger = logging.getLogger(__name__)


class HornSetKind(str, Enum):
    """Les trois familles d'ensembles : Ṫ ⊆ T ⊆ T̄"""
    T = "T"
    TBAR = "Tbar"
    TDOT = "Tdot"


# ============================================================================
# TABLES MÉMOÏSÉES (PUBLICATION ATOMIQUE PAR CELLULE)
# ============================================================================

_tables: Dict[Tuple[str, int, int, int], List[RawTuple]] = {}
_lock = threading.Lock()


@lru_cache()
def _memory(location: str) -> Memory:
    return Memory(location, verbose=0)


def _composed_weights(subsets: List[Tuple[int, ...]], r: int,
                      lower: List[Tuple[int, List[RawTuple]]], m: int):
    """
    Matrice des poids composés |π(S∘A)| pour chaque partie S de [N] et chaque
    partie A de [r] utilisée par un tuple de T_s^r, s < r

    Returns:
        (matrice (n_subsets, n_cols), colonnes côté I (P,), colonnes côté J (m, P))
    """
    weight = CombinatoricsService.weight
    compose = CombinatoricsService.compose
    columns: Dict[Tuple[int, ...], int] = {}
    lhs_cols: List[int] = []
    rhs_cols: List[List[int]] = [[] for _ in range(m)]
    for _, cell in lower:
        for raw in cell:
            for pos, part in enumerate(raw):
                col = columns.setdefault(part, len(columns))
                if pos == 0:
                    lhs_cols.append(col)
                else:
                    rhs_cols[pos - 1].append(col)
    matrix = np.zeros((len(subsets), len(columns)), dtype=np.int64)
    for part, col in columns.items():
        for x, s in enumerate(subsets):
            matrix[x, col] = weight(compose(s, part))
    return matrix, np.array(lhs_cols, dtype=np.int64), np.array(rhs_cols, dtype=np.int64)


def _compute_cell(kind: str, m: int, N: int, r: int) -> List[RawTuple]:
    """Calcule une cellule (kind, m, N, r) ; les cellules inférieures sont lues via la mémoïsation"""
    if r == 0:
        return [((),) * (m + 1)]
    if r == N:
        return [(tuple(range(1, N + 1)),) * (m + 1)]

    if kind == HornSetKind.TDOT.value:
        pi = CombinatoricsService.pi
        return [
            raw for raw in HornSetsService.table(HornSetKind.T, m, N, r)
            if SchurHiveService.multi_lr_coeff(pi(raw[0]), [pi(j) for j in raw[1:]]) == 1
        ]

    subsets = CombinatoricsService.subsets(N, r)
    weights = np.array([CombinatoricsService.weight(s) for s in subsets], dtype=np.int64)
    n = len(subsets)
    relaxed = kind == HornSetKind.TBAR.value

    # Candidats : on fixe d'abord la condition de poids (égalité pour T, ≤ pour T̄)
    buckets: Dict[int, List[int]] = {}
    for x in range(n):
        buckets.setdefault(int(weights[x]), []).append(x)
    max_w = int(weights.max())
    upto = {b: [x for x in range(n) if weights[x] <= b] for b in range(max_w + 1)}

    lower = [(s, HornSetsService.table(HornSetKind.T, m, r, s)) for s in range(1, r)]
    matrix, lhs_cols, rhs_cols = _composed_weights(subsets, r, lower, m)

    result: List[RawTuple] = []
    for i_idx in range(n):
        w = int(weights[i_idx])
        heads: List[Tuple[Tuple[int, ...], int]] = [((), 0)]
        for _ in range(m - 1):
            heads = [
                (h + (x,), used + int(weights[x]))
                for h, used in heads for x in range(n) if used + weights[x] <= w
            ]
        rows = []
        for head, used in heads:
            tails = upto.get(w - used, []) if relaxed else buckets.get(w - used, [])
            rows.extend((i_idx,) + head + (x,) for x in tails)
        if not rows:
            continue
        cand = np.array(rows, dtype=np.int64)
        if lhs_cols.size:
            lhs = matrix[cand[:, 0]][:, lhs_cols]
            rhs = sum(matrix[cand[:, k + 1]][:, rhs_cols[k]] for k in range(m))
            cand = cand[np.all(lhs >= rhs, axis=1)]
        result.extend(tuple(subsets[x] for x in row) for row in cand)

    result.sort()
    return result


def _load_cell(kind: str, m: int, N: int, r: int) -> List[RawTuple]:
    cache_dir = get_settings().cache_dir
    if cache_dir:
        return _memory(cache_dir).cache(_compute_cell)(kind, m, N, r)
    return _compute_cell(kind, m, N, r)


class HornCatalog:
    """
    Tables (N, r) → tuples triés pour N ≤ N_max
    """

    def __init__(self, kind: HornSetKind, m: int, N_max: int, table: Dict[Tuple[int, int], List[HornTuple]]):
        self.kind = kind
        self.m = m
        self.N_max = N_max
        self.table = table
        self._arrays: Dict[Tuple[int, int], Tuple[np.ndarray, np.ndarray]] = {}

    def tuples(self, N: int, r: int) -> List[HornTuple]:
        return self.table.get((N, r), [])

    def cells(self) -> List[Tuple[int, int]]:
        return sorted(self.table)

    def __iter__(self) -> Iterator[HornTuple]:
        for key in self.cells():
            yield from self.table[key]

    def __len__(self) -> int:
        return sum(len(v) for v in self.table.values())

    def arrays(self, N: int, r: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        Indices (base 1) sous forme de tableaux : I (T, r) et J (m, T, r)
        """
        key = (N, r)
        if key not in self._arrays:
            tuples = self.tuples(N, r)
            I = np.array([t.I for t in tuples], dtype=np.int64).reshape(len(tuples), r)
            J = np.array([[t.J[k] for t in tuples] for k in range(self.m)], dtype=np.int64)
            self._arrays[key] = (I, J.reshape(self.m, len(tuples), r))
        return self._arrays[key]


class HornSetsService:
    """
    Service d'énumération et d'appartenance aux ensembles de Horn

    Fonctionnalités :
    - enumerate : liste exacte de T, T̄ ou Ṫ pour (N, r, m)
    - member : test d'appartenance récursif
    - reduce_to_T : réduction T̄ → T par recherche dans la table
    - catalog / counts : toutes les cellules jusqu'à N_max
    """

    @staticmethod
    def check_cap(m: int, N: int, max_n: Optional[int] = None) -> None:
        cap = max_n if max_n is not None else get_settings().cap_for(m)
        if N > cap:
            logger.warning("énumération refusée : m=%d N=%d plafond=%d", m, N, cap)
            raise ResourceCapError(m, N, cap)

    @staticmethod
    def table(kind: HornSetKind, m: int, N: int, r: int) -> List[RawTuple]:
        """Cellule brute mémoïsée (sans contrôle de plafond)"""
        key = (HornSetKind(kind).value, m, N, r)
        with _lock:
            cached = _tables.get(key)
        if cached is not None:
            return cached
        cell = _load_cell(key[0], m, N, r)
        with _lock:
            cell = _tables.setdefault(key, cell)
        logger.debug("table %s m=%d N=%d r=%d : %d tuples", key[0], m, N, r, len(cell))
        return cell

    @staticmethod
    def clear_memory() -> None:
        """Vide la mémoïsation en processus"""
        with _lock:
            _tables.clear()

    @staticmethod
    def enumerate(kind: HornSetKind, N: int, r: int, m: int, max_n: Optional[int] = None) -> List[HornTuple]:
        """
        Énumère T_r^N(m+1), T̄_r^N(m+1) ou Ṫ_r^N(m+1)

        Args:
            kind: famille (T, Tbar, Tdot)
            N: taille ambiante
            r: cardinal
            m: nombre de sommants
            max_n: plafond explicite (sinon celui de la configuration)

        Returns:
            Liste triée de HornTuple
        """
        if m < 1:
            raise ValueError("m doit être ≥ 1")
        if not 0 <= r <= N:
            raise ValueError(f"r={r} hors de [0, {N}]")
        HornSetsService.check_cap(m, N, max_n)
        return [HornTuple.from_raw(N, raw) for raw in HornSetsService.table(kind, m, N, r)]

    @staticmethod
    def _satisfies_inequalities(raw: RawTuple, relaxed: bool) -> bool:
        weight = CombinatoricsService.weight
        compose = CombinatoricsService.compose
        I, Js = raw[0], raw[1:]
        w_I, w_J = weight(I), sum(weight(j) for j in Js)
        if (w_I < w_J) if relaxed else (w_I != w_J):
            return False
        r = len(I)
        for s in range(1, r):
            for sub in HornSetsService.table(HornSetKind.T, len(Js), r, s):
                lhs = weight(compose(I, sub[0]))
                rhs = sum(weight(compose(j, jp)) for j, jp in zip(Js, sub[1:]))
                if lhs < rhs:
                    return False
        return True

    @staticmethod
    def member(kind: HornSetKind, t: HornTuple, max_n: Optional[int] = None) -> bool:
        """
        Appartenance de t à l'ensemble demandé (définition récursive)
        """
        kind = HornSetKind(kind)
        if t.r == 0:
            return True
        HornSetsService.check_cap(t.m, t.r, max_n)
        if not HornSetsService._satisfies_inequalities(t.raw, relaxed=kind == HornSetKind.TBAR):
            return False
        if kind == HornSetKind.TDOT:
            pi = CombinatoricsService.pi
            return SchurHiveService.multi_lr_coeff(pi(t.I), [pi(j) for j in t.J]) == 1
        return True

    @staticmethod
    def reduce_to_T(t: HornTuple, max_n: Optional[int] = None) -> HornTuple:
        """
        Pour t ∈ T̄_r^N, renvoie t′ ∈ T_r^N avec I′ ≤ I et J′⁽ᵏ⁾ ≥ J⁽ᵏ⁾ point par point

        Départage : poids |π(I′)| minimal, puis ordre lexicographique
        """
        if not HornSetsService.member(HornSetKind.TBAR, t, max_n):
            raise HypothesisError(f"{t.label()} n'appartient pas à T̄")
        if HornSetsService.member(HornSetKind.T, t, max_n):
            return t
        HornSetsService.check_cap(t.m, t.N, max_n)
        weight = CombinatoricsService.weight
        best: Optional[RawTuple] = None
        for raw in HornSetsService.table(HornSetKind.T, t.m, t.N, t.r):
            if any(a > b for a, b in zip(raw[0], t.I)):
                continue
            if any(a < b for jp, j in zip(raw[1:], t.J) for a, b in zip(jp, j)):
                continue
            if best is None or (weight(raw[0]), raw) < (weight(best[0]), best):
                best = raw
        if best is None:
            raise InternalInconsistencyError(f"Aucune réduction trouvée pour {t.label()}")
        return HornTuple.from_raw(t.N, best)

    @staticmethod
    def catalog(kind: HornSetKind, m: int, N_max: int, max_n: Optional[int] = None,
                n_jobs: Optional[int] = None) -> HornCatalog:
        """
        Toutes les cellules (N, r), 0 ≤ r ≤ N ≤ N_max

        Les cellules d'un même N sont indépendantes et peuvent être
        calculées en parallèle (threads joblib).
        """
        kind = HornSetKind(kind)
        HornSetsService.check_cap(m, N_max, max_n)
        n_jobs = n_jobs or get_settings().threads
        table: Dict[Tuple[int, int], List[HornTuple]] = {}
        for N in range(N_max + 1):
            cells = Parallel(n_jobs=n_jobs, prefer="threads")(
                delayed(HornSetsService.table)(kind, m, N, r) for r in range(N + 1)
            )
            for r, cell in enumerate(cells):
                table[(N, r)] = [HornTuple.from_raw(N, raw) for raw in cell]
        return HornCatalog(kind, m, N_max, table)

    @staticmethod
    def counts(kind: HornSetKind, m: int, N_max: int, max_n: Optional[int] = None,
               n_jobs: Optional[int] = None) -> pd.DataFrame:
        """Cardinalités (N, r, kind, count)"""
        catalog = HornSetsService.catalog(kind, m, N_max, max_n, n_jobs)
        rows = [
            {"N": N, "r": r, "kind": HornSetKind(kind).value, "count": len(catalog.tuples(N, r))}
            for N, r in catalog.cells()
        ]
        return pd.DataFrame(rows, columns=["N", "r", "kind", "count"])
