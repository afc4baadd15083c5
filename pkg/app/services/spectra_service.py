"""
Service des spectres et des familles d'inégalités
Évaluation et balayage : Horn, forme complémentaire, forme inverse,
inégalités étendues (bilatères) et cas positif
"""

import logging
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from app.config import VIOLATION_TOL
from app.schemas.horn import HornTuple, InequalityRecord, RawTuple, TwoSidedSpectrum
from app.services.combinatorics_service import CombinatoricsService
from app.services.errors import HypothesisError
from app.services.horn_sets_service import HornSetKind, HornSetsService

logger = logging.getLogger(__name__)

SpectrumLike = Union[Sequence[float], np.ndarray]


# ============================================================================
# OUTILS
# ============================================================================

@lru_cache(maxsize=None)
def _cell_arrays(kind: str, m: int, N: int, r: int) -> Tuple[Tuple[RawTuple, ...], np.ndarray, np.ndarray]:
    """Cellule sous forme (tuples bruts, I (T, r), J (m, T, r)), indices base 1"""
    raws = tuple(HornSetsService.table(HornSetKind(kind), m, N, r))
    I = np.array([raw[0] for raw in raws], dtype=np.int64).reshape(len(raws), r)
    J = np.array([[raw[k + 1] for raw in raws] for k in range(m)], dtype=np.int64)
    return raws, I, J.reshape(m, len(raws), r)


def _complement_mask(sets: np.ndarray, N: int) -> np.ndarray:
    """Masque (T, N) des indices de [N] hors de chaque ligne de sets"""
    mask = np.ones((sets.shape[0], N), dtype=bool)
    rows = np.repeat(np.arange(sets.shape[0]), sets.shape[1])
    mask[rows, sets.ravel() - 1] = False
    return mask


def _gather_sum(values: np.ndarray, sets: np.ndarray) -> np.ndarray:
    """Σ values[i−1] sur chaque ligne de sets"""
    if sets.shape[1] == 0:
        return np.zeros(sets.shape[0])
    return values[sets - 1].sum(axis=1)


def _masked_sum(values: np.ndarray, mask: np.ndarray) -> np.ndarray:
    return np.where(mask, values[None, : mask.shape[1]], 0.0).sum(axis=1)


def _two_sided_arrays(s: TwoSidedSpectrum, length: int) -> Tuple[np.ndarray, np.ndarray]:
    """Parties positive et négative complétées par des zéros jusqu'à length"""
    pos = np.zeros(max(length, len(s.pos)))
    neg = np.zeros(max(length, len(s.neg)))
    pos[: len(s.pos)] = s.pos
    neg[: len(s.neg)] = s.neg
    return pos, neg


def _lookup(pos: np.ndarray, neg: np.ndarray, idx: np.ndarray) -> np.ndarray:
    """α_n pour un tableau d'indices non nuls (positifs → pos, négatifs → neg)"""
    out = np.zeros(idx.shape)
    positive = idx > 0
    out[positive] = pos[idx[positive] - 1]
    out[~positive] = neg[-idx[~positive] - 1]
    return out


class SpectraService:
    """
    Service d'évaluation des inégalités spectrales

    Fonctionnalités :
    - spectres finis (tableaux numpy décroissants, ±∞ pour les enveloppes)
    - eval_horn, eval_horn_sym, eval_reverse, eval_extended
    - scan_finite, scan_reverse, scan_extended, scan_positive
    - trace_gap et tables de violations (pandas)
    """

    # ========================================================================
    # SPECTRES
    # ========================================================================

    @staticmethod
    def as_spectrum(values: SpectrumLike, length: Optional[int] = None, pad: bool = False) -> np.ndarray:
        """
        Valide un spectre fini faiblement décroissant

        Args:
            values: valeurs (les chaînes "inf" / "-inf" sont acceptées)
            length: longueur minimale requise
            pad: compléter par des zéros au lieu d'échouer si trop court
        """
        arr = np.array([float(v) for v in values], dtype=float)
        if np.isnan(arr).any():
            raise ValueError("Valeur NaN dans un spectre")
        if np.any(arr[1:] > arr[:-1]):
            raise ValueError(f"Spectre non décroissant : {arr.tolist()}")
        if length is not None and len(arr) < length:
            if not pad:
                raise ValueError(f"Spectre de longueur {len(arr)} < N = {length}")
            arr = np.concatenate([arr, np.zeros(length - len(arr))])
            if np.any(arr[1:] > arr[:-1]):
                raise ValueError("Complétion par zéros incompatible avec la décroissance")
        return arr

    @staticmethod
    def split_two_sided(values: SpectrumLike, zero_tol: float = 0.0) -> TwoSidedSpectrum:
        """Λ₀ d'une liste de valeurs propres : positives décroissantes, négatives croissantes vers 0"""
        arr = np.asarray(values, dtype=float)
        pos = np.sort(arr[arr > zero_tol])[::-1]
        neg = np.sort(arr[arr < -zero_tol])
        return TwoSidedSpectrum(pos=tuple(pos.tolist()), neg=tuple(neg.tolist()))

    @staticmethod
    def bar(s: TwoSidedSpectrum) -> TwoSidedSpectrum:
        """(ᾱ)_k = −α_{−k}"""
        return s.bar()

    @staticmethod
    def trace_gap(alpha: SpectrumLike, betas: Sequence[SpectrumLike]) -> float:
        """Σα − Σ_k Σβ⁽ᵏ⁾"""
        alpha = np.asarray(alpha, dtype=float)
        if not np.isfinite(alpha).all() or not all(np.isfinite(np.asarray(b, dtype=float)).all() for b in betas):
            raise ValueError("trace_gap n'accepte que des valeurs finies")
        return float(alpha.sum() - sum(np.asarray(b, dtype=float).sum() for b in betas))

    # ========================================================================
    # ENREGISTREMENTS
    # ========================================================================

    @staticmethod
    def _slacks(lhs: np.ndarray, rhs: np.ndarray, sense: str) -> Tuple[np.ndarray, np.ndarray]:
        """
        Écarts vectorisés ; −∞ à gauche ou +∞ à droite (sens ≤), et
        symétriquement pour ≥, donne une inégalité satisfaite d'office
        """
        lhs = np.asarray(lhs, dtype=float)
        rhs = np.asarray(rhs, dtype=float)
        if np.isnan(lhs).any() or np.isnan(rhs).any():
            raise ValueError("Placement d'infini invalide (∞ − ∞)")
        if sense == "le":
            auto = (lhs == -np.inf) | (rhs == np.inf)
        else:
            auto = (lhs == np.inf) | (rhs == -np.inf)
        finite = np.isfinite(lhs) & np.isfinite(rhs)
        if np.any(~auto & ~finite):
            raise ValueError("Placement d'infini invalide dans une inégalité")
        with np.errstate(invalid="ignore"):
            slack = np.where(sense == "le", rhs - lhs, lhs - rhs)
        slack = np.where(auto, np.inf, slack)
        return slack, auto

    @staticmethod
    def make_record(t: HornTuple, lhs: float, rhs: float, family: str, sense: str = "le",
                    q: Sequence[int] = (), slack: Optional[float] = None,
                    auto: Optional[bool] = None) -> InequalityRecord:
        if slack is None or auto is None:
            s, a = SpectraService._slacks(np.array([lhs]), np.array([rhs]), sense)
            slack, auto = float(s[0]), bool(a[0])
        return InequalityRecord(
            horn_tuple=t, q=tuple(int(x) for x in q), q_total=int(sum(q)),
            lhs=float(lhs), rhs=float(rhs), family=family, sense=sense,
            slack=float(slack), auto_satisfied=bool(auto),
            tight=bool(not auto and abs(slack) <= VIOLATION_TOL),
        )

    # ========================================================================
    # ÉVALUATIONS UNITAIRES
    # ========================================================================

    @staticmethod
    def _check_betas(t: HornTuple, betas: Sequence) -> None:
        if len(betas) != t.m:
            raise ValueError(f"{len(betas)} spectres β fournis pour m={t.m}")

    @staticmethod
    def eval_horn(t: HornTuple, alpha: SpectrumLike, betas: Sequence[SpectrumLike]) -> InequalityRecord:
        """
        Inégalité de Horn Σ_ℓ α_{I(ℓ)} ≤ Σ_k Σ_ℓ β⁽ᵏ⁾_{J⁽ᵏ⁾(ℓ)}
        """
        SpectraService._check_betas(t, betas)
        alpha = SpectraService.as_spectrum(alpha, t.N)
        betas = [SpectraService.as_spectrum(b, t.N) for b in betas]
        lhs = float(np.sum(alpha[np.array(t.I, dtype=int) - 1])) if t.r else 0.0
        rhs = sum(float(np.sum(b[np.array(j, dtype=int) - 1])) if t.r else 0.0 for b, j in zip(betas, t.J))
        return SpectraService.make_record(t, lhs, rhs, "horn")

    @staticmethod
    def eval_horn_sym(t: HornTuple, alpha: SpectrumLike, betas: Sequence[SpectrumLike]) -> InequalityRecord:
        """
        Forme complémentaire : Σ_{i∉I_sym} α_i ≤ Σ_k Σ_{j∉J⁽ᵏ⁾_sym} β⁽ᵏ⁾_j
        """
        SpectraService._check_betas(t, betas)
        alpha = SpectraService.as_spectrum(alpha, t.N)
        betas = [SpectraService.as_spectrum(b, t.N) for b in betas]
        comb = CombinatoricsService

        def outside(values: np.ndarray, s) -> float:
            idx = np.array(comb.complement(comb.sym(s, t.N), t.N), dtype=int)
            return float(values[idx - 1].sum()) if idx.size else 0.0

        lhs = outside(alpha, t.I)
        rhs = sum(outside(b, j) for b, j in zip(betas, t.J))
        return SpectraService.make_record(t, lhs, rhs, "horn_sym")

    @staticmethod
    def eval_reverse(t: HornTuple, alpha: SpectrumLike, betas: Sequence[SpectrumLike]) -> InequalityRecord:
        """
        Forme inverse : Σ_{i∉I} α_i ≥ Σ_k Σ_{j∉J⁽ᵏ⁾} β⁽ᵏ⁾_j (données doublement primées)
        """
        SpectraService._check_betas(t, betas)
        alpha = SpectraService.as_spectrum(alpha, t.N)
        betas = [SpectraService.as_spectrum(b, t.N) for b in betas]

        def outside(values: np.ndarray, s) -> float:
            idx = np.array(CombinatoricsService.complement(s, t.N), dtype=int)
            return float(values[idx - 1].sum()) if idx.size else 0.0

        lhs = outside(alpha, t.I)
        rhs = sum(outside(b, j) for b, j in zip(betas, t.J))
        return SpectraService.make_record(t, lhs, rhs, "reverse", sense="ge")

    @staticmethod
    def extended_positions(s: Sequence[int], q: int, N: int) -> List[int]:
        """Indices bilatères : I(ℓ) pour ℓ ≤ r−q, puis I(ℓ)−N−1"""
        cut = len(s) - q
        return [i if l < cut else i - N - 1 for l, i in enumerate(s)]

    @staticmethod
    def eval_extended(t: HornTuple, q: Sequence[int], alpha: TwoSidedSpectrum,
                      betas: Sequence[TwoSidedSpectrum]) -> InequalityRecord:
        """
        Inégalité de Horn étendue pour (t, q)

        lhs = Σ_{ℓ≤r−q} α_{I(ℓ)} + Σ_{ℓ>r−q} α_{I(ℓ)−N−1} avec q = Σq_k,
        rhs analogue avec q_k pour chaque β⁽ᵏ⁾
        """
        SpectraService._check_betas(t, betas)
        q = tuple(int(x) for x in q)
        if len(q) != t.m or any(x < 0 for x in q):
            raise ValueError(f"q doit contenir {t.m} entiers ≥ 0")
        if sum(q) > t.r:
            raise HypothesisError(f"Σq_k = {sum(q)} > r = {t.r}")
        pos = SpectraService.extended_positions
        lhs = sum(alpha.lookup(i) for i in pos(t.I, sum(q), t.N))
        rhs = sum(b.lookup(j) for b, jset, qk in zip(betas, t.J, q) for j in pos(jset, qk, t.N))
        return SpectraService.make_record(t, lhs, rhs, "extended", q=q)

    # ========================================================================
    # BALAYAGES FINIS
    # ========================================================================

    @staticmethod
    def _collect(raws, N, lhs, rhs, family, sense, tol, q=None, include_tight=False) -> List[InequalityRecord]:
        slack, auto = SpectraService._slacks(lhs, rhs, sense)
        keep = slack < -tol
        if include_tight:
            keep |= ~auto & (np.abs(slack) <= tol)
        out = []
        for x in np.flatnonzero(keep):
            out.append(SpectraService.make_record(
                HornTuple.from_raw(N, raws[x]), lhs[x], rhs[x], family, sense,
                q=q[x] if q is not None else (), slack=slack[x], auto=auto[x],
            ))
        return out

    @staticmethod
    def scan_finite(alpha: SpectrumLike, betas: Sequence[SpectrumLike], N: int,
                    kind: HornSetKind = HornSetKind.T, form: str = "horn",
                    tol: float = VIOLATION_TOL, max_n: Optional[int] = None,
                    include_tight: bool = False) -> List[InequalityRecord]:
        """
        Toutes les inégalités de Horn de taille N, 0 ≤ r ≤ N

        Args:
            alpha, betas: spectres de longueur ≥ N (seuls les N premiers termes comptent)
            N: taille
            kind: famille de tuples (T par défaut)
            form: "horn" (Σ sur I) ou "horn_sym" (Σ hors de I_sym)

        Returns:
            Violations (liste vide ⇔ toutes les inégalités sont satisfaites)
        """
        m = len(betas)
        HornSetsService.check_cap(m, N, max_n)
        alpha = SpectraService.as_spectrum(alpha, N)[:N]
        betas = [SpectraService.as_spectrum(b, N)[:N] for b in betas]
        records: List[InequalityRecord] = []
        for r in range(N + 1):
            raws, I, J = _cell_arrays(HornSetKind(kind).value, m, N, r)
            if not raws:
                continue
            if form == "horn":
                lhs = _gather_sum(alpha, I)
                rhs = sum(_gather_sum(b, J[k]) for k, b in enumerate(betas))
            elif form == "horn_sym":
                lhs = _masked_sum(alpha, _complement_mask(N + 1 - I, N))
                rhs = sum(_masked_sum(b, _complement_mask(N + 1 - J[k], N)) for k, b in enumerate(betas))
            else:
                raise ValueError(f"Forme inconnue : {form}")
            records += SpectraService._collect(raws, N, lhs, rhs, form, "le", tol, include_tight=include_tight)
        return records

    @staticmethod
    def scan_reverse(alpha: SpectrumLike, betas: Sequence[SpectrumLike], N: int,
                     kind: HornSetKind = HornSetKind.T, tol: float = VIOLATION_TOL,
                     max_n: Optional[int] = None) -> List[InequalityRecord]:
        """Forme inverse Σ_{i∉I} α ≥ ΣΣ_{j∉J} β sur T_r^N, 0 ≤ r ≤ N"""
        m = len(betas)
        HornSetsService.check_cap(m, N, max_n)
        alpha = SpectraService.as_spectrum(alpha, N)[:N]
        betas = [SpectraService.as_spectrum(b, N)[:N] for b in betas]
        records: List[InequalityRecord] = []
        for r in range(N + 1):
            raws, I, J = _cell_arrays(HornSetKind(kind).value, m, N, r)
            if not raws:
                continue
            lhs = _masked_sum(alpha, _complement_mask(I, N))
            rhs = sum(_masked_sum(b, _complement_mask(J[k], N)) for k, b in enumerate(betas))
            records += SpectraService._collect(raws, N, lhs, rhs, "reverse", "ge", tol)
        return records

    # ========================================================================
    # BALAYAGES BILATÈRES
    # ========================================================================

    @staticmethod
    def q_splittings(m: int, r: int) -> List[Tuple[int, ...]]:
        """Toutes les répartitions (q_1..q_m) ≥ 0 avec Σq_k ≤ r, ordre lexicographique"""
        return [q for q in product(range(r + 1), repeat=m) if sum(q) <= r]

    @staticmethod
    def _extended_cell(raws, I, J, N, r, alpha: TwoSidedSpectrum, betas, family, tol) -> List[InequalityRecord]:
        length = max([N, alpha.support] + [b.support for b in betas])
        a_pos, a_neg = _two_sided_arrays(alpha, length)
        b_arrays = [_two_sided_arrays(b, length) for b in betas]
        cols = np.arange(r)
        records = []
        for q in SpectraService.q_splittings(len(betas), r):
            shift_I = np.where(cols >= r - sum(q), N + 1, 0)
            lhs = _lookup(a_pos, a_neg, I - shift_I).sum(axis=1)
            rhs = np.zeros(len(raws))
            for k, (b_pos, b_neg) in enumerate(b_arrays):
                shift = np.where(cols >= r - q[k], N + 1, 0)
                rhs += _lookup(b_pos, b_neg, J[k] - shift).sum(axis=1)
            if family == "extended_reverse":
                lhs, rhs = -lhs, -rhs
                sense = "ge"
            else:
                sense = "le"
            records += SpectraService._collect(raws, N, lhs, rhs, family, sense, tol, q=[q] * len(raws))
        return records

    @staticmethod
    def _full_tuple_records(alpha: TwoSidedSpectrum, betas, N: int, family: str, tol: float) -> List[InequalityRecord]:
        """Tuple plein [N] : lhs = P_α(N−q) + Neg_α(q) pour toutes les répartitions q"""
        m = len(betas)

        def prefix_tables(s: TwoSidedSpectrum) -> Tuple[np.ndarray, np.ndarray]:
            pos, neg = _two_sided_arrays(s, N)
            return np.concatenate([[0.0], np.cumsum(pos[:N])]), np.concatenate([[0.0], np.cumsum(neg[:N])])

        a_P, a_Neg = prefix_tables(alpha)
        grids = np.indices((N + 1,) * m).reshape(m, -1).T
        grids = grids[grids.sum(axis=1) <= N]
        total = grids.sum(axis=1)
        lhs = a_P[N - total] + a_Neg[total]
        rhs = np.zeros(len(grids))
        for k, b in enumerate(betas):
            b_P, b_Neg = prefix_tables(b)
            rhs += b_P[N - grids[:, k]] + b_Neg[grids[:, k]]
        sense = "le"
        if family == "extended_reverse":
            lhs, rhs, sense = -lhs, -rhs, "ge"
        full = HornTuple.full(N, m)
        slack, auto = SpectraService._slacks(lhs, rhs, sense)
        return [
            SpectraService.make_record(full, lhs[x], rhs[x], family, sense, q=tuple(grids[x]),
                                       slack=slack[x], auto=auto[x])
            for x in np.flatnonzero(slack < -tol)
        ]

    @staticmethod
    def scan_extended(alpha: TwoSidedSpectrum, betas: Sequence[TwoSidedSpectrum], N_max: int,
                      window: Optional[int] = None, one_sided: bool = False,
                      kind: HornSetKind = HornSetKind.T, tol: float = VIOLATION_TOL,
                      max_n: Optional[int] = None) -> List[InequalityRecord]:
        """
        Inégalités de Horn étendues pour (α, β⁽ᵏ⁾) et pour (ᾱ, β̄⁽ᵏ⁾)

        Args:
            alpha, betas: suites bilatères
            N_max: ordre de troncature du catalogue
            window: les tuples pleins [N] sont aussi balayés pour N_max < N ≤ window
                (défaut : somme des supports de α et des β⁽ᵏ⁾)
            one_sided: ne balayer que (α, β) (existence de A ≤ ΣB)

        Returns:
            Violations triées par (N, r, tuple, q) ; l'orientation barre est rapportée
            sous la forme ≥ (famille extended_reverse)
        """
        m = len(betas)
        catalog = HornSetsService.catalog(kind, m, N_max, max_n)
        orientations = [("extended", alpha, list(betas))]
        if not one_sided:
            orientations.append(("extended_reverse", alpha.bar(), [b.bar() for b in betas]))
        if window is None:
            window = alpha.support + sum(b.support for b in betas)

        records: List[InequalityRecord] = []
        for family, a, bs in orientations:
            for N, r in catalog.cells():
                if r == 0 or not catalog.tuples(N, r):
                    continue
                raws = [t.raw for t in catalog.tuples(N, r)]
                I, J = catalog.arrays(N, r)
                records += SpectraService._extended_cell(raws, I, J, N, r, a, bs, family, tol)
            for N in range(N_max + 1, window + 1):
                records += SpectraService._full_tuple_records(a, bs, N, family, tol)

        unique = {(rec.horn_tuple, rec.q, rec.family): rec for rec in records}
        out = sorted(unique.values(), key=lambda rec: rec.sort_key())
        logger.debug("scan_extended N_max=%d window=%d : %d violations", N_max, window, len(out))
        return out

    # ========================================================================
    # CAS POSITIF
    # ========================================================================

    @staticmethod
    def _complement_prefix_sums(values: np.ndarray, s: Tuple[int, ...], p_max: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        Sommes Σ des p plus petits indices hors de s (p = 0..p_max) et plus grand indice utilisé
        """
        comp = np.array(CombinatoricsService.complement_prefix(s, p_max), dtype=np.int64)
        padded = np.zeros(int(comp.max()) if comp.size else 0)
        padded[: min(len(values), padded.size)] = values[: padded.size]
        picked = padded[comp - 1] if comp.size else np.zeros(0)
        return np.concatenate([[0.0], np.cumsum(picked)]), np.concatenate([[0], comp])

    @staticmethod
    def scan_positive(alpha: SpectrumLike, betas: Sequence[SpectrumLike], N_max: int,
                      window: Optional[int] = None, kind: HornSetKind = HornSetKind.T,
                      tol: float = VIOLATION_TOL, max_n: Optional[int] = None) -> List[InequalityRecord]:
        """
        Cas positif : inégalités de Horn et inégalités inverses étendues

        Σ_{i∈I^c_q} α_i ≥ Σ_k Σ_{j∈J⁽ᵏ⁾ᶜ_{q_k}} β⁽ᵏ⁾_j, q = Σq_k, q_k ≥ 0 quelconques

        Args:
            alpha, betas: suites positives décroissantes (zéros au-delà)
            N_max: ordre du catalogue
            window: None → q_k ≤ longueur stockée de β⁽ᵏ⁾ ; L → seuls les
                enregistrements dont tous les indices sont ≤ L
        """
        alpha = SpectraService.as_spectrum(alpha)
        betas = [SpectraService.as_spectrum(b) for b in betas]
        if np.any(alpha < 0) or any(np.any(b < 0) for b in betas):
            raise ValueError("Le cas positif requiert des suites ≥ 0")
        m = len(betas)
        catalog = HornSetsService.catalog(kind, m, N_max, max_n)

        # Un tuple brut ne dépend pas de N : on garde sa première apparition
        first_seen: Dict[RawTuple, HornTuple] = {}
        for t in catalog:
            first_seen.setdefault(t.raw, t)

        records: List[InequalityRecord] = []
        for raw, t in first_seen.items():
            if t.r == 0:
                continue
            a = SpectraService.as_spectrum(alpha, t.N, pad=True)
            bs = [SpectraService.as_spectrum(b, t.N, pad=True) for b in betas]
            rec = SpectraService.make_record(
                t,
                float(a[np.array(t.I) - 1].sum()),
                sum(float(b[np.array(j) - 1].sum()) for b, j in zip(bs, t.J)),
                "horn",
            )
            if rec.violated:
                records.append(rec)

        for raw, t in first_seen.items():
            if window is None:
                limits = [len(b) for b in betas]
            else:
                limits = [window] * m
            q_max = sum(limits)
            lhs_sums, lhs_top = SpectraService._complement_prefix_sums(alpha, t.I, q_max)
            rhs_tables = [SpectraService._complement_prefix_sums(b, j, lim) for b, j, lim in zip(betas, t.J, limits)]
            grids = np.indices(tuple(lim + 1 for lim in limits)).reshape(m, -1).T
            total = grids.sum(axis=1)
            lhs = lhs_sums[total]
            rhs = np.zeros(len(grids))
            ok = np.ones(len(grids), dtype=bool)
            if window is not None:
                ok &= lhs_top[total] <= window
            for k, (sums, top) in enumerate(rhs_tables):
                rhs += sums[grids[:, k]]
                if window is not None:
                    ok &= top[grids[:, k]] <= window
            violated = np.flatnonzero(ok & (lhs - rhs < -tol))
            for x in violated:
                records.append(SpectraService.make_record(
                    t, lhs[x], rhs[x], "reverse_positive", "ge", q=tuple(grids[x])
                ))

        records.sort(key=lambda rec: rec.sort_key())
        logger.debug("scan_positive N_max=%d window=%s : %d violations", N_max, window, len(records))
        return records

    # ========================================================================
    # EXPORTS
    # ========================================================================

    @staticmethod
    def violations_frame(records: Sequence[InequalityRecord]) -> pd.DataFrame:
        """Table (family, N, r, tuple, q, lhs, rhs, slack)"""
        columns = ["family", "N", "r", "tuple", "q", "lhs", "rhs", "slack"]
        return pd.DataFrame([rec.to_row() for rec in records], columns=columns)

    @staticmethod
    def incidence(N: int, m: int, r_min: int = 1, kind: HornSetKind = HornSetKind.T,
                  max_n: Optional[int] = None) -> Tuple[List[HornTuple], np.ndarray, np.ndarray]:
        """
        Système linéaire des inégalités de Horn de taille N (r ≥ r_min)

        Returns:
            (tuples, A (R, N), B (m, R, N)) avec lhs = A @ α et rhs = Σ_k B[k] @ β⁽ᵏ⁾
        """
        HornSetsService.check_cap(m, N, max_n)
        tuples: List[HornTuple] = []
        rows_a, rows_b = [], [[] for _ in range(m)]
        for r in range(r_min, N + 1):
            raws, I, J = _cell_arrays(HornSetKind(kind).value, m, N, r)
            for x, raw in enumerate(raws):
                tuples.append(HornTuple.from_raw(N, raw))
                row = np.zeros(N)
                row[I[x] - 1] = 1.0
                rows_a.append(row)
                for k in range(m):
                    row = np.zeros(N)
                    row[J[k, x] - 1] = 1.0
                    rows_b[k].append(row)
        A = np.array(rows_a).reshape(len(tuples), N)
        B = np.array(rows_b).reshape(m, len(tuples), N)
        return tuples, A, B
