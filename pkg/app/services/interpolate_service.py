"""
Service d'interpolation des spectres
Recherche du paramètre τ, découpage sur une contrainte serrée et
marche entière ; troncature des données bilatères en instances finies
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.config import VIOLATION_TOL
from app.schemas.horn import HornTuple, TwoSidedSpectrum
from app.services.errors import HypothesisError, StuckInterpolationError
from app.services.spectra_service import SpectraService, SpectrumLike

logger = logging.getLogger(__name__)


@dataclass
class InterpolationResult:
    """Spectres interpolés, arbre de décomposition et journal d'audit"""
    alpha: np.ndarray
    betas: List[np.ndarray]
    decomposition: Dict[str, Any]
    steps: List[str] = field(default_factory=list)
    tau: float = 0.0
    integer_mode: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha.tolist(),
            "betas": [b.tolist() for b in self.betas],
            "tau": self.tau,
            "integer_mode": self.integer_mode,
            "decomposition": self.decomposition,
            "n_steps": len(self.steps),
        }


class _Instance:
    """Quadruplet (α′, α″, β′, β″) de taille N ; aucun ordre entre les bornes n'est imposé"""

    def __init__(self, aP, aPP, bPs, bPPs):
        self.aP = np.asarray(aP, dtype=float)
        self.aPP = np.asarray(aPP, dtype=float)
        self.bPs = [np.asarray(b, dtype=float) for b in bPs]
        self.bPPs = [np.asarray(b, dtype=float) for b in bPPs]

    @property
    def N(self) -> int:
        return len(self.aP)

    @property
    def m(self) -> int:
        return len(self.bPs)

    def restrict(self, alpha_now, betas_now, I_c, J_cs) -> "_Instance":
        """Bloc complémentaire : côté primé = point courant, côté doublement primé = cible"""
        return _Instance(
            alpha_now[I_c], self.aPP[I_c],
            [b[j] for b, j in zip(betas_now, J_cs)],
            [b[j] for b, j in zip(self.bPPs, J_cs)],
        )


def _slacks(A: np.ndarray, B: np.ndarray, alpha: np.ndarray, betas: Sequence[np.ndarray]) -> np.ndarray:
    return sum(B[k] @ b for k, b in enumerate(betas)) - A @ alpha


def _complement_indices(s: Sequence[int], N: int) -> np.ndarray:
    members = set(s)
    return np.array([i for i in range(N) if i + 1 not in members], dtype=np.int64)


class InterpolateService:
    """
    Interpolation entre données primées (faisables) et doublement primées

    α(t) = t·α′ + (1−t)·α″ et β(t) = t·β′ + (1−t)·β″ ; chaque inégalité de
    Horn est affine en t, donc l'ensemble des t admissibles est [τ, 1]
    """

    # ========================================================================
    # VALIDATION
    # ========================================================================

    @staticmethod
    def _prepare(alphaP, alphaPP, betasP, betasPP, N: int) -> _Instance:
        if len(betasP) != len(betasPP) or not betasP:
            raise ValueError("betasP et betasPP doivent contenir le même nombre (≥ 1) de spectres")
        as_spec = SpectraService.as_spectrum
        inst = _Instance(
            as_spec(alphaP, N)[:N], as_spec(alphaPP, N)[:N],
            [as_spec(b, N)[:N] for b in betasP], [as_spec(b, N)[:N] for b in betasPP],
        )
        for arr in [inst.aP, inst.aPP] + inst.bPs + inst.bPPs:
            if not np.isfinite(arr).all():
                raise ValueError("L'interpolation requiert des valeurs finies")
        return inst

    @staticmethod
    def check_hypothesis(inst: _Instance) -> None:
        """
        Données primées : toutes les inégalités de Horn ; données doublement
        primées : toutes les inégalités inverses (trace inverse comprise)
        """
        if inst.N == 0:
            return
        primed = SpectraService.scan_finite(inst.aP, inst.bPs, inst.N)
        if primed:
            raise HypothesisError(f"Données primées non admissibles : {primed[0].horn_tuple.label()}")
        double = SpectraService.scan_reverse(inst.aPP, inst.bPPs, inst.N)
        if double:
            raise HypothesisError(f"Données doublement primées non admissibles : {double[0].horn_tuple.label()}")

    # ========================================================================
    # PARAMÈTRE τ
    # ========================================================================

    @staticmethod
    def _tau(inst: _Instance, tol: float) -> Tuple[float, List[HornTuple], np.ndarray]:
        """τ, tuples serrés triés (r, lex) et écarts au point α(τ)"""
        tuples, A, B = SpectraService.incidence(inst.N, inst.m, r_min=1)
        L1 = _slacks(A, B, inst.aP, inst.bPs)
        L0 = _slacks(A, B, inst.aPP, inst.bPPs)
        violated = L0 < -tol
        tau = 0.0
        if violated.any():
            roots = L0[violated] / (L0[violated] - L1[violated])
            tau = float(min(1.0, roots.max()))
        at_tau = tau * L1 + (1 - tau) * L0
        tight = [tuples[x] for x in np.flatnonzero(np.abs(at_tau) <= tol)]
        tight.sort(key=lambda t: t.sort_key())
        return tau, tight, at_tau

    @staticmethod
    def tau_tight(alphaP: SpectrumLike, alphaPP: SpectrumLike, betasP: Sequence[SpectrumLike],
                  betasPP: Sequence[SpectrumLike], N: int,
                  tol: float = VIOLATION_TOL) -> Tuple[float, List[HornTuple]]:
        """
        Plus petit τ tel que α(τ), β(τ) vérifie toutes les inégalités de Horn

        Returns:
            (τ, contraintes serrées en τ, r ≥ 1, triées par r puis ordre lexicographique)
        """
        inst = InterpolateService._prepare(alphaP, alphaPP, betasP, betasPP, N)
        InterpolateService.check_hypothesis(inst)
        if N == 0:
            return 0.0, []
        tau, tight, _ = InterpolateService._tau(inst, tol)
        return tau, tight

    # ========================================================================
    # INTERPOLATION
    # ========================================================================

    @staticmethod
    def interpolate(alphaP: SpectrumLike, alphaPP: SpectrumLike, betasP: Sequence[SpectrumLike],
                    betasPP: Sequence[SpectrumLike], N: int, integer_mode: bool = False,
                    tol: float = VIOLATION_TOL) -> InterpolationResult:
        """
        Spectres (α, β⁽ᵏ⁾) vérifiant Horn et l'identité de trace, avec
        α entre α′ et α″, β⁽ᵏ⁾ entre β′⁽ᵏ⁾ et β″⁽ᵏ⁾ (min ≤ x ≤ max entrée par entrée)

        Args:
            alphaP, alphaPP, betasP, betasPP: bornes (même taille N)
            N: taille
            integer_mode: marche entière (une unité par pas) au lieu du calcul de τ

        Returns:
            InterpolationResult
        """
        inst = InterpolateService._prepare(alphaP, alphaPP, betasP, betasPP, N)
        if integer_mode:
            for arr in [inst.aP, inst.aPP] + inst.bPs + inst.bPPs:
                if not np.array_equal(arr, np.round(arr)):
                    raise ValueError("Le mode entier requiert des données entières")
        InterpolateService.check_hypothesis(inst)

        steps: List[str] = []
        if integer_mode:
            alpha, betas, tree = InterpolateService._walk(inst, steps)
            tau = 1.0
        else:
            alpha, betas, tree = InterpolateService._split_real(inst, steps, tol)
            tau = tree.get("tau", 0.0)
        logger.info("interpolate N=%d m=%d mode=%s : %d étapes", N, inst.m,
                    "entier" if integer_mode else "réel", len(steps))
        return InterpolationResult(alpha=alpha, betas=betas, decomposition=tree,
                                   steps=steps, tau=tau, integer_mode=integer_mode)

    @staticmethod
    def _assemble(block_alpha, block_betas, sub_alpha, sub_betas):
        alpha = np.sort(np.concatenate([block_alpha, sub_alpha]))[::-1]
        betas = [np.sort(np.concatenate([b, s]))[::-1] for b, s in zip(block_betas, sub_betas)]
        return alpha, betas

    @staticmethod
    def _split(inst: _Instance, t: HornTuple, alpha_now, betas_now, steps, recurse):
        """Bloc serré (α∘I, β∘J) résolu tel quel, complément traité par recurse"""
        I = np.array(t.I, dtype=np.int64) - 1
        Js = [np.array(j, dtype=np.int64) - 1 for j in t.J]
        I_c = _complement_indices(t.I, inst.N)
        J_cs = [_complement_indices(j, inst.N) for j in t.J]
        steps.append(f"split N={inst.N} sur {t.label()} (bloc {t.r}, complément {inst.N - t.r})")
        sub = inst.restrict(alpha_now, betas_now, I_c, J_cs)
        sub_alpha, sub_betas, sub_tree = recurse(sub)
        alpha, betas = InterpolateService._assemble(
            alpha_now[I], [b[j] for b, j in zip(betas_now, Js)], sub_alpha, sub_betas
        )
        return alpha, betas, sub_tree

    @staticmethod
    def _split_real(inst: _Instance, steps: List[str], tol: float):
        N = inst.N
        if N == 0:
            return inst.aP, inst.bPs, {"N": 0, "tau": 0.0, "tuple": None, "block": 0, "children": []}
        tau, tight, _ = InterpolateService._tau(inst, tol)
        alpha_t = tau * inst.aP + (1 - tau) * inst.aPP
        betas_t = [tau * bp + (1 - tau) * bpp for bp, bpp in zip(inst.bPs, inst.bPPs)]
        node = {"N": N, "tau": tau, "tuple": None, "block": N, "children": []}
        steps.append(f"N={N} τ={tau:.12g} ({len(tight)} contraintes serrées)")

        if tau == 0.0 or not tight:
            return inst.aPP.copy(), [b.copy() for b in inst.bPPs], node
        chosen = tight[0]
        node["tuple"] = chosen.label()
        node["block"] = chosen.r
        if chosen.r == N:
            return alpha_t, betas_t, node

        def recurse(sub):
            return InterpolateService._split_real(sub, steps, tol)

        alpha, betas, sub_tree = InterpolateService._split(inst, chosen, alpha_t, betas_t, steps, recurse)
        node["children"].append(sub_tree)
        return alpha, betas, node

    @staticmethod
    def _walk(inst: _Instance, steps: List[str]):
        """
        Marche entière depuis les données primées vers les doublement primées
        Ordre de balayage : α (indices croissants), puis β⁽¹⁾, …, β⁽ᵐ⁾
        """
        N = inst.N
        node = {"N": N, "tuple": None, "block": N, "children": [], "steps": 0}
        if N == 0:
            return inst.aP, inst.bPs, node
        tuples, A, B = SpectraService.incidence(N, inst.m, r_min=1)
        alpha = inst.aP.copy()
        betas = [b.copy() for b in inst.bPs]

        while True:
            slack = _slacks(A, B, alpha, betas)
            tight = sorted((tuples[x] for x in np.flatnonzero(slack == 0)), key=lambda t: t.sort_key())
            if tight:
                chosen = tight[0]
                node["tuple"] = chosen.label()
                node["block"] = chosen.r
                if chosen.r == N or any(t.r == N for t in tight):
                    node["block"] = N
                    node["tuple"] = tight[-1].label()
                    return alpha, betas, node

                def recurse(sub):
                    return InterpolateService._walk(sub, steps)

                out_alpha, out_betas, sub_tree = InterpolateService._split(inst, chosen, alpha, betas, steps, recurse)
                node["children"].append(sub_tree)
                return out_alpha, out_betas, node

            moved = InterpolateService._unit_step(inst, alpha, betas, A, B, steps)
            if not moved:
                raise StuckInterpolationError(
                    f"Aucun pas admissible ni contrainte serrée (N={N}, α={alpha.tolist()})"
                )
            node["steps"] += 1

    @staticmethod
    def _unit_step(inst: _Instance, alpha, betas, A, B, steps: List[str]) -> bool:
        """
        Premier pas unitaire admissible vers la cible, dans un sens ou dans
        l'autre selon la coordonnée ; modifie alpha/betas en place
        """
        candidates: List[Tuple[str, np.ndarray, int, float]] = []
        for name, vec, target in [("α", alpha, inst.aPP)] + [
            (f"β{k + 1}", b, bpp) for k, (b, bpp) in enumerate(zip(betas, inst.bPPs))
        ]:
            for i in range(inst.N):
                if vec[i] != target[i]:
                    candidates.append((name, vec, i, 1.0 if target[i] > vec[i] else -1.0))

        for name, vec, i, delta in candidates:
            new = vec[i] + delta
            if delta > 0 and i > 0 and vec[i - 1] < new:
                continue
            if delta < 0 and i + 1 < len(vec) and vec[i + 1] > new:
                continue
            vec[i] = new
            if np.all(_slacks(A, B, alpha, betas) >= 0):
                steps.append(f"{name}[{i + 1}] {'+' if delta > 0 else '-'}= 1")
                return True
            vec[i] -= delta
        return False

    # ========================================================================
    # PROPRIÉTÉS
    # ========================================================================

    @staticmethod
    def rearrange(values: SpectrumLike) -> np.ndarray:
        """Réarrangement décroissant"""
        return np.sort(np.asarray(values, dtype=float))[::-1]

    @staticmethod
    def is_between(values: SpectrumLike, first: SpectrumLike, second: SpectrumLike,
                   tol: float = VIOLATION_TOL) -> bool:
        """min(x′, x″) ≤ x ≤ max(x′, x″) entrée par entrée, quel que soit l'ordre des bornes"""
        values = np.asarray(values, dtype=float)
        first, second = np.asarray(first, dtype=float), np.asarray(second, dtype=float)
        lower, upper = np.minimum(first, second), np.maximum(first, second)
        return bool(np.all(lower - tol <= values) and np.all(values <= upper + tol))

    # ========================================================================
    # DONNÉES BILATÈRES
    # ========================================================================

    @staticmethod
    def _truncate(s: TwoSidedSpectrum, N: int, cut: int) -> np.ndarray:
        """s_i pour i ≤ cut, puis s_{i−N−1}"""
        return np.array([s.lookup(i) if i <= cut else s.lookup(i - N - 1) for i in range(1, N + 1)])

    @staticmethod
    def truncate_pad(alpha: TwoSidedSpectrum, betas: Sequence[TwoSidedSpectrum], n: int,
                     alpha_pp: Optional[TwoSidedSpectrum] = None,
                     betas_pp: Optional[Sequence[TwoSidedSpectrum]] = None):
        """
        Instance finie de taille N = (m+1)n

        α′(n) garde n termes positifs puis la queue négative, α″(n) garde
        N−n termes positifs ; β′ suit le schéma de α″ et β″ celui de α′

        Returns:
            (α′(n), α″(n), [β′(n)], [β″(n)])
        """
        if n < 1:
            raise ValueError("L'ordre de troncature n doit être ≥ 1")
        alpha_pp = alpha if alpha_pp is None else alpha_pp
        betas_pp = list(betas) if betas_pp is None else list(betas_pp)
        if len(betas_pp) != len(betas):
            raise ValueError("betas et betas_pp doivent avoir la même longueur")
        m = len(betas)
        N = (m + 1) * n
        cut = InterpolateService._truncate
        aP = cut(alpha, N, n)
        aPP = cut(alpha_pp, N, N - n)
        bPs = [cut(b, N, N - n) for b in betas]
        bPPs = [cut(b, N, n) for b in betas_pp]
        return aP, aPP, bPs, bPPs

    @staticmethod
    def realize_two_sided(alpha: TwoSidedSpectrum, betas: Sequence[TwoSidedSpectrum], n: int,
                          alpha_pp: Optional[TwoSidedSpectrum] = None,
                          betas_pp: Optional[Sequence[TwoSidedSpectrum]] = None,
                          integer_mode: bool = False) -> InterpolationResult:
        """Troncature à l'ordre n puis interpolation (rang ≤ (m+1)n)"""
        aP, aPP, bPs, bPPs = InterpolateService.truncate_pad(alpha, betas, n, alpha_pp, betas_pp)
        return InterpolateService.interpolate(aP, aPP, bPs, bPPs, len(aP), integer_mode=integer_mode)
