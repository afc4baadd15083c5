"""
Service des spectres partiellement spécifiés
Enveloppes min/max, faisabilité, réalisation, bornes de Johnson,
cas de rang faible et extension des données bilatères
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.schemas.horn import InequalityRecord, PartialSpectrum, TwoSidedSpectrum
from app.services.errors import HypothesisError
from app.services.interpolate_service import InterpolateService, InterpolationResult
from app.services.spectra_service import SpectraService, SpectrumLike

logger = logging.getLogger(__name__)

MAX_DOUBLINGS = 60

EnvelopeSide = Union[np.ndarray, TwoSidedSpectrum]


@dataclass
class Envelope:
    """α^min ≤ β ≤ α^max ⇔ β prolonge α"""
    min: EnvelopeSide
    max: EnvelopeSide

    def contains(self, values: SpectrumLike) -> bool:
        values = np.asarray(values, dtype=float)
        return bool(np.all(self.min <= values) and np.all(values <= self.max))

    def to_dict(self) -> Dict[str, Any]:
        def encode(side):
            if isinstance(side, TwoSidedSpectrum):
                return {"pos": [_json_float(x) for x in side.pos], "neg": [_json_float(x) for x in side.neg]}
            return [_json_float(x) for x in side]
        return {"min": encode(self.min), "max": encode(self.max)}


@dataclass
class PartialCheck:
    feasible: bool
    violations: List[InequalityRecord]
    envelopes: List[Envelope] = field(default_factory=list)


@dataclass
class PartialRealization:
    alpha: np.ndarray
    betas: List[np.ndarray]
    C: float
    interpolation: InterpolationResult
    witness: Optional[Any] = None


@dataclass
class TwoSidedExtension:
    """Suites complétées : (α′, β′) côté Horn, (α″, β″) côté inverse"""
    alphaP: TwoSidedSpectrum
    betasP: List[TwoSidedSpectrum]
    alphaPP: TwoSidedSpectrum
    betasPP: List[TwoSidedSpectrum]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alphaP": self.alphaP.model_dump(),
            "betasP": [b.model_dump() for b in self.betasP],
            "alphaPP": self.alphaPP.model_dump(),
            "betasPP": [b.model_dump() for b in self.betasPP],
        }


def _json_float(x: float) -> Union[float, str]:
    """±∞ encodés en chaînes pour le JSON"""
    if np.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def _side_envelope(spec: Dict[int, float], length: int) -> Tuple[List[float], List[float]]:
    """
    Enveloppes le long d'un côté (indices 1..length, valeurs décroissantes en
    valeur algébrique pour le côté positif)
    lower_i = valeur au plus petit indice spécifié ≥ i, sinon −∞
    upper_i = valeur au plus grand indice spécifié ≤ i, sinon +∞
    """
    keys = sorted(spec)
    lower, upper = [], []
    for i in range(1, length + 1):
        above = [k for k in keys if k >= i]
        below = [k for k in keys if k <= i]
        lower.append(spec[above[0]] if above else -np.inf)
        upper.append(spec[below[-1]] if below else np.inf)
    return lower, upper


class PartialService:
    """
    Faisabilité avec valeurs propres partiellement spécifiées

    Mode fini : indices 1..N, les indices non spécifiés sont libres.
    Mode bilatère : le support stocké s'arrête au plus grand |indice|
    spécifié de chaque côté ; au-delà la suite vaut 0 (queue spécifiée)
    """

    # ========================================================================
    # ENVELOPPES
    # ========================================================================

    @staticmethod
    def min_max(p: PartialSpectrum, N: Optional[int] = None) -> Envelope:
        """
        Enveloppes α^min et α^max

        Args:
            p: spectre partiel
            N: taille (mode fini) ; ignoré en mode bilatère

        Returns:
            Envelope (tableaux numpy en mode fini, TwoSidedSpectrum en mode bilatère)
        """
        if not p.two_sided:
            if N is None:
                raise ValueError("N est requis en mode fini")
            if any(k > N for k in p.spec):
                raise ValueError(f"Indice spécifié hors de [{N}]")
            lower, upper = _side_envelope(p.spec, N)
            return Envelope(min=np.array(lower, dtype=float), max=np.array(upper, dtype=float))

        positives = {k: v for k, v in p.spec.items() if k > 0}
        negatives = {-k: v for k, v in p.spec.items() if k < 0}
        L_pos = max(positives, default=0)
        L_neg = max(negatives, default=0)
        # Queue nulle : l'indice L+1 est spécifié à 0
        pos_lower, pos_upper = _side_envelope({**positives, L_pos + 1: 0.0}, L_pos)
        # Côté négatif : α_{−i} croît vers 0, les rôles de min et max s'échangent
        neg_max, neg_min = _side_envelope({**negatives, L_neg + 1: 0.0}, L_neg)
        neg_min = [-np.inf if np.isinf(v) else v for v in neg_min]
        lower = TwoSidedSpectrum(pos=tuple(pos_lower), neg=tuple(neg_min))
        upper = TwoSidedSpectrum(pos=tuple(pos_upper), neg=tuple(neg_max))
        return Envelope(min=lower, max=upper)

    # ========================================================================
    # FAISABILITÉ
    # ========================================================================

    @staticmethod
    def check_envelopes(alpha_min: SpectrumLike, alpha_max: SpectrumLike,
                        betas_min: Sequence[SpectrumLike], betas_max: Sequence[SpectrumLike],
                        N: int) -> List[InequalityRecord]:
        """
        Horn avec (α^min, β^max) et forme inverse avec (α^max, β^min) ;
        les enregistrements contenant ±∞ du bon côté sont satisfaits d'office
        """
        horn = SpectraService.scan_finite(alpha_min, betas_max, N)
        reverse = SpectraService.scan_reverse(alpha_max, betas_min, N)
        return horn + reverse

    @staticmethod
    def _envelopes(alpha: PartialSpectrum, betas: Sequence[PartialSpectrum], N: int) -> List[Envelope]:
        if alpha.two_sided or any(b.two_sided for b in betas):
            raise ValueError("check_partial travaille en mode fini")
        return [PartialService.min_max(p, N) for p in [alpha, *betas]]

    @staticmethod
    def check_partial(alpha: PartialSpectrum, betas: Sequence[PartialSpectrum], N: int) -> PartialCheck:
        """
        Existe-t-il A = ΣB⁽ᵏ⁾ dont les spectres prolongent les données partielles ?

        Returns:
            PartialCheck (feasible, violations, enveloppes)
        """
        envs = PartialService._envelopes(alpha, betas, N)
        violations = PartialService.check_envelopes(
            envs[0].min, envs[0].max, [e.min for e in envs[1:]], [e.max for e in envs[1:]], N
        )
        return PartialCheck(feasible=not violations, violations=violations, envelopes=envs)

    @staticmethod
    def johnson_bounds(betas: Sequence[SpectrumLike], p: int, N: int) -> Tuple[float, float]:
        """
        Intervalle de α_p pour des β⁽ᵏ⁾ entièrement spécifiés

        upper = min Σβ⁽ᵏ⁾_{j_k} sous Σ(j_k − 1) = p − 1
        lower = max Σβ⁽ᵏ⁾_{j_k} sous Σ(N − j_k) = N − p
        """
        if not 1 <= p <= N:
            raise ValueError(f"p={p} hors de [1, {N}]")
        betas = [SpectraService.as_spectrum(b, N)[:N] for b in betas]
        upper, lower = np.inf, -np.inf
        for js in product(range(1, N + 1), repeat=len(betas)):
            value = float(sum(b[j - 1] for b, j in zip(betas, js)))
            if sum(j - 1 for j in js) == p - 1:
                upper = min(upper, value)
            if sum(N - j for j in js) == N - p:
                lower = max(lower, value)
        return lower, upper

    @staticmethod
    def lowrank_check(betas: Sequence[SpectrumLike], rho: int, N: int) -> PartialCheck:
        """
        A ≥ 0 de rang ≤ ρ : α^min = 0 et α^max = (+∞ × ρ, 0 × (N − ρ))
        """
        if not 0 <= rho <= N:
            raise ValueError(f"ρ={rho} hors de [0, {N}]")
        betas = [SpectraService.as_spectrum(b, N)[:N] for b in betas]
        alpha_min = np.zeros(N)
        alpha_max = np.concatenate([np.full(rho, np.inf), np.zeros(N - rho)])
        violations = PartialService.check_envelopes(alpha_min, alpha_max, betas, betas, N)
        return PartialCheck(feasible=not violations, violations=violations,
                            envelopes=[Envelope(min=alpha_min, max=alpha_max)])

    # ========================================================================
    # RÉALISATION
    # ========================================================================

    @staticmethod
    def realize_partial(alpha: PartialSpectrum, betas: Sequence[PartialSpectrum], N: int,
                        integer_mode: bool = False, with_witness: bool = False,
                        seed: int = 0) -> PartialRealization:
        """
        Spectres complets prolongeant les données partielles

        Les ±∞ des enveloppes sont remplacés par ±C, C doublé depuis
        C₀ = 1 + Σ|valeurs spécifiées| jusqu'à ce que l'hypothèse
        d'interpolation soit satisfaite
        """
        check = PartialService.check_partial(alpha, betas, N)
        if not check.feasible:
            raise HypothesisError(f"Données partielles infaisables : {check.violations[0].horn_tuple.label()}")
        env_a, env_bs = check.envelopes[0], check.envelopes[1:]
        C = 1.0 + sum(abs(v) for p in [alpha, *betas] for v in p.spec.values())
        if integer_mode:
            C = float(np.ceil(C))

        for _ in range(MAX_DOUBLINGS):
            aP = np.where(np.isinf(env_a.min), -C, env_a.min)
            aPP = np.where(np.isinf(env_a.max), C, env_a.max)
            bPs = [np.where(np.isinf(e.max), C, e.max) for e in env_bs]
            bPPs = [np.where(np.isinf(e.min), -C, e.min) for e in env_bs]
            try:
                result = InterpolateService.interpolate(aP, aPP, bPs, bPPs, N, integer_mode=integer_mode)
                break
            except HypothesisError:
                C *= 2.0
        else:
            raise HypothesisError(f"Aucune constante C ≤ {C:g} ne rend l'interpolation admissible")

        logger.info("realize_partial N=%d : C=%g", N, C)
        witness = None
        if with_witness:
            from app.services.witness_service import WitnessService
            witness = WitnessService.synthesize(result.alpha, result.betas, seed=seed)
        return PartialRealization(alpha=result.alpha, betas=result.betas, C=C,
                                  interpolation=result, witness=witness)

    # ========================================================================
    # DONNÉES BILATÈRES
    # ========================================================================

    @staticmethod
    def _fill(role: TwoSidedSpectrum, others: Sequence[TwoSidedSpectrum]) -> TwoSidedSpectrum:
        """
        Remplace les −∞ du côté négatif par τ = min(Σ others(−1), valeur voisine)
        """
        neg = list(role.neg)
        missing = [i for i, v in enumerate(neg) if v == -np.inf]
        if not missing:
            return role
        bound = sum(o.lookup(-1) for o in others)
        if not np.isfinite(bound):
            raise HypothesisError("Borne de remplissage infinie")
        neighbour = role.lookup(-(max(missing) + 2))
        tau = min(bound, neighbour)
        for i in missing:
            neg[i] = tau
        return TwoSidedSpectrum(pos=role.pos, neg=tuple(neg))

    @staticmethod
    def _fill_tuple(a_min: TwoSidedSpectrum, b_maxs: List[TwoSidedSpectrum]) -> Tuple[TwoSidedSpectrum, List[TwoSidedSpectrum]]:
        """α d'abord, puis chaque β⁽ᵏ⁾ via l'échange (β̄⁽ᵏ⁾ ; ᾱ′, β⁽ˡ⁾, l ≠ k)"""
        alpha = PartialService._fill(a_min, b_maxs)
        betas = list(b_maxs)
        for k in range(len(betas)):
            others = [alpha.bar()] + [b for l, b in enumerate(betas) if l != k]
            betas[k] = PartialService._fill(betas[k].bar(), others).bar()
        return alpha, betas

    @staticmethod
    def extend_two_sided(alpha: PartialSpectrum, betas: Sequence[PartialSpectrum], N_max: int = 3,
                         window: Optional[int] = None) -> TwoSidedExtension:
        """
        Complète les enveloppes bilatères en suites finies admissibles

        Args:
            alpha, betas: spectres partiels bilatères
            N_max: ordre de troncature du catalogue pour la vérification

        Returns:
            TwoSidedExtension vérifiée par scan_extended (unilatère) des deux côtés
        """
        if not alpha.two_sided or not all(b.two_sided for b in betas):
            raise ValueError("extend_two_sided travaille en mode bilatère")
        env_a = PartialService.min_max(alpha)
        env_bs = [PartialService.min_max(b) for b in betas]

        alphaP, betasP = PartialService._fill_tuple(env_a.min, [e.max for e in env_bs])
        bar_a, bar_bs = PartialService._fill_tuple(env_a.max.bar(), [e.min.bar() for e in env_bs])
        alphaPP, betasPP = bar_a.bar(), [b.bar() for b in bar_bs]

        for label, a, bs in (("primé", alphaP, betasP), ("doublement primé", bar_a, bar_bs)):
            violations = SpectraService.scan_extended(a, bs, N_max, window=window, one_sided=True)
            if violations:
                rec = violations[0]
                raise HypothesisError(
                    f"Extension {label} non admissible : {rec.horn_tuple.label()} q={list(rec.q)} "
                    f"({rec.lhs:.6g} > {rec.rhs:.6g})"
                )
        logger.info("extend_two_sided : supports %d / %d", alphaP.support, alphaPP.support)
        return TwoSidedExtension(alphaP=alphaP, betasP=betasP, alphaPP=alphaPP, betasPP=betasPP)

    @staticmethod
    def realize_two_sided(alpha: PartialSpectrum, betas: Sequence[PartialSpectrum], n: int,
                          N_max: int = 3) -> InterpolationResult:
        """extend_two_sided puis interpolation de la troncature d'ordre n"""
        ext = PartialService.extend_two_sided(alpha, betas, N_max=N_max)
        return InterpolateService.realize_two_sided(ext.alphaP, ext.betasP, n,
                                                    alpha_pp=ext.alphaPP, betas_pp=ext.betasPP)
