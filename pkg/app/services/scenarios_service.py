"""
Service des scénarios de référence
Exemples travaillés rejouables depuis la CLI (paper-examples) et l'API
"""

import logging
from typing import Any, Callable, Dict, List, Tuple

import numpy as np
from scipy.stats import unitary_group

from app.schemas.horn import HornTuple, PartialSpectrum
from app.services.partial_service import PartialService
from app.services.schur_hive_service import SchurHiveService
from app.services.spectra_service import SpectraService
from app.services.witness_service import WitnessService, WitnessSet

logger = logging.getLogger(__name__)

TRUNCATION = 64
SCAN_N_MAX = 4


# ============================================================================
# SUITES DE RÉFÉRENCE
# ============================================================================

def harmonic(length: int = TRUNCATION, scale: float = 1.0, shift: int = 0) -> np.ndarray:
    """(1 / (scale·i − shift))_{i ≤ length}"""
    i = np.arange(1, length + 1, dtype=float)
    return 1.0 / (scale * i - shift)


def sec6_data(gamma: str = "prime") -> Tuple[np.ndarray, List[np.ndarray]]:
    """α = (1/i), β = (1/(2i)) et γ au choix : prime (1/(2i)), doubleprime (1/(2i−1)), harmonic (1/i)"""
    gammas = {
        "prime": harmonic(scale=2.0),
        "doubleprime": harmonic(scale=2.0, shift=1),
        "harmonic": harmonic(),
    }
    if gamma not in gammas:
        raise ValueError(f"γ inconnu : {gamma}")
    return harmonic(), [harmonic(scale=2.0), gammas[gamma]]


def reducing_witness(K: int = 16, seed: int = 0) -> WitnessSet:
    """
    Témoin de dimension K : bloc M = (B₀, C₀) = (diag(0, ½), diag(1, 0)) et
    complément B̃ = diag(1/(2(n+1))), C̃ = U B̃ U* avec U aléatoire
    """
    if K < 3:
        raise ValueError("K doit être ≥ 3")
    rng = np.random.default_rng(seed)
    tail = np.array([1.0 / (2 * (n + 1)) for n in range(1, K - 1)])
    U = unitary_group.rvs(K - 2, random_state=rng)
    B = np.zeros((K, K), dtype=complex)
    C = np.zeros((K, K), dtype=complex)
    B[:2, :2] = np.diag([0.0, 0.5])
    C[:2, :2] = np.diag([1.0, 0.0])
    B[2:, 2:] = np.diag(tail)
    C[2:, 2:] = (U * tail) @ U.conj().T
    return WitnessSet.from_matrices(B + C, [B, C], seed=seed)


# ============================================================================
# SCÉNARIOS
# ============================================================================

def _johnson(seed: int) -> Dict[str, Any]:
    betas = [[3, 1], [2, 0]]
    bounds = {p: PartialService.johnson_bounds(betas, p, 2) for p in (1, 2)}
    inside = PartialService.check_partial(PartialSpectrum(spec={1: 4.0}), [PartialSpectrum.full(b) for b in betas], 2)
    outside = PartialService.check_partial(PartialSpectrum(spec={1: 6.0}), [PartialSpectrum.full(b) for b in betas], 2)
    realized = PartialService.realize_partial(PartialSpectrum(spec={1: 4.0}), [PartialSpectrum.full(b) for b in betas], 2)
    ok = bounds[1] == (3.0, 5.0) and bounds[2] == (1.0, 3.0) and inside.feasible and not outside.feasible
    return {
        "violated": not ok,
        "result": {
            "bounds": {str(p): list(b) for p, b in bounds.items()},
            "alpha1_4_feasible": inside.feasible,
            "alpha1_6_feasible": outside.feasible,
            "alpha1_6_violations": [rec.to_row() for rec in outside.violations],
            "realized_alpha": realized.alpha.tolist(),
        },
    }


def _alpha1_alpha3(seed: int) -> Dict[str, Any]:
    N, n_samples = 3, 50
    betas = [np.array([2.0, 1.0, 0.0]), np.array([1.0, 0.0, -1.0])]
    full = [PartialSpectrum.full(b) for b in betas]
    rng = np.random.default_rng(seed)
    outside = []
    for _ in range(n_samples):
        B = []
        for b in betas:
            U = unitary_group.rvs(N, random_state=rng)
            B.append((U * b) @ U.conj().T)
        alpha = np.sort(np.linalg.eigvalsh(sum(B)))[::-1]
        spec = PartialSpectrum(spec={1: float(alpha[0]), 3: float(alpha[2])})
        if not PartialService.check_partial(spec, full, N).feasible:
            outside.append([float(alpha[0]), float(alpha[2])])
    envelope = PartialService.min_max(PartialSpectrum(spec={1: 2.0, 3: -1.0}), N)
    return {
        "violated": bool(outside),
        "result": {"n_samples": n_samples, "outside_region": outside, "envelope_example": envelope.to_dict()},
    }


def _buch_lowrank(seed: int) -> Dict[str, Any]:
    cases = [
        ("beta=(1,0), gamma=(0,-1), rho=0", [[1, 0], [0, -1]], 0, True),
        ("beta=gamma=(1,0), rho=0", [[1, 0], [1, 0]], 0, False),
        ("beta=gamma=(1,0), rho=2", [[1, 0], [1, 0]], 2, True),
    ]
    rows, ok = [], True
    for label, betas, rho, expected in cases:
        verdict = PartialService.lowrank_check(betas, rho, 2).feasible
        ok &= verdict == expected
        rows.append({"case": label, "feasible": verdict, "expected": expected})
    return {"violated": not ok, "result": {"cases": rows}}


def _positive_scan(gamma: str) -> Dict[str, Any]:
    alpha, betas = sec6_data(gamma)
    violations = SpectraService.scan_positive(alpha, betas, SCAN_N_MAX, window=TRUNCATION)
    return {
        "violated": bool(violations),
        "result": {
            "gamma": gamma,
            "truncation": TRUNCATION,
            "n_max": SCAN_N_MAX,
            "n_violations": len(violations),
        },
        "violations": violations,
    }


def _sec6_feasible(seed: int) -> Dict[str, Any]:
    return _positive_scan("prime")


def _sec6_gamma_doubleprime(seed: int) -> Dict[str, Any]:
    return _positive_scan("doubleprime")


def _sec6_violation(seed: int) -> Dict[str, Any]:
    out = _positive_scan("harmonic")
    empty = HornTuple.empty(0, 2).raw
    harmonic_record = next(
        (rec for rec in out["violations"] if rec.horn_tuple.raw == empty and rec.q == (8, 8)), None
    )
    if harmonic_record is not None:
        out["result"]["harmonic_record"] = harmonic_record.to_row()
    return out


def _sec6_reducing(seed: int) -> Dict[str, Any]:
    W = reducing_witness(16, seed)
    report = WitnessService.detect_reducing(W, HornTuple.full(2, 2), (1, 1), orientation="bar", seed=seed)
    report.pop("projector")
    return {"violated": not report["success"], "result": report}


def _hive_example(seed: int) -> Dict[str, Any]:
    W = H = 60
    h = SchurHiveService.example_hive(W, H)
    i = np.arange(1, W + 1, dtype=float)
    j = np.arange(1, H + 1, dtype=float)
    report = SchurHiveService.verify_continuous_lr(
        1.0 / (i + 2), 1.0 / (2 * (j + 1)), 1.0 / (2 * (i + 1)), h,
        tail_bound=1.0 / (2 * (H + 2)),
    )
    return {"violated": not report["passed"], "result": report}


class ScenariosService:
    """Registre des scénarios nommés"""

    _scenarios: Dict[str, Tuple[str, Callable[[int], Dict[str, Any]]]] = {
        "johnson": ("Bornes de Johnson et données partielles, β=(3,1), γ=(2,0)", _johnson),
        "alpha1-alpha3": ("Région (α₁, α₃) échantillonnée par matrices aléatoires, N=3", _alpha1_alpha3),
        "buch-lowrank": ("Somme positive de rang borné", _buch_lowrank),
        "sec6-feasible": ("α=(1/i), β=γ=(1/(2i)) : aucune inégalité violée", _sec6_feasible),
        "sec6-gamma-doubleprime": ("α=(1/i), β=(1/(2i)), γ=(1/(2i−1)) : aucune inégalité violée",
                                   _sec6_gamma_doubleprime),
        "sec6-violation": ("α=(1/i), β=(1/(2i)), γ=(1/i) : inégalité inverse violée", _sec6_violation),
        "sec6-reducing": ("Sous-espace réduisant du cas d'égalité α₁+α₂ = β₁+γ₁", _sec6_reducing),
        "hive-example": ("Hive explicite 60×60 et règle LR continue", _hive_example),
    }

    @classmethod
    def list(cls) -> List[Dict[str, str]]:
        return [{"name": name, "description": desc} for name, (desc, _) in cls._scenarios.items()]

    @classmethod
    def run(cls, name: str, seed: int = 0) -> Dict[str, Any]:
        """
        Exécute un scénario

        Returns:
            dict (name, description, violated, result, violations)
        """
        if name not in cls._scenarios:
            raise KeyError(f"Scénario {name} introuvable")
        description, fn = cls._scenarios[name]
        out = fn(seed)
        out.setdefault("violations", [])
        logger.info("scénario %s : %s", name, "violation" if out["violated"] else "ok")
        return {"name": name, "description": description, **out}
