"""
Service Littlewood–Richardson et hives
- coefficients c^λ_{μν} par comptage de tableaux LR gauches
- oracle indépendant par développement polynomial (sympy)
- reconstruction et vérification de hives (règle LR continue)
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import plotly.graph_objects as go
import sympy
from sympy.combinatorics import Permutation

from app.config import HIVE_TOL_DATA, HIVE_TOL_EXACT
from app.services.combinatorics_service import CombinatoricsService, Partition
from app.services.errors import HypothesisError

logger = logging.getLogger(__name__)


# ============================================================================
# COMPTAGE DES TABLEAUX LR
# ============================================================================

def _is_partition_including(outer: Partition, inner: Partition) -> bool:
    """outer[i] ≥ inner[i] pour tout i"""
    if len(outer) < len(inner):
        return False
    return all(outer[i] >= inner[i] for i in range(len(inner)))


@lru_cache(maxsize=None)
def _count_lr_tableaux(lam: Partition, mu: Partition, nu: Partition) -> int:
    """
    Nombre de tableaux LR de forme λ/μ et de contenu ν

    Lignes faiblement croissantes, colonnes strictement croissantes, lettre k
    seulement dans les lignes ≥ k, mot de lecture (droite→gauche, haut→bas)
    de Yamanouchi.
    """
    rows = len(lam)
    mu = mu + (0,) * (rows - len(mu))
    letters = len(nu)

    def fill(i: int, prev: Tuple[int, ...], prev_start: int, counts: Tuple[int, ...]) -> int:
        if i == rows:
            return 1 if counts == nu else 0
        start, end = mu[i], lam[i]
        kmax = min(i + 1, letters)
        total = 0
        for row in combinations_with_replacement(range(1, kmax + 1), end - start):
            # Stricte croissance en colonne avec la ligne précédente
            if i > 0 and any(
                row[c - start] <= prev[c - prev_start]
                for c in range(max(start, prev_start), end)
            ):
                continue
            row_counts = [0] * letters
            for letter in row:
                row_counts[letter - 1] += 1
            # Contenu borné par ν et condition de treillis
            if any(counts[k] + row_counts[k] > nu[k] for k in range(letters)):
                continue
            if any(counts[k] + row_counts[k] > counts[k - 1] for k in range(1, letters)):
                continue
            new_counts = tuple(c + d for c, d in zip(counts, row_counts))
            total += fill(i + 1, row, start, new_counts)
        return total

    return fill(0, (), 0, (0,) * letters)


def _sub_partitions(outer: Partition, size: int) -> Iterator[Partition]:
    """Partitions contenues dans outer de poids donné"""

    def build(i: int, bound: int, remaining: int, acc: Tuple[int, ...]):
        if remaining == 0:
            yield acc
            return
        if i == len(outer):
            return
        for part in range(min(bound, outer[i], remaining), 0, -1):
            yield from build(i + 1, part, remaining - part, acc + (part,))

    yield from build(0, size, size, ())


# ============================================================================
# ORACLE POLYNOMIAL
# ============================================================================

@lru_cache(maxsize=None)
def _alternant(n: int, exponents: Tuple[int, ...]) -> sympy.Poly:
    """a_e = Σ_σ sgn(σ) Π x_{σ(i)}^{e_i} en n variables"""
    gens = sympy.symbols(f"x1:{n + 1}")
    terms: Dict[Tuple[int, ...], int] = {}
    for perm in permutations(range(n)):
        monomial = [0] * n
        for i, target in enumerate(perm):
            monomial[target] = exponents[i]
        terms[tuple(monomial)] = Permutation(list(perm)).signature()
    return sympy.Poly.from_dict(terms, *gens, domain="ZZ")


@lru_cache(maxsize=None)
def _schur_poly(n: int, mu: Partition) -> sympy.Poly:
    """s_μ = a_{μ+δ} / a_δ (division exacte)"""
    delta = tuple(range(n - 1, -1, -1))
    padded = mu + (0,) * (n - len(mu))
    return _alternant(n, tuple(p + d for p, d in zip(padded, delta))).exquo(_alternant(n, delta))


# ============================================================================
# HIVES
# ============================================================================

@dataclass
class Hive:
    """
    Fonction f sur la grille 0 ≤ i ≤ W, 0 ≤ j ≤ H (NaN hors domaine déterminé)
    x_ij = f(i,j−1)−f(i−1,j−1), y_ij = f(i−1,j−1)−f(i−1,j), z_ij = f(i−1,j)−f(i,j−1)
    """
    f: np.ndarray
    residual: float = 0.0
    meta: Dict[str, Any] = field(default_factory=dict)

    @property
    def W(self) -> int:
        return self.f.shape[0] - 1

    @property
    def H(self) -> int:
        return self.f.shape[1] - 1

    @property
    def x(self) -> np.ndarray:
        return self.f[1:, :-1] - self.f[:-1, :-1]

    @property
    def y(self) -> np.ndarray:
        return self.f[:-1, :-1] - self.f[:-1, 1:]

    @property
    def z(self) -> np.ndarray:
        return self.f[:-1, 1:] - self.f[1:, :-1]


class SchurHiveService:
    """
    Service pour les coefficients LR et les hives

    Fonctionnalités :
    - lr_coeff / multi_lr_coeff (production) et lr_coeff_bruteforce (oracle)
    - rhombus_slacks, hive_reconstruct, example_hive
    - verify_continuous_lr et artefacts Plotly
    """

    # ========================================================================
    # COEFFICIENTS LR
    # ========================================================================

    @staticmethod
    def lr_coeff(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
        """
        Coefficient de Littlewood–Richardson c^λ_{μν}

        Args:
            lam: partition cible λ
            mu, nu: facteurs

        Returns:
            Entier ≥ 0
        """
        norm = CombinatoricsService.normalize_partition
        lam, mu, nu = norm(lam), norm(mu), norm(nu)
        if sum(lam) != sum(mu) + sum(nu):
            return 0
        if not _is_partition_including(lam, mu) or not _is_partition_including(lam, nu):
            return 0
        if not nu:
            return 1 if lam == mu else 0
        return _count_lr_tableaux(lam, mu, nu)

    @staticmethod
    def multi_lr_coeff(target: Sequence[int], factors: Sequence[Sequence[int]]) -> int:
        """
        Coefficient de s_target dans le produit s_{μ1}···s_{μm}
        (sommation sur les partitions intermédiaires)
        """
        norm = CombinatoricsService.normalize_partition
        target = norm(target)
        factors = [norm(f) for f in factors]
        if not factors:
            return 1 if not target else 0
        if sum(target) != sum(sum(f) for f in factors):
            return 0
        if len(factors) == 1:
            return 1 if target == factors[0] else 0
        head, last = factors[:-1], factors[-1]
        size = sum(sum(f) for f in head)
        total = 0
        for kappa in _sub_partitions(target, size):
            c = SchurHiveService.lr_coeff(target, kappa, last)
            if c:
                total += c * SchurHiveService.multi_lr_coeff(kappa, head)
        return total

    @staticmethod
    def lr_coeff_bruteforce(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
        """
        Oracle indépendant : coefficient de x^{λ+δ} dans s_μ · a_{ν+δ}
        en ℓ(λ) variables (petits poids uniquement)
        """
        norm = CombinatoricsService.normalize_partition
        lam, mu, nu = norm(lam), norm(mu), norm(nu)
        if sum(lam) != sum(mu) + sum(nu):
            return 0
        n = len(lam)
        if n == 0:
            return 1
        if len(mu) > n or len(nu) > n:
            return 0
        delta = tuple(range(n - 1, -1, -1))
        nu_padded = nu + (0,) * (n - len(nu))
        product = _schur_poly(n, mu) * _alternant(n, tuple(p + d for p, d in zip(nu_padded, delta)))
        key = tuple(p + d for p, d in zip(lam, delta))
        return int(product.as_dict().get(key, 0))

    # ========================================================================
    # HIVES
    # ========================================================================

    @staticmethod
    def rhombus_slacks(h: Hive) -> List[Tuple[Tuple[str, int, int], float]]:
        """
        Écarts de concavité sur chaque arête intérieure

        R1(i,j) = f(i−1,j)+f(i,j−1)−f(i−1,j−1)−f(i,j)
        R2(i,j) = f(i,j)+f(i,j−1)−f(i−1,j)−f(i+1,j−1)
        R3(i,j) = f(i−1,j)+f(i,j)−f(i,j−1)−f(i−1,j+1)
        Les points NaN (hors domaine déterminé) sont ignorés.

        Returns:
            Liste ((famille, i, j), slack)
        """
        if h.W < 1 or h.H < 1:
            raise ValueError("La grille doit avoir W, H ≥ 1")
        f = h.f
        families = {
            # Tableaux indexés par (i−1, j−1)
            "R1": (f[:-1, 1:] + f[1:, :-1] - f[:-1, :-1] - f[1:, 1:], 1, 1),
            "R2": (f[1:-1, 1:] + f[1:-1, :-1] - f[:-2, 1:] - f[2:, :-1], 1, 1),
            "R3": (f[:-1, 1:-1] + f[1:, 1:-1] - f[1:, :-2] - f[:-1, 2:], 1, 1),
        }
        out: List[Tuple[Tuple[str, int, int], float]] = []
        for name, (values, i0, j0) in families.items():
            for (a, b), slack in np.ndenumerate(values):
                if not np.isnan(slack):
                    out.append(((name, a + i0, b + j0), float(slack)))
        return out

    @staticmethod
    def min_slack(h: Hive) -> float:
        slacks = [s for _, s in SchurHiveService.rhombus_slacks(h)]
        return min(slacks) if slacks else 0.0

    @staticmethod
    def hive_reconstruct(alpha: Sequence[float], beta: Sequence[float], z: np.ndarray,
                         tol: float = HIVE_TOL_DATA) -> Hive:
        """
        Reconstruit f depuis les bords et les z intérieurs

        Args:
            alpha: différences du bord bas, f(i,0) − f(i−1,0) = α_i (longueur W)
            beta: différences du bord gauche, f(0,j) − f(0,j−1) = β_j (longueur H)
            z: tableau (W, H), z[i−1, j−1] = z_ij
            tol: tolérance sur les points sur-déterminés

        Returns:
            Hive (NaN sur les anti-diagonales i+j > max(W, H))
        """
        alpha = np.asarray(alpha, dtype=float)
        beta = np.asarray(beta, dtype=float)
        z = np.asarray(z, dtype=float)
        W, H = len(alpha), len(beta)
        if z.shape != (W, H):
            raise ValueError(f"z doit être de forme ({W}, {H}), reçu {z.shape}")

        f = np.full((W + 1, H + 1), np.nan)
        f[:, 0] = np.concatenate([[0.0], np.cumsum(alpha)])
        f[0, :] = np.concatenate([[0.0], np.cumsum(beta)])

        # Chaque anti-diagonale d est une chaîne liée par z ; elle est fixée
        # dès qu'une extrémité touche un bord
        residual = 0.0
        for d in range(1, W + H + 1):
            lo, hi = max(0, d - H), min(W, d)
            if d <= H:
                known = f[0, d]
                for i in range(1, hi + 1):
                    known = known - z[i - 1, d - i]
                    if d - i == 0:
                        residual = max(residual, abs(known - f[d, 0]))
                    else:
                        f[i, d - i] = known
            elif d <= W:
                known = f[d, 0]
                for i in range(d, lo, -1):
                    known = known + z[i - 1, d - i]
                    f[i - 1, d - i + 1] = known

        if residual > tol:
            raise HypothesisError(f"Données de hive incohérentes (résidu {residual:.3g} > {tol:g})")
        logger.debug("hive %dx%d reconstruite, résidu %.3g", W, H, residual)
        return Hive(f=f, residual=residual)

    @staticmethod
    def example_z(i: np.ndarray, j: np.ndarray) -> np.ndarray:
        """z_ij = ½[1/(i+j+1) − 1/(i+1)]"""
        return 0.5 * (1.0 / (i + j + 1) - 1.0 / (i + 1))

    @staticmethod
    def example_hive(W: int, H: int) -> Hive:
        """
        Hive explicite de bords α̃_i = 1/(i+2), β̃_j = 1/(2(j+1))

        La reconstruction se fait sur une fenêtre (W+H)×H pour que toute la
        grille W×H soit déterminée, puis on recadre.
        """
        if W < 1 or H < 1:
            raise ValueError("W et H doivent être ≥ 1")
        width = W + H
        i = np.arange(1, width + 1, dtype=float)
        j = np.arange(1, H + 1, dtype=float)
        alpha = 1.0 / (i + 2)
        beta = 1.0 / (2 * (j + 1))
        z = SchurHiveService.example_z(i[:, None], j[None, :])
        big = SchurHiveService.hive_reconstruct(alpha, beta, z, tol=HIVE_TOL_EXACT)
        return Hive(f=big.f[: W + 1, :].copy(), residual=big.residual, meta={"example": True})

    @staticmethod
    def verify_continuous_lr(alpha: Sequence[float], beta: Sequence[float], gamma: Sequence[float],
                             h: Hive, tol: float = HIVE_TOL_DATA,
                             tail_bound: Optional[float] = None) -> Dict[str, Any]:
        """
        Vérifie qu'une hive certifie la règle LR continue pour (α, β, γ)

        Args:
            alpha, beta, gamma: suites positives décroissantes (bord bas, bord gauche, queue)
            h: hive sur une fenêtre W×H
            tol: tolérance des losanges et des bords
            tail_bound: borne optionnelle sur l'écart de queue max_i |z_{i,H} + γ_i|

        Returns:
            Rapport (violation max, écarts de bord, écart de queue, verdict)
        """
        alpha = np.asarray(alpha, dtype=float)
        beta = np.asarray(beta, dtype=float)
        gamma = np.asarray(gamma, dtype=float)
        common = min(len(alpha), len(beta))
        if np.any(alpha[:common] < beta[:common]):
            raise HypothesisError("La règle LR continue requiert α ≥ β terme à terme")

        slacks = SchurHiveService.rhombus_slacks(h)
        worst = min(slacks, key=lambda item: item[1]) if slacks else (None, 0.0)
        max_violation = max(0.0, -worst[1])
        n_violations = sum(1 for _, s in slacks if s < -tol)

        W, H = h.W, h.H
        bottom = h.f[1:, 0] - h.f[:-1, 0]
        left = h.f[0, 1:] - h.f[0, :-1]
        nb, nl = min(W, len(alpha)), min(H, len(beta))
        bottom_gap = float(np.max(np.abs(bottom[:nb] - alpha[:nb]))) if nb else 0.0
        left_gap = float(np.max(np.abs(left[:nl] - beta[:nl]))) if nl else 0.0

        nt = min(W, len(gamma))
        tail = h.z[:nt, H - 1] + gamma[:nt] if nt else np.zeros(0)
        tail = tail[~np.isnan(tail)]
        tail_gap = float(np.max(np.abs(tail))) if tail.size else 0.0

        passed = max_violation <= tol and bottom_gap <= tol and left_gap <= tol
        if tail_bound is not None:
            passed = passed and tail_gap <= tail_bound
        return {
            "passed": bool(passed),
            "max_rhombus_violation": max_violation,
            "n_rhombus_violations": n_violations,
            "worst_edge": list(worst[0]) if worst[0] else None,
            "bottom_mismatch": bottom_gap,
            "left_mismatch": left_gap,
            "tail_gap": tail_gap,
            "tail_bound": tail_bound,
            "window": [W, H],
            "tolerance": tol,
        }

    # ========================================================================
    # EXPORTS
    # ========================================================================

    @staticmethod
    def hive_to_frame(h: Hive) -> pd.DataFrame:
        """Lignes (i, j, f, x, y, z) ; x, y, z définis pour i, j ≥ 1"""
        ii, jj = np.meshgrid(np.arange(h.W + 1), np.arange(h.H + 1), indexing="ij")
        pad = lambda a: np.pad(a, ((1, 0), (1, 0)), constant_values=np.nan)  # noqa: E731
        return pd.DataFrame({
            "i": ii.ravel(),
            "j": jj.ravel(),
            "f": h.f.ravel(),
            "x": pad(h.x).ravel(),
            "y": pad(h.y).ravel(),
            "z": pad(h.z).ravel(),
        })

    @staticmethod
    def hive_figures(h: Hive) -> Dict[str, Any]:
        """Heatmaps Plotly (JSON) de f et de l'écart minimal de losange par sommet"""
        slack_map = np.full((h.W + 1, h.H + 1), np.nan)
        for (_, i, j), s in SchurHiveService.rhombus_slacks(h):
            if np.isnan(slack_map[i, j]) or s < slack_map[i, j]:
                slack_map[i, j] = s

        artifacts = {}
        fig = go.Figure(data=go.Heatmap(z=h.f.T, colorscale="Viridis"))
        fig.update_layout(title="Hive f(i, j)", xaxis_title="i", yaxis_title="j")
        artifacts["hive_heatmap"] = fig.to_json()

        fig = go.Figure(data=go.Heatmap(z=slack_map.T, colorscale="RdBu", zmid=0))
        fig.update_layout(title="Écart minimal de losange", xaxis_title="i", yaxis_title="j")
        artifacts["rhombus_slack_heatmap"] = fig.to_json()
        return artifacts
