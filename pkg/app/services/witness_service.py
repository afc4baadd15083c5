"""
Service des témoins numériques
Construction de matrices hermitiennes A = ΣB⁽ᵏ⁾ aux spectres prescrits,
compressions et détection de sous-espaces réduisants
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import block_diag
from scipy.optimize import minimize
from scipy.stats import unitary_group

from app.config import VIOLATION_TOL, WITNESS_TOL
from app.schemas.horn import HornTuple, TwoSidedSpectrum
from app.services.errors import HypothesisError, WitnessConvergenceError
from app.services.spectra_service import SpectraService, SpectrumLike

logger = logging.getLogger(__name__)

ZERO_TOL = 1e-10
COMMUTATION_TOL = 1e-6


@dataclass
class WitnessSet:
    """A = diag(α) et B⁽ᵏ⁾ hermitiennes avec ‖A − ΣB‖_F = sum_residual"""
    A: np.ndarray
    B: List[np.ndarray]
    sum_residual: float
    spectrum_errors: List[float]
    seed: int = 0
    iterations: int = 0
    converged: bool = True

    @classmethod
    def from_matrices(cls, A: np.ndarray, B: Sequence[np.ndarray], betas: Optional[Sequence[SpectrumLike]] = None,
                      seed: int = 0, iterations: int = 0, tol: float = WITNESS_TOL) -> "WitnessSet":
        """Recalcule résidu et écarts spectraux (cibles = spectres propres si betas absent)"""
        A = np.asarray(A, dtype=complex)
        B = [np.asarray(b, dtype=complex) for b in B]
        residual = float(np.linalg.norm(A - sum(B), "fro"))
        errors = []
        for k, b in enumerate(B):
            observed = np.sort(np.linalg.eigvalsh(b))[::-1]
            target = observed if betas is None else np.sort(np.asarray(betas[k], dtype=float))[::-1]
            errors.append(float(np.max(np.abs(observed - target))) if len(target) else 0.0)
        return cls(A=A, B=B, sum_residual=residual, spectrum_errors=errors, seed=seed,
                   iterations=iterations, converged=residual <= tol)

    @property
    def N(self) -> int:
        return self.A.shape[0]

    def to_dict(self, include_matrices: bool = True) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "N": self.N,
            "m": len(self.B),
            "sum_residual": self.sum_residual,
            "spectrum_errors": self.spectrum_errors,
            "seed": self.seed,
            "iterations": self.iterations,
            "converged": self.converged,
        }
        if include_matrices:
            out["A"] = {"real": self.A.real.tolist(), "imag": self.A.imag.tolist()}
            out["B"] = [{"real": b.real.tolist(), "imag": b.imag.tolist()} for b in self.B]
        return out


def _hermitian(M: np.ndarray) -> np.ndarray:
    return (M + M.conj().T) / 2


def _isospectral_projection(M: np.ndarray, target_ascending: np.ndarray) -> np.ndarray:
    """Matrice de spectre cible la plus proche : valeurs assignées dans l'ordre des valeurs courantes"""
    _, V = np.linalg.eigh(_hermitian(M))
    return _hermitian((V * target_ascending) @ V.conj().T)


class WitnessService:
    """
    Construction et analyse de témoins

    Fonctionnalités :
    - lambda0_of_matrix : spectre bilatère Λ₀
    - synthesize : projections alternées (avec découpage sur contrainte serrée)
    - compress : compressions PXP et entrelacement
    - detect_reducing : projecteur réduisant dans le cas d'égalité
    """

    @staticmethod
    def lambda0_of_matrix(H: np.ndarray, zero_tol: float = ZERO_TOL) -> TwoSidedSpectrum:
        """
        Parties positive (décroissante) et négative (croissante vers 0) du spectre
        """
        H = np.asarray(H)
        if H.size == 0:
            return TwoSidedSpectrum()
        if np.linalg.norm(H - H.conj().T) > 1e-12 * max(1.0, np.linalg.norm(H)):
            raise ValueError("Matrice non hermitienne")
        return SpectraService.split_two_sided(np.linalg.eigvalsh(_hermitian(H)), zero_tol)

    # ========================================================================
    # SYNTHÈSE
    # ========================================================================

    @staticmethod
    def synthesize(alpha: SpectrumLike, betas: Sequence[SpectrumLike], tol: float = WITNESS_TOL,
                   max_iter: int = 10000, restarts: int = 5, seed: int = 0,
                   check: bool = True) -> WitnessSet:
        """
        Témoin A = diag(α) = ΣB⁽ᵏ⁾ avec Λ(B⁽ᵏ⁾) = β⁽ᵏ⁾

        Args:
            alpha, betas: spectres cibles de taille N
            tol: seuil sur ‖A − ΣB‖_F
            max_iter: itérations par essai
            restarts: nombre d'essais (graines seed, seed+1, …)
            seed: graine
            check: vérifier Horn et l'identité de trace avant de lancer

        Returns:
            WitnessSet

        Raises:
            HypothesisError si les spectres ne sont pas admissibles,
            WitnessConvergenceError (avec le meilleur essai) en cas de non-convergence
        """
        alpha = SpectraService.as_spectrum(alpha)
        N = len(alpha)
        betas = [SpectraService.as_spectrum(b, N)[:N] for b in betas]
        if not betas:
            raise ValueError("Au moins un spectre β est requis")
        if check:
            violations = SpectraService.scan_finite(alpha, betas, N)
            if violations:
                raise HypothesisError(f"Inégalité de Horn violée : {violations[0].horn_tuple.label()}")
            gap = SpectraService.trace_gap(alpha, betas)
            if abs(gap) > VIOLATION_TOL * max(1.0, float(np.abs(alpha).sum())):
                raise HypothesisError(f"Identité de trace violée (écart {gap:.3g})")

        B, iterations = WitnessService._solve(alpha, betas, tol, max_iter, restarts, seed)
        W = WitnessSet.from_matrices(np.diag(alpha), B, betas, seed=seed,
                                     iterations=iterations, tol=tol)
        logger.info("synthesize N=%d m=%d : résidu %.3g", N, len(betas), W.sum_residual)
        return W

    @staticmethod
    def _solve(alpha: np.ndarray, betas: List[np.ndarray], tol: float, max_iter: int,
               restarts: int, seed: int) -> Tuple[List[np.ndarray], int]:
        N, m = len(alpha), len(betas)
        if N == 0:
            return [np.zeros((0, 0), dtype=complex) for _ in betas], 0
        if m == 1 or N == 1:
            return [np.diag(b).astype(complex) for b in betas], 0

        tight = WitnessService._tight_tuple(alpha, betas)
        if tight is not None:
            return WitnessService._split(alpha, betas, tight, tol, max_iter, restarts, seed)
        return WitnessService._alternating_projections(alpha, betas, tol, max_iter, restarts, seed)

    @staticmethod
    def _tight_tuple(alpha: np.ndarray, betas: List[np.ndarray]) -> Optional[HornTuple]:
        """Première contrainte serrée avec 1 ≤ r < N (ordre r puis lexicographique)"""
        N = len(alpha)
        tuples, A, B = SpectraService.incidence(N, len(betas), r_min=1)
        slack = sum(B[k] @ b for k, b in enumerate(betas)) - A @ alpha
        scale = max(1.0, float(np.abs(alpha).max()))
        tight = [tuples[x] for x in np.flatnonzero(np.abs(slack) <= 1e-10 * scale) if tuples[x].r < N]
        return min(tight, key=lambda t: t.sort_key()) if tight else None

    @staticmethod
    def _split(alpha, betas, t: HornTuple, tol, max_iter, restarts, seed) -> Tuple[List[np.ndarray], int]:
        """Somme directe du bloc serré et de son complément, replacée pour A = diag(α)"""
        N = len(alpha)
        I = np.array(t.I) - 1
        I_c = np.array([i for i in range(N) if i not in set(I)], dtype=np.int64)
        Js = [np.array(j) - 1 for j in t.J]
        J_cs = [np.array([i for i in range(N) if i not in set(j)], dtype=np.int64) for j in Js]

        block, it_block = WitnessService._solve(alpha[I], [b[j] for b, j in zip(betas, Js)], tol, max_iter, restarts, seed)
        rest, it_rest = WitnessService._solve(alpha[I_c], [b[j] for b, j in zip(betas, J_cs)], tol, max_iter, restarts, seed)
        out = []
        for Bb, Br in zip(block, rest):
            M = np.zeros((N, N), dtype=complex)
            M[np.ix_(I, I)] = Bb
            M[np.ix_(I_c, I_c)] = Br
            out.append(M)
        logger.debug("synthesize : découpage sur %s", t.label())
        return out, it_block + it_rest

    @staticmethod
    def _alternating_projections(alpha, betas, tol, max_iter, restarts, seed) -> Tuple[List[np.ndarray], int]:
        N, m = len(alpha), len(betas)
        A = np.diag(alpha).astype(complex)
        targets = [np.sort(b) for b in betas]
        best: Optional[Tuple[float, List[np.ndarray], int]] = None

        for attempt in range(restarts):
            rng = np.random.default_rng(seed + attempt)
            B = []
            for b in betas:
                U = unitary_group.rvs(N, random_state=rng)
                B.append(_hermitian((U * b) @ U.conj().T))
            residual = np.inf
            for it in range(1, max_iter + 1):
                correction = (A - sum(B)) / m
                B = [_isospectral_projection(Bk + correction, tk) for Bk, tk in zip(B, targets)]
                residual = float(np.linalg.norm(A - sum(B), "fro"))
                if residual <= tol:
                    logger.debug("projections alternées : convergence en %d itérations (essai %d)", it, attempt)
                    return B, it
            if best is None or residual < best[0]:
                best = (residual, B, attempt)
            logger.warning("projections alternées : essai %d non convergé (résidu %.3g)", attempt, residual)

        residual, B, attempt = best
        W = WitnessSet.from_matrices(A, B, betas, seed=seed + attempt, iterations=max_iter, tol=tol)
        raise WitnessConvergenceError(
            f"Pas de convergence après {restarts} essais (meilleur résidu {residual:.3g})", best=W
        )

    # ========================================================================
    # COMPRESSIONS
    # ========================================================================

    @staticmethod
    def _range_basis(P: np.ndarray, tol: float = 1e-8) -> np.ndarray:
        P = np.asarray(P, dtype=complex)
        if P.ndim != 2 or P.shape[0] != P.shape[1]:
            raise HypothesisError("Le projecteur doit être une matrice carrée")
        if np.linalg.norm(P - P.conj().T) > tol or np.linalg.norm(P @ P - P) > tol:
            raise HypothesisError("P n'est pas un projecteur orthogonal")
        w, V = np.linalg.eigh(_hermitian(P))
        return V[:, w > 0.5]

    @staticmethod
    def compress(W: WitnessSet, P: np.ndarray, tol: float = 1e-10) -> Dict[str, Any]:
        """
        Spectres bilatères de PAP et PB⁽ᵏ⁾P sur l'image de P, et contrôle
        α_n ≥ β_n ≥ β_{−n} ≥ α_{−n} pour chaque matrice et chaque n

        Returns:
            dict (rank, spectra, compressed, interlacing, max_violation)
        """
        if np.asarray(P).shape != W.A.shape:
            raise HypothesisError("Dimensions du projecteur incompatibles")
        Q = WitnessService._range_basis(P)
        names = ["A"] + [f"B{k + 1}" for k in range(len(W.B))]
        spectra, compressed = {}, {}
        worst = 0.0
        for name, X in zip(names, [W.A] + W.B):
            full = WitnessService.lambda0_of_matrix(X)
            comp = WitnessService.lambda0_of_matrix(Q.conj().T @ X @ Q)
            spectra[name] = full.model_dump()
            compressed[name] = comp.model_dump()
            for n in range(1, max(full.support, comp.support) + 1):
                worst = max(worst, comp.lookup(n) - full.lookup(n), full.lookup(-n) - comp.lookup(-n))
        return {
            "rank": int(Q.shape[1]),
            "spectra": spectra,
            "compressed": compressed,
            "max_violation": float(worst),
            "interlacing": bool(worst <= tol),
        }

    # ========================================================================
    # SOUS-ESPACES RÉDUISANTS
    # ========================================================================

    @staticmethod
    def _select_vectors(w: np.ndarray, positions: Sequence[int], zero_tol: float = ZERO_TOL) -> List[int]:
        """
        Indices (dans l'ordre croissant de eigh) des valeurs propres visées

        n > 0 : n-ième valeur propre > 0, n < 0 : n-ième valeur propre < 0.
        Au-delà de la partie correspondante, Λ₀ vaut 0 : on prend un vecteur
        du noyau non encore utilisé.
        """
        pos = [int(i) for i in np.argsort(-w, kind="stable") if w[i] > zero_tol]
        neg = [int(i) for i in np.argsort(w, kind="stable") if w[i] < -zero_tol]
        kernel = [int(i) for i in np.argsort(np.abs(w), kind="stable") if abs(w[i]) <= zero_tol]
        chosen = []
        for n in positions:
            side = pos if n > 0 else neg
            if abs(n) <= len(side):
                chosen.append(side[abs(n) - 1])
            elif kernel:
                chosen.append(kernel.pop(0))
            else:
                raise HypothesisError(f"Aucun vecteur propre disponible pour l'indice {n}")
        return chosen

    @staticmethod
    def _commutator_cost(P: np.ndarray, mats: Sequence[np.ndarray]) -> float:
        return float(sum(np.linalg.norm(P @ M - M @ P, "fro") ** 2 for M in mats))

    @staticmethod
    def _optimize_clusters(fixed: np.ndarray, clusters: List[Tuple[np.ndarray, int]],
                           mats: Sequence[np.ndarray], seed: int, starts: int = 4) -> np.ndarray:
        """
        Choix, dans chaque espace propre dégénéré, d'un sous-espace de dimension
        donnée minimisant Σ‖PB − BP‖² (L-BFGS-B, départs aléatoires)
        """
        shapes = [(V.shape[1], s) for V, s in clusters]
        sizes = [2 * d * s for d, s in shapes]

        def basis(x: np.ndarray) -> np.ndarray:
            cols = [fixed]
            offset = 0
            for (V, s), (d, _), size in zip(clusters, shapes, sizes):
                chunk = x[offset: offset + size]
                offset += size
                X = (chunk[: d * s] + 1j * chunk[d * s:]).reshape(d, s)
                Qx, _ = np.linalg.qr(X)
                cols.append(V @ Qx)
            return np.hstack(cols)

        def cost(x: np.ndarray) -> float:
            Q = basis(x)
            return WitnessService._commutator_cost(Q @ Q.conj().T, mats)

        rng = np.random.default_rng(seed)
        best_x, best_cost = None, np.inf
        for _ in range(starts):
            x0 = rng.standard_normal(sum(sizes))
            res = minimize(cost, x0, method="L-BFGS-B")
            if res.fun < best_cost:
                best_x, best_cost = res.x, float(res.fun)
        return basis(best_x)

    @staticmethod
    def detect_reducing(W: WitnessSet, t: HornTuple, q: Sequence[int], tol: float = 1e-8,
                        orientation: str = "direct", seed: int = 0) -> Dict[str, Any]:
        """
        Projecteur réduisant associé à une inégalité étendue qui est une égalité

        Args:
            W: témoin
            t, q: tuple et répartition de l'inégalité étendue
            tol: tolérance sur l'écart de l'inégalité
            orientation: "direct" (A, B) ou "bar" (−A, −B)
            seed: graine de l'optimisation dans les espaces propres dégénérés

        Returns:
            Rapport : rang, normes des commutateurs, spectres comprimés et attendus, succès
        """
        if orientation not in ("direct", "bar"):
            raise ValueError(f"Orientation inconnue : {orientation}")
        if t.m != len(W.B):
            raise ValueError(f"Tuple pour m={t.m}, témoin avec {len(W.B)} sommants")
        sign = -1.0 if orientation == "bar" else 1.0
        A = sign * W.A
        Bs = [sign * b for b in W.B]
        alpha = WitnessService.lambda0_of_matrix(A)
        betas = [WitnessService.lambda0_of_matrix(b) for b in Bs]
        rec = SpectraService.eval_extended(t, q, alpha, betas)
        if abs(rec.slack) > tol:
            raise HypothesisError(f"L'inégalité n'est pas une égalité (écart {rec.slack:.3g})")

        positions = SpectraService.extended_positions(t.I, sum(q), t.N)
        w, V = np.linalg.eigh(_hermitian(A))
        chosen = WitnessService._select_vectors(w, positions)
        scale = max(1.0, float(np.abs(w).max())) if w.size else 1.0

        # Regroupement par espaces propres : sélection partielle ⇒ optimisation
        fixed_idx: List[int] = []
        clusters: List[Tuple[np.ndarray, int]] = []
        seen = set()
        for idx in chosen:
            if idx in seen:
                continue
            members = np.flatnonzero(np.abs(w - w[idx]) <= 1e-9 * scale)
            picked = [i for i in chosen if i in set(members.tolist())]
            seen.update(picked)
            if len(picked) == len(members):
                fixed_idx += picked
            else:
                clusters.append((V[:, members], len(picked)))

        fixed = V[:, fixed_idx] if fixed_idx else np.zeros((A.shape[0], 0), dtype=complex)
        if clusters:
            Q = WitnessService._optimize_clusters(fixed, clusters, Bs, seed)
        else:
            Q = fixed
        P = Q @ Q.conj().T

        names = ["A"] + [f"B{k + 1}" for k in range(len(Bs))]
        commutators = {name: float(np.linalg.norm(P @ X - X @ P, "fro")) for name, X in zip(names, [W.A] + W.B)}
        compressed = {
            name: np.sort(np.linalg.eigvalsh(_hermitian(Q.conj().T @ X @ Q)))[::-1].tolist()
            for name, X in zip(names, [W.A] + W.B)
        }
        expected = {"A": sorted((sign * alpha.lookup(n) for n in positions), reverse=True)}
        for k, (b, jset, qk) in enumerate(zip(betas, t.J, q)):
            values = [sign * b.lookup(j) for j in SpectraService.extended_positions(jset, qk, t.N)]
            expected[f"B{k + 1}"] = sorted(values, reverse=True)

        mismatch = max(
            (float(np.max(np.abs(np.array(compressed[name]) - np.array(expected[name]))))
             for name in names if len(expected[name])),
            default=0.0,
        )
        success = (len(set(chosen)) == t.r and max(commutators.values(), default=0.0) <= COMMUTATION_TOL
                   and mismatch <= COMMUTATION_TOL)
        if not success:
            logger.warning("detect_reducing : aucun projecteur réduisant trouvé pour %s q=%s", t.label(), list(q))
        return {
            "tuple": t.label(),
            "q": [int(x) for x in q],
            "orientation": orientation,
            "slack": rec.slack,
            "rank": int(Q.shape[1]),
            "degenerate_clusters": len(clusters),
            "commutators": commutators,
            "compressed": compressed,
            "expected": expected,
            "spectrum_mismatch": mismatch,
            "success": bool(success),
            "projector": P,
        }

    @staticmethod
    def block_witness(blocks: Sequence[WitnessSet]) -> WitnessSet:
        """Somme directe de témoins"""
        m = len(blocks[0].B)
        A = block_diag(*[b.A for b in blocks])
        B = [block_diag(*[b.B[k] for b in blocks]) for k in range(m)]
        return WitnessSet.from_matrices(A, B)


# Stockage des témoins (API)
_witnesses: Dict[str, WitnessSet] = {}

def store_witness(witness_id: str, witness: WitnessSet):
    """Stocke un témoin"""
    _witnesses[witness_id] = witness

def get_witness(witness_id: str) -> WitnessSet:
    """Récupère un témoin"""
    if witness_id not in _witnesses:
        raise KeyError(f"Témoin {witness_id} introuvable")
    return _witnesses[witness_id]
