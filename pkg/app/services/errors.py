"""
Exceptions métier du service Horn
Toutes dérivent de ValueError pour rester compatibles avec la gestion
d'erreurs des routers (HTTPException 400)
"""

from typing import Any, Optional


class HornError(ValueError):
    """Erreur de base du domaine"""


class ResourceCapError(HornError):
    """Énumération refusée : taille au-delà du plafond configuré"""

    def __init__(self, m: int, N: int, cap: int):
        self.m = m
        self.N = N
        self.cap = cap
        super().__init__(
            f"Plafond de ressources dépassé : N={N} > {cap} pour m={m} "
            f"(utilisez max_n pour forcer)"
        )


class HypothesisError(HornError):
    """Une précondition documentée n'est pas satisfaite"""


class StuckInterpolationError(HypothesisError):
    """Marche entière bloquée : aucun pas légal et aucune contrainte saturée"""


class InternalInconsistencyError(HornError):
    """Résultat contredisant une propriété démontrée (bug probable)"""


class WitnessConvergenceError(HornError):
    """Synthèse numérique non convergée ; porte le meilleur résultat trouvé"""

    def __init__(self, message: str, best: Optional[Any] = None):
        self.best = best
        super().__init__(message)
