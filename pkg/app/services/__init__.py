"""Services de calcul : combinatoire, ensembles de Horn, inégalités, interpolation, témoins"""

from app.services.errors import (
    HornError,
    HypothesisError,
    InternalInconsistencyError,
    ResourceCapError,
    StuckInterpolationError,
    WitnessConvergenceError,
)

__all__ = [
    "HornError",
    "HypothesisError",
    "InternalInconsistencyError",
    "ResourceCapError",
    "StuckInterpolationError",
    "WitnessConvergenceError",
]
