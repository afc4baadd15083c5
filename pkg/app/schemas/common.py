"""
Schémas Pydantic pour la validation des requêtes
Structure standardisée pour toutes les requêtes et réponses
"""

import math
from typing import Any, Dict, List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.schemas.horn import HornTuple, PartialSpectrum, TwoSidedSpectrum


# Valeur spectrale : nombre ou "inf" / "-inf" pour les enveloppes
SpectralValue = Union[float, str]


def to_jsonable(value: Any) -> Any:
    """Conversion récursive vers du JSON strict (±∞ en chaînes, numpy en natif)"""
    if isinstance(value, BaseModel):
        return to_jsonable(value.model_dump())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return None
        return value
    return value


# ============================================================================
# SCHÉMAS DE BASE (ENVELOPPE STANDARD)
# ============================================================================

class MetaData(BaseModel):
    """
    Métadonnées présentes dans toutes les réponses
    Permet le traçage et le versionnement
    """
    instance_id: Optional[str] = Field(None, description="Identifiant de l'objet stocké (témoin, scénario)")
    schema_version: str = Field(default="1.0", description="Version du schéma de données")

    model_config = ConfigDict(
        json_schema_extra={"example": {"instance_id": "witness_0_2", "schema_version": "1.0"}}
    )


class StandardResponse(BaseModel):
    """
    Structure standard pour toutes les réponses
    - meta : métadonnées
    - result : résultat principal
    - report : rapport (violations, statistiques)
    - artifacts : artefacts (graphiques Plotly)
    """
    meta: MetaData
    result: Optional[Any] = Field(None, description="Résultat principal")
    report: Optional[Dict[str, Any]] = Field(None, description="Rapport/statistiques")
    artifacts: Optional[Dict[str, Any]] = Field(None, description="Artefacts (graphiques, etc.)")


# ============================================================================
# COMBINATOIRE ET TUPLES
# ============================================================================

class IndexSetRequest(BaseModel):
    """Ensemble d'indices et taille ambiante"""
    I: List[int] = Field(..., description="Ensemble strictement croissant")
    N: Optional[int] = Field(None, ge=0)
    other: Optional[List[int]] = Field(None, description="Second ensemble (composition)")
    p: Optional[int] = Field(None, ge=0, description="Longueur du préfixe du complément")

    model_config = ConfigDict(json_schema_extra={"example": {"I": [2, 4], "N": 5}})


class TupleOperationRequest(BaseModel):
    """Opération structurelle sur un tuple de Horn"""
    horn_tuple: HornTuple
    other: Optional[HornTuple] = None
    q: Optional[List[int]] = None
    M: int = Field(0, ge=0)


class TriplesRequest(BaseModel):
    """Énumération ou appartenance"""
    kind: Literal["T", "Tbar", "Tdot"] = "T"
    m: int = Field(2, ge=1)
    N: int = Field(..., ge=0)
    r: Optional[int] = Field(None, ge=0, description="Cardinal ; absent = toutes les cellules (cardinalités)")
    max_n: Optional[int] = Field(None, gt=0)

    model_config = ConfigDict(json_schema_extra={"example": {"kind": "T", "m": 2, "N": 2, "r": 1}})


class MembershipRequest(BaseModel):
    kind: Literal["T", "Tbar", "Tdot"] = "T"
    horn_tuple: HornTuple
    max_n: Optional[int] = Field(None, gt=0)


# ============================================================================
# INÉGALITÉS
# ============================================================================

class FiniteCheckRequest(BaseModel):
    """
    Balayage d'une famille finie
    mode : finite (Horn), sym (forme complémentaire), reverse (forme inverse),
    positive (cas positif, suites longues)
    """
    alpha: List[SpectralValue]
    betas: List[List[SpectralValue]]
    N: Optional[int] = Field(None, ge=0)
    mode: Literal["finite", "sym", "reverse", "positive"] = "finite"
    n_max: int = Field(3, ge=0)
    window: Optional[int] = Field(None, ge=1)

    model_config = ConfigDict(
        json_schema_extra={"example": {"alpha": [2, 0], "betas": [[1, 0], [1, 0]], "N": 2}}
    )


class ExtendedCheckRequest(BaseModel):
    """Inégalités étendues pour des suites bilatères"""
    alpha: TwoSidedSpectrum
    betas: List[TwoSidedSpectrum]
    n_max: int = Field(3, ge=0)
    window: Optional[int] = Field(None, ge=1)
    one_sided: bool = False


class EvalRequest(BaseModel):
    """Évaluation d'une seule inégalité"""
    horn_tuple: HornTuple
    family: Literal["horn", "horn_sym", "reverse", "extended"] = "horn"
    alpha: Optional[List[SpectralValue]] = None
    betas: Optional[List[List[SpectralValue]]] = None
    alpha_two_sided: Optional[TwoSidedSpectrum] = None
    betas_two_sided: Optional[List[TwoSidedSpectrum]] = None
    q: Optional[List[int]] = None


# ============================================================================
# INTERPOLATION
# ============================================================================

class InterpolateRequest(BaseModel):
    """Bornes (α′, α″, β′, β″) d'une interpolation finie"""
    alphaP: List[float]
    alphaPP: List[float]
    betasP: List[List[float]]
    betasPP: List[List[float]]
    N: Optional[int] = Field(None, ge=0)
    integer_mode: bool = False

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "alphaP": [1, 1], "alphaPP": [3, 1],
                "betasP": [[1, 0], [1, 0]], "betasPP": [[1, 0], [1, 0]],
            }
        }
    )


class TwoSidedInterpolateRequest(BaseModel):
    """Troncature d'ordre n de données bilatères puis interpolation"""
    alpha: TwoSidedSpectrum
    betas: List[TwoSidedSpectrum]
    n: int = Field(..., ge=1)
    alphaPP: Optional[TwoSidedSpectrum] = None
    betasPP: Optional[List[TwoSidedSpectrum]] = None
    integer_mode: bool = False


# ============================================================================
# DONNÉES PARTIELLES
# ============================================================================

class PartialRequest(BaseModel):
    alpha: PartialSpectrum
    betas: List[PartialSpectrum]
    N: int = Field(..., ge=0)
    integer_mode: bool = False
    with_witness: bool = False
    seed: int = 0

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "alpha": {"spec": {"1": 4.0}},
                "betas": [{"spec": {"1": 3, "2": 1}}, {"spec": {"1": 2, "2": 0}}],
                "N": 2,
            }
        }
    )


class EnvelopeRequest(BaseModel):
    partial: PartialSpectrum
    N: Optional[int] = Field(None, ge=0)


class JohnsonRequest(BaseModel):
    betas: List[List[float]]
    p: int = Field(..., ge=1)
    N: int = Field(..., ge=1)


class LowrankRequest(BaseModel):
    betas: List[List[float]]
    rho: int = Field(..., ge=0)
    N: int = Field(..., ge=0)


class TwoSidedPartialRequest(BaseModel):
    alpha: PartialSpectrum
    betas: List[PartialSpectrum]
    n_max: int = Field(3, ge=0)
    n: Optional[int] = Field(None, ge=1, description="Ordre de troncature pour la réalisation")


# ============================================================================
# TÉMOINS
# ============================================================================

class WitnessSynthRequest(BaseModel):
    alpha: List[float]
    betas: List[List[float]]
    tol: float = Field(1e-8, gt=0)
    max_iter: int = Field(10000, gt=0)
    restarts: int = Field(5, gt=0)
    seed: int = 0

    model_config = ConfigDict(
        json_schema_extra={"example": {"alpha": [1, 1], "betas": [[1, 0], [1, 0]], "seed": 0}}
    )


class Lambda0Request(BaseModel):
    real: List[List[float]]
    imag: Optional[List[List[float]]] = None


class WitnessCompressRequest(BaseModel):
    witness_id: str
    projector_real: List[List[float]]
    projector_imag: Optional[List[List[float]]] = None


class WitnessReduceRequest(BaseModel):
    witness_id: str
    horn_tuple: HornTuple
    q: List[int]
    orientation: Literal["direct", "bar"] = "direct"
    tol: float = Field(1e-8, gt=0)
    seed: int = 0


# ============================================================================
# HIVES ET COEFFICIENTS LR
# ============================================================================

class HiveRequest(BaseModel):
    W: int = Field(60, ge=1, le=200)
    H: int = Field(60, ge=1, le=200)


class HiveReconstructRequest(BaseModel):
    alpha: List[float]
    beta: List[float]
    z: List[List[float]]
    gamma: Optional[List[float]] = None


class LrRequest(BaseModel):
    lam: List[int] = Field(..., description="Partition cible λ")
    mu: List[int] = Field(default_factory=list)
    nu: List[int] = Field(default_factory=list)
    factors: Optional[List[List[int]]] = Field(None, description="Produit itéré (remplace mu, nu)")

    model_config = ConfigDict(json_schema_extra={"example": {"lam": [2, 1], "mu": [1], "nu": [1, 1]}})
