"""
Schémas Pydantic du domaine : tuples de Horn, spectres, inégalités
"""

import math
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


IndexSet = Tuple[int, ...]
RawTuple = Tuple[IndexSet, ...]


def check_index_set(elements: Sequence[int], N: Optional[int] = None) -> IndexSet:
    """Valide un ensemble d'indices strictement croissant d'entiers ≥ 1"""
    elements = tuple(int(e) for e in elements)
    for a, b in zip(elements, elements[1:]):
        if b <= a:
            raise ValueError(f"Ensemble d'indices non strictement croissant : {list(elements)}")
    if elements and elements[0] < 1:
        raise ValueError(f"Indice non positif dans {list(elements)}")
    if N is not None and elements and elements[-1] > N:
        raise ValueError(f"Élément {elements[-1]} hors de [{N}]")
    return elements


# ============================================================================
# TUPLES DE HORN
# ============================================================================

class HornTuple(BaseModel):
    """
    (m+1)-uple (I, J⁽¹⁾, …, J⁽ᵐ⁾) de parties à r éléments de [N]
    """
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {"m": 2, "N": 3, "r": 2, "I": [2, 3], "J": [[1, 3], [1, 3]]}
        },
    )

    m: int = Field(..., ge=1, description="Nombre de sommants")
    N: int = Field(..., ge=0, description="Taille ambiante")
    r: int = Field(..., ge=0, description="Cardinal commun")
    I: IndexSet
    J: Tuple[IndexSet, ...]

    @model_validator(mode="after")
    def _check_shape(self):
        if len(self.J) != self.m:
            raise ValueError(f"{len(self.J)} ensembles J fournis pour m={self.m}")
        if not 0 <= self.r <= self.N:
            raise ValueError(f"r={self.r} hors de [0, {self.N}]")
        for s in (self.I,) + tuple(self.J):
            check_index_set(s, self.N)
            if len(s) != self.r:
                raise ValueError(f"Cardinal {len(s)} différent de r={self.r}")
        return self

    @classmethod
    def from_raw(cls, N: int, raw: RawTuple) -> "HornTuple":
        """Construction sans validation depuis la forme interne (I, J1, ..., Jm)"""
        return cls.model_construct(m=len(raw) - 1, N=N, r=len(raw[0]), I=raw[0], J=tuple(raw[1:]))

    @classmethod
    def full(cls, N: int, m: int) -> "HornTuple":
        full = tuple(range(1, N + 1))
        return cls.from_raw(N, (full,) * (m + 1))

    @classmethod
    def empty(cls, N: int, m: int) -> "HornTuple":
        return cls.from_raw(N, ((),) * (m + 1))

    @property
    def raw(self) -> RawTuple:
        return (tuple(self.I),) + tuple(tuple(j) for j in self.J)

    def sort_key(self):
        return (self.N, self.r, self.raw)

    def label(self) -> str:
        """Forme compacte ({2},{1},{2}) utilisée dans les tables CSV"""
        return "(" + ",".join("{" + ",".join(map(str, s)) + "}" for s in self.raw) + ")"


# ============================================================================
# SPECTRES
# ============================================================================

class TwoSidedSpectrum(BaseModel):
    """
    Modèle à support fini d'une suite c↓0↑
    - pos : partie positive décroissante (pos[0] = α₁)
    - neg : partie négative, neg[0] = α₋₁ ≤ neg[1] = α₋₂ ≤ … ≤ 0
    Au-delà des longueurs stockées la suite vaut 0
    """
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={"example": {"pos": [1, 0.5], "neg": [-2, -1]}},
    )

    pos: Tuple[float, ...] = ()
    neg: Tuple[float, ...] = ()

    @field_validator("pos")
    @classmethod
    def _check_pos(cls, v):
        v = tuple(float(x) for x in v)
        if any(math.isnan(x) or x < 0 for x in v):
            raise ValueError("La partie positive doit être ≥ 0")
        if any(b > a for a, b in zip(v, v[1:])):
            raise ValueError("La partie positive doit être décroissante")
        return v

    @field_validator("neg")
    @classmethod
    def _check_neg(cls, v):
        v = tuple(float(x) for x in v)
        if any(math.isnan(x) or x > 0 for x in v):
            raise ValueError("La partie négative doit être ≤ 0")
        if any(b < a for a, b in zip(v, v[1:])):
            raise ValueError("La partie négative doit croître vers 0")
        return v

    def lookup(self, n: int) -> float:
        """Valeur α_n (n ≠ 0), nulle au-delà du support stocké"""
        if n > 0:
            return self.pos[n - 1] if n <= len(self.pos) else 0.0
        if n < 0:
            return self.neg[-n - 1] if -n <= len(self.neg) else 0.0
        raise ValueError("L'indice 0 n'existe pas dans une suite bilatère")

    def bar(self) -> "TwoSidedSpectrum":
        """Suite barre : (ᾱ)_k = −α_{−k}"""
        return TwoSidedSpectrum(pos=tuple(-x for x in self.neg), neg=tuple(-x for x in self.pos))

    @property
    def support(self) -> int:
        return max(len(self.pos), len(self.neg))


class PartialSpectrum(BaseModel):
    """
    Spectre partiellement spécifié : indice → valeur
    Indices ≥ 1 en mode fini, indices non nuls en mode bilatère
    """
    model_config = ConfigDict(
        json_schema_extra={"example": {"spec": {"1": 4.0, "3": 1.0}, "two_sided": False}}
    )

    spec: Dict[int, float] = Field(default_factory=dict)
    two_sided: bool = False

    @model_validator(mode="after")
    def _check_monotone(self):
        if 0 in self.spec:
            raise ValueError("L'indice 0 n'est pas autorisé")
        if not self.two_sided and any(k < 0 for k in self.spec):
            raise ValueError("Indice négatif en mode fini")
        positives = sorted(k for k in self.spec if k > 0)
        negatives = sorted((k for k in self.spec if k < 0), reverse=True)
        for side in (positives, negatives):
            values = [self.spec[k] for k in side]
            if any(b > a for a, b in zip(values, values[1:])) and side is positives:
                raise ValueError("Valeurs spécifiées non décroissantes")
            if any(b < a for a, b in zip(values, values[1:])) and side is negatives:
                raise ValueError("Valeurs négatives spécifiées non croissantes vers 0")
        if self.two_sided:
            if any(self.spec[k] < 0 for k in positives) or any(self.spec[k] > 0 for k in negatives):
                raise ValueError("Signe incompatible avec le côté de l'indice")
        return self

    @classmethod
    def full(cls, values: Sequence[float]) -> "PartialSpectrum":
        return cls(spec={i + 1: float(v) for i, v in enumerate(values)})


# ============================================================================
# INÉGALITÉS
# ============================================================================

class InequalityRecord(BaseModel):
    """
    Une inégalité évaluée
    sense = "le" : lhs ≤ rhs (slack = rhs − lhs)
    sense = "ge" : lhs ≥ rhs (slack = lhs − rhs)
    """
    model_config = ConfigDict(frozen=True)

    horn_tuple: HornTuple
    q: Tuple[int, ...] = ()
    q_total: int = 0
    lhs: float
    rhs: float
    family: Literal["horn", "horn_sym", "reverse", "extended", "extended_reverse", "reverse_positive"]
    sense: Literal["le", "ge"] = "le"
    slack: float
    auto_satisfied: bool = False
    tight: bool = False

    @property
    def violated(self) -> bool:
        from app.config import VIOLATION_TOL
        return self.slack < -VIOLATION_TOL

    def sort_key(self):
        return (self.horn_tuple.N, self.horn_tuple.r, self.horn_tuple.raw, self.q, self.family)

    def to_row(self) -> Dict[str, object]:
        """Ligne de la table CSV des violations"""
        return {
            "family": self.family,
            "N": self.horn_tuple.N,
            "r": self.horn_tuple.r,
            "tuple": self.horn_tuple.label(),
            "q": ",".join(map(str, self.q)),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
        }


# ============================================================================
# CONFIGURATION D'UNE EXÉCUTION
# ============================================================================

class RunConfig(BaseModel):
    """Paramètres d'une exécution CLI, embarqués dans chaque rapport"""

    subcommand: str
    instance_path: Optional[str] = None
    n_max: Optional[int] = Field(None, gt=0)
    tol: float = Field(1e-9, gt=0)
    seed: int = 0
    output_format: Literal["json", "csv", "text"] = "json"
    max_n: Optional[int] = Field(None, gt=0, description="Plafond de ressources explicite")
    threads: int = Field(1, gt=0)
