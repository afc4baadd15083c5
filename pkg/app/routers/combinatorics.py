"""
Router pour la combinatoire des ensembles d'indices
Endpoints : /combinatorics/pi, /combinatorics/sym, /combinatorics/complement,
/combinatorics/compose, /combinatorics/tuple
"""

from fastapi import APIRouter, HTTPException

from app.schemas.common import IndexSetRequest, MetaData, StandardResponse, TupleOperationRequest
from app.services.combinatorics_service import CombinatoricsService

router = APIRouter()


@router.post("/pi", response_model=StandardResponse)
def partition_of(request: IndexSetRequest):
    """
    Partition π(I) = (I(r)−r ≥ … ≥ I(1)−1) et son poids

    **Exemple** :
    ```json
    {"I": [2, 4]}
    ```
    """
    try:
        pi = CombinatoricsService.pi(request.I)
        return StandardResponse(
            meta=MetaData(),
            result={"pi": list(pi), "weight": CombinatoricsService.weight(request.I)},
        )
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/sym", response_model=StandardResponse)
def symmetric_set(request: IndexSetRequest):
    """
    I_sym = {N+1−i : i ∈ I}

    **Paramètres** :
    - `I` : ensemble d'indices
    - `N` : taille ambiante (obligatoire)
    """
    try:
        if request.N is None:
            raise ValueError("Paramètre 'N' manquant")
        return StandardResponse(meta=MetaData(), result={"sym": list(CombinatoricsService.sym(request.I, request.N))})
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/complement", response_model=StandardResponse)
def complement_set(request: IndexSetRequest):
    """
    Complément de I dans [N] ; avec `p`, les p plus petits entiers positifs hors de I
    """
    try:
        if request.p is not None:
            result = {"complement_prefix": list(CombinatoricsService.complement_prefix(request.I, request.p))}
        elif request.N is not None:
            result = {"complement": list(CombinatoricsService.complement(request.I, request.N))}
        else:
            raise ValueError("Paramètre 'N' ou 'p' manquant")
        return StandardResponse(meta=MetaData(), result=result)
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/compose", response_model=StandardResponse)
def compose_sets(request: IndexSetRequest):
    """
    I∘I′ = {I(ℓ) : ℓ ∈ I′}

    **Exemple** :
    ```json
    {"I": [2, 4, 5], "other": [1, 3]}
    ```
    """
    try:
        if request.other is None:
            raise ValueError("Paramètre 'other' manquant")
        return StandardResponse(meta=MetaData(), result={"composed": list(CombinatoricsService.compose(request.I, request.other))})
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/tuple/{operation}", response_model=StandardResponse)
def tuple_operation(operation: str, request: TupleOperationRequest):
    """
    Opérations structurelles sur les tuples de Horn

    **Opérations** :
    - `insert-gaps` : décalage de M des Σq_k plus grands éléments de I (et q_k de J⁽ᵏ⁾)
    - `compose` : (I∘I′, J∘J′) avec `other` de taille ambiante r
    - `union` : I ∪ (Iᶜ∘I′) avec `other` de taille ambiante N−r
    - `complement-sym` : bijection T_r^N → T_{N−r}^N
    """
    try:
        comb = CombinatoricsService
        t = request.horn_tuple
        if operation == "insert-gaps":
            out = comb.insert_gaps(t, request.q or [0] * t.m, request.M)
        elif operation in ("compose", "union"):
            if request.other is None:
                raise ValueError("Paramètre 'other' manquant")
            out = comb.compose_tuples(t, request.other) if operation == "compose" else comb.union_tuples(t, request.other)
        elif operation == "complement-sym":
            out = comb.complement_sym(t)
        else:
            raise ValueError(f"Opération inconnue : {operation}")
        return StandardResponse(meta=MetaData(), result={"horn_tuple": out.model_dump(), "label": out.label()})
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))
