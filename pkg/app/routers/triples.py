"""
Router pour les ensembles de Horn T, T̄ et Ṫ
Endpoints : /triples/enumerate, /triples/member, /triples/reduce
"""

from fastapi import APIRouter, HTTPException

from app.schemas.common import MembershipRequest, MetaData, StandardResponse, TriplesRequest, to_jsonable
from app.services.horn_sets_service import HornSetsService

router = APIRouter()


@router.post("/enumerate", response_model=StandardResponse)
def enumerate_triples(request: TriplesRequest):
    """
    Énumère T_r^N(m+1), T̄_r^N(m+1) ou Ṫ_r^N(m+1)

    Sans `r`, renvoie les cardinalités de toutes les cellules (N′, r) avec N′ ≤ N.

    **Exemple** :
    ```json
    {"kind": "T", "m": 2, "N": 2, "r": 1}
    ```

    **Retour** : liste des tuples (forme compacte et détaillée)
    """
    try:
        meta = MetaData(instance_id=f"{request.kind}_{request.m}_{request.N}")
        if request.r is None:
            counts = HornSetsService.counts(request.kind, request.m, request.N, request.max_n)
            return StandardResponse(meta=meta, result={"counts": to_jsonable(counts.to_dict(orient="records"))})
        tuples = HornSetsService.enumerate(request.kind, request.N, request.r, request.m, request.max_n)
        return StandardResponse(
            meta=meta,
            result={"tuples": [t.model_dump() for t in tuples], "labels": [t.label() for t in tuples]},
            report={"count": len(tuples)},
        )
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/member", response_model=StandardResponse)
def member_triple(request: MembershipRequest):
    """
    Test d'appartenance (définition récursive ; Ṫ via le coefficient LR égal à 1)
    """
    try:
        verdict = HornSetsService.member(request.kind, request.horn_tuple, request.max_n)
        return StandardResponse(meta=MetaData(), result={"member": verdict, "tuple": request.horn_tuple.label()})
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/reduce", response_model=StandardResponse)
def reduce_triple(request: MembershipRequest):
    """
    Réduction T̄ → T : tuple t′ ∈ T avec I′ ≤ I et J′ ≥ J point par point
    """
    try:
        out = HornSetsService.reduce_to_T(request.horn_tuple, request.max_n)
        return StandardResponse(meta=MetaData(), result={"horn_tuple": out.model_dump(), "label": out.label()})
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))
