"""
Router pour l'interpolation entre familles de Horn
Endpoints : /interpolate/tau, /interpolate/run, /interpolate/two-sided, /interpolate/truncate
"""

from fastapi import APIRouter, HTTPException

from app.schemas.common import (
    InterpolateRequest, MetaData, StandardResponse, TwoSidedInterpolateRequest, to_jsonable
)
from app.services.interpolate_service import InterpolateService

router = APIRouter()


@router.post("/tau", response_model=StandardResponse)
def tau(request: InterpolateRequest):
    """
    Plus petit τ ∈ [0, 1] rendant (α(τ), β(τ)) admissible, et contraintes serrées

    **Exemple** :
    ```json
    {"alphaP": [1, 1], "alphaPP": [3, 1], "betasP": [[1, 0], [1, 0]], "betasPP": [[1, 0], [1, 0]]}
    ```

    **Retour** : τ et la liste des tuples serrés (r ≥ 1)
    """
    try:
        N = request.N if request.N is not None else len(request.alphaP)
        value, tight = InterpolateService.tau_tight(request.alphaP, request.alphaPP,
                                                    request.betasP, request.betasPP, N)
        return StandardResponse(
            meta=MetaData(),
            result={"tau": value, "tight": [t.model_dump() for t in tight], "labels": [t.label() for t in tight]},
        )
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/run", response_model=StandardResponse)
def run_interpolation(request: InterpolateRequest):
    """
    Interpolation complète (décomposition récursive ou marche entière)

    **Paramètres** :
    - `integer_mode` : données entières, pas d'une unité, résultat entier

    **Retour** : spectres α, β⁽ᵏ⁾ et arbre de décomposition
    """
    try:
        N = request.N if request.N is not None else len(request.alphaP)
        res = InterpolateService.interpolate(request.alphaP, request.alphaPP, request.betasP, request.betasPP,
                                             N, integer_mode=request.integer_mode)
        return StandardResponse(meta=MetaData(), result=to_jsonable(res.to_dict()))
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/two-sided", response_model=StandardResponse)
def two_sided(request: TwoSidedInterpolateRequest):
    """
    Troncature d'ordre n de suites bilatères puis interpolation (rang ≤ (m+1)n)
    """
    try:
        res = InterpolateService.realize_two_sided(request.alpha, request.betas, request.n,
                                                   alpha_pp=request.alphaPP, betas_pp=request.betasPP,
                                                   integer_mode=request.integer_mode)
        return StandardResponse(meta=MetaData(), result=to_jsonable(res.to_dict()))
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/truncate", response_model=StandardResponse)
def truncate(request: TwoSidedInterpolateRequest):
    """Instance finie (α′(n), α″(n), β′(n), β″(n)) de taille (m+1)n"""
    try:
        aP, aPP, bPs, bPPs = InterpolateService.truncate_pad(request.alpha, request.betas, request.n,
                                                             request.alphaPP, request.betasPP)
        return StandardResponse(
            meta=MetaData(),
            result=to_jsonable({"N": len(aP), "alphaP": aP, "alphaPP": aPP, "betasP": bPs, "betasPP": bPPs}),
        )
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))
