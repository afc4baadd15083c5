"""
Router pour les données spectrales partielles
Endpoints : /partial/envelope, /partial/check, /partial/realize, /partial/johnson,
/partial/lowrank, /partial/extend, /partial/realize-two-sided
"""

from fastapi import APIRouter, HTTPException

from app.schemas.common import (
    EnvelopeRequest, JohnsonRequest, LowrankRequest, MetaData, PartialRequest,
    StandardResponse, TwoSidedPartialRequest, to_jsonable
)
from app.services.partial_service import PartialService

router = APIRouter()


def _violations(records):
    return {"n_violations": len(records), "violations": to_jsonable([rec.to_row() for rec in records])}


@router.post("/envelope", response_model=StandardResponse)
def envelope(request: EnvelopeRequest):
    """
    Enveloppes (α^min, α^max) d'un spectre partiel

    **Exemple** :
    ```json
    {"partial": {"spec": {"1": 2.0, "3": -1.0}}, "N": 3}
    ```
    """
    try:
        env = PartialService.min_max(request.partial, request.N)
        return StandardResponse(meta=MetaData(), result=env.to_dict())
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/check", response_model=StandardResponse)
def check(request: PartialRequest):
    """
    Décide s'il existe des spectres complets prolongeant les données partielles

    **Retour** : verdict, enveloppes et inégalités violées
    """
    try:
        out = PartialService.check_partial(request.alpha, request.betas, request.N)
        return StandardResponse(
            meta=MetaData(),
            result={"feasible": out.feasible, "envelopes": [e.to_dict() for e in out.envelopes]},
            report=_violations(out.violations),
        )
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/realize", response_model=StandardResponse)
def realize(request: PartialRequest):
    """
    Réalisation : spectres complets et, en option, matrices témoins

    **Paramètres** :
    - `integer_mode` : réalisation entière
    - `with_witness` : synthèse des matrices (seed)
    """
    try:
        real = PartialService.realize_partial(request.alpha, request.betas, request.N,
                                              integer_mode=request.integer_mode,
                                              with_witness=request.with_witness, seed=request.seed)
        result = {"alpha": real.alpha, "betas": real.betas, "C": real.C,
                  "n_steps": len(real.interpolation.steps)}
        if real.witness is not None:
            result["witness"] = real.witness.to_dict()
        return StandardResponse(meta=MetaData(), result=to_jsonable(result))
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/johnson", response_model=StandardResponse)
def johnson(request: JohnsonRequest):
    """Intervalle admissible de α_p quand seul α_p est spécifié"""
    try:
        lower, upper = PartialService.johnson_bounds(request.betas, request.p, request.N)
        return StandardResponse(meta=MetaData(), result={"p": request.p, "lower": lower, "upper": upper})
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/lowrank", response_model=StandardResponse)
def lowrank(request: LowrankRequest):
    """Existence d'une somme semi-définie positive de rang ≤ ρ"""
    try:
        out = PartialService.lowrank_check(request.betas, request.rho, request.N)
        return StandardResponse(meta=MetaData(), result={"feasible": out.feasible, "rho": request.rho},
                                report=_violations(out.violations))
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/extend", response_model=StandardResponse)
def extend(request: TwoSidedPartialRequest):
    """
    Complète des enveloppes bilatères en suites admissibles (côtés primé et doublement primé)
    """
    try:
        ext = PartialService.extend_two_sided(request.alpha, request.betas, N_max=request.n_max)
        return StandardResponse(meta=MetaData(), result=to_jsonable(ext.to_dict()))
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/realize-two-sided", response_model=StandardResponse)
def realize_two_sided(request: TwoSidedPartialRequest):
    """extend puis interpolation de la troncature d'ordre n"""
    try:
        res = PartialService.realize_two_sided(request.alpha, request.betas, request.n or 1,
                                               N_max=request.n_max)
        return StandardResponse(meta=MetaData(), result=to_jsonable(res.to_dict()))
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))
