"""
Router pour les familles d'inégalités
Endpoints : /check/finite, /check/extended, /check/eval
"""

from fastapi import APIRouter, HTTPException

from app.schemas.common import (
    EvalRequest, ExtendedCheckRequest, FiniteCheckRequest, MetaData, StandardResponse, to_jsonable
)
from app.services.spectra_service import SpectraService

router = APIRouter()


def _violation_report(records):
    return {"n_violations": len(records), "violations": to_jsonable([rec.to_row() for rec in records])}


@router.post("/finite", response_model=StandardResponse)
def check_finite(request: FiniteCheckRequest):
    """
    Balaye toutes les inégalités d'une famille finie

    **Paramètres** :
    - `mode` : finite (Horn), sym (forme complémentaire), reverse (forme inverse), positive
    - `N` : taille (défaut : longueur de alpha)
    - `n_max`, `window` : ordre du catalogue et fenêtre (mode positive)

    **Exemple** :
    ```json
    {"alpha": [2, 0], "betas": [[1, 0], [1, 0]], "N": 2}
    ```

    **Retour** : verdict, écart de trace et table des violations
    """
    try:
        if request.mode == "positive":
            records = SpectraService.scan_positive(request.alpha, request.betas, request.n_max, window=request.window)
            return StandardResponse(meta=MetaData(), result={"feasible": not records}, report=_violation_report(records))
        N = request.N if request.N is not None else len(request.alpha)
        if request.mode == "reverse":
            records = SpectraService.scan_reverse(request.alpha, request.betas, N)
        else:
            records = SpectraService.scan_finite(request.alpha, request.betas, N,
                                                 form="horn_sym" if request.mode == "sym" else "horn")
        result = {"feasible": not records}
        try:
            result["trace_gap"] = SpectraService.trace_gap([float(a) for a in request.alpha[:N]],
                                                           [[float(b) for b in bs[:N]] for bs in request.betas])
        except ValueError:
            result["trace_gap"] = None
        return StandardResponse(meta=MetaData(), result=to_jsonable(result), report=_violation_report(records))
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/extended", response_model=StandardResponse)
def check_extended(request: ExtendedCheckRequest):
    """
    Inégalités de Horn étendues pour des suites bilatères (α, β) et (ᾱ, β̄)

    **Exemple** :
    ```json
    {"alpha": {"pos": [1, 0.5], "neg": []}, "betas": [{"pos": [0.5, 0.25]}, {"pos": [0.5, 0.25]}], "n_max": 3}
    ```
    """
    try:
        records = SpectraService.scan_extended(request.alpha, request.betas, request.n_max,
                                               window=request.window, one_sided=request.one_sided)
        return StandardResponse(meta=MetaData(), result={"feasible": not records}, report=_violation_report(records))
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/eval", response_model=StandardResponse)
def evaluate(request: EvalRequest):
    """
    Évalue une seule inégalité (horn, horn_sym, reverse ou extended avec q)
    """
    try:
        t = request.horn_tuple
        if request.family == "extended":
            if request.alpha_two_sided is None or request.betas_two_sided is None or request.q is None:
                raise ValueError("alpha_two_sided, betas_two_sided et q sont requis")
            rec = SpectraService.eval_extended(t, request.q, request.alpha_two_sided, request.betas_two_sided)
        else:
            if request.alpha is None or request.betas is None:
                raise ValueError("alpha et betas sont requis")
            fn = {"horn": SpectraService.eval_horn, "horn_sym": SpectraService.eval_horn_sym,
                  "reverse": SpectraService.eval_reverse}[request.family]
            rec = fn(t, request.alpha, request.betas)
        return StandardResponse(meta=MetaData(), result=to_jsonable(rec.model_dump() | {"violated": rec.violated}))
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))
