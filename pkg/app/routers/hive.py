"""
Router pour les hives et les coefficients de Littlewood-Richardson
Endpoints : /hive/example, /hive/reconstruct, /hive/lr
"""

import numpy as np
from fastapi import APIRouter, HTTPException

from app.schemas.common import HiveReconstructRequest, HiveRequest, LrRequest, MetaData, StandardResponse, to_jsonable
from app.services.schur_hive_service import SchurHiveService

router = APIRouter()


@router.post("/example", response_model=StandardResponse)
def hive_example(request: HiveRequest):
    """
    Hive explicite sur la fenêtre W×H et vérification de la règle LR continue

    **Exemple** :
    ```json
    {"W": 60, "H": 60}
    ```

    **Retour** : rapport de vérification et heatmaps Plotly
    """
    try:
        W, H = request.W, request.H
        h = SchurHiveService.example_hive(W, H)
        i = np.arange(1, W + 1, dtype=float)
        j = np.arange(1, H + 1, dtype=float)
        report = SchurHiveService.verify_continuous_lr(
            1.0 / (i + 2), 1.0 / (2 * (j + 1)), 1.0 / (2 * (i + 1)), h,
            tail_bound=1.0 / (2 * (H + 2)),
        )
        return StandardResponse(
            meta=MetaData(instance_id=f"hive_{W}_{H}"),
            result={"passed": report["passed"], "min_slack": SchurHiveService.min_slack(h)},
            report=to_jsonable(report),
            artifacts=SchurHiveService.hive_figures(h),
        )
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/reconstruct", response_model=StandardResponse)
def reconstruct(request: HiveReconstructRequest):
    """
    Reconstruit une hive depuis ses bords (α, β) et les z intérieurs ;
    avec `gamma`, vérifie la règle LR continue
    """
    try:
        h = SchurHiveService.hive_reconstruct(request.alpha, request.beta, np.asarray(request.z, dtype=float))
        result = {"f": h.f, "residual": h.residual, "min_slack": SchurHiveService.min_slack(h)}
        report = None
        if request.gamma is not None:
            report = to_jsonable(SchurHiveService.verify_continuous_lr(request.alpha, request.beta, request.gamma, h))
        return StandardResponse(meta=MetaData(), result=to_jsonable(result), report=report)
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/lr", response_model=StandardResponse)
def lr(request: LrRequest):
    """
    Coefficient c^λ_{μν} ou coefficient itéré c^λ_{μ⁽¹⁾…μ⁽ᵐ⁾}

    **Exemple** :
    ```json
    {"lam": [2, 1], "mu": [1], "nu": [1, 1]}
    ```
    """
    try:
        if request.factors is not None:
            value = SchurHiveService.multi_lr_coeff(request.lam, request.factors)
        else:
            value = SchurHiveService.lr_coeff(request.lam, request.mu, request.nu)
        return StandardResponse(meta=MetaData(), result={"coefficient": value})
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))
