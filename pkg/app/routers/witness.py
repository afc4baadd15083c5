"""
Router pour les matrices témoins
Endpoints : /witness/synthesize, /witness/{witness_id}, /witness/lambda0,
/witness/compress, /witness/reduce
"""

import numpy as np
from fastapi import APIRouter, HTTPException

from app.schemas.common import (
    Lambda0Request, MetaData, StandardResponse, WitnessCompressRequest, WitnessReduceRequest,
    WitnessSynthRequest, to_jsonable
)
from app.services.errors import WitnessConvergenceError
from app.services.witness_service import WitnessService, get_witness, store_witness

router = APIRouter()


def _matrix(real, imag=None) -> np.ndarray:
    M = np.asarray(real, dtype=float)
    if imag is not None:
        M = M + 1j * np.asarray(imag, dtype=float)
    return M


@router.post("/synthesize", response_model=StandardResponse)
def synthesize(request: WitnessSynthRequest):
    """
    Synthèse de B⁽ᵏ⁾ hermitiennes de spectres β⁽ᵏ⁾ avec ΣB⁽ᵏ⁾ = diag(α)

    **Exemple** :
    ```json
    {"alpha": [1, 1], "betas": [[1, 0], [1, 0]], "seed": 0}
    ```

    **Retour** : witness_id (à réutiliser), résidu et écarts spectraux
    """
    try:
        W = WitnessService.synthesize(request.alpha, request.betas, tol=request.tol,
                                      max_iter=request.max_iter, restarts=request.restarts,
                                      seed=request.seed)
    except WitnessConvergenceError as e:
        best = e.best.to_dict(include_matrices=False) if e.best is not None else None
        raise HTTPException(status_code=400, detail={"error": str(e), "best": best})
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))

    witness_id = f"witness_{request.seed}_{W.N}_{len(W.B)}"
    store_witness(witness_id, W)
    return StandardResponse(meta=MetaData(instance_id=witness_id), result=W.to_dict(include_matrices=True))


@router.get("/{witness_id}", response_model=StandardResponse)
def read_witness(witness_id: str):
    """Récupère un témoin stocké"""
    try:
        W = get_witness(witness_id)
    except KeyError as e:
        raise HTTPException(status_code=404, detail=str(e))
    return StandardResponse(meta=MetaData(instance_id=witness_id), result=W.to_dict(include_matrices=True))


@router.post("/lambda0", response_model=StandardResponse)
def lambda0(request: Lambda0Request):
    """Spectre bilatère λ₀(H) d'une matrice hermitienne"""
    try:
        spectrum = WitnessService.lambda0_of_matrix(_matrix(request.real, request.imag))
        return StandardResponse(meta=MetaData(), result=to_jsonable(spectrum))
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/compress", response_model=StandardResponse)
def compress(request: WitnessCompressRequest):
    """
    Compressions PAP, PB⁽ᵏ⁾P d'un témoin stocké et contrôle d'entrelacement
    """
    try:
        W = get_witness(request.witness_id)
    except KeyError as e:
        raise HTTPException(status_code=404, detail=str(e))
    try:
        report = WitnessService.compress(W, _matrix(request.projector_real, request.projector_imag))
        return StandardResponse(meta=MetaData(instance_id=request.witness_id), result=to_jsonable(report))
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/reduce", response_model=StandardResponse)
def reduce(request: WitnessReduceRequest):
    """
    Sous-espace réduisant associé à une inégalité étendue atteinte avec égalité

    **Paramètres** :
    - `horn_tuple`, `q` : inégalité étendue
    - `orientation` : direct ou bar (−A, −B)
    """
    try:
        W = get_witness(request.witness_id)
    except KeyError as e:
        raise HTTPException(status_code=404, detail=str(e))
    try:
        report = WitnessService.detect_reducing(W, request.horn_tuple, request.q, tol=request.tol,
                                                orientation=request.orientation, seed=request.seed)
        report.pop("projector")
        return StandardResponse(meta=MetaData(instance_id=request.witness_id), result=to_jsonable(report))
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))
