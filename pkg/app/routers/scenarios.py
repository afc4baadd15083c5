"""
Router pour les scénarios de référence
Endpoints : /scenarios/list, /scenarios/run/{name}
"""

from fastapi import APIRouter, HTTPException

from app.schemas.common import MetaData, StandardResponse, to_jsonable
from app.services.scenarios_service import ScenariosService

router = APIRouter()


@router.get("/list", response_model=StandardResponse)
def list_scenarios():
    """Liste des scénarios nommés"""
    items = ScenariosService.list()
    return StandardResponse(meta=MetaData(), result=items, report={"count": len(items)})


@router.post("/run/{name}", response_model=StandardResponse)
def run_scenario(name: str, seed: int = 0):
    """
    Exécute un scénario

    **Paramètres** :
    - `name` : johnson, alpha1-alpha3, buch-lowrank, sec6-feasible, sec6-gamma-doubleprime,
      sec6-violation, sec6-reducing, hive-example
    - `seed` : graine (query)

    **Retour** : verdict (`violated`), résultat et inégalités violées
    """
    try:
        out = ScenariosService.run(name, seed=seed)
    except KeyError as e:
        raise HTTPException(status_code=404, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=400, detail=str(e))
    records = out.pop("violations")
    return StandardResponse(
        meta=MetaData(instance_id=name),
        result=to_jsonable(out),
        report={"n_violations": len(records), "violations": to_jsonable([rec.to_row() for rec in records[:200]])},
    )
