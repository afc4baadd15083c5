"""
Application FastAPI - Inégalités de Horn et spectres d'opérateurs compacts
Point d'entrée principal
"""

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app import __version__
from app.config import get_settings, setup_logging
from app.routers import check, combinatorics, hive, interpolate, partial, scenarios, triples, witness

setup_logging(get_settings().log_level)

# Créer l'application FastAPI
app = FastAPI(
    title="Horn Spectra API",
    description="""
    API de décision spectrale pour les sommes d'opérateurs hermitiens :

    - **Combinatoire** : ensembles d'indices, partitions, opérations sur les tuples
    - **Triples** : ensembles de Horn T, T̄, Ṫ (énumération, appartenance, réduction)
    - **Check** : inégalités de Horn finies, inverses, étendues et cas positif
    - **Interpolate** : interpolation entre familles admissibles, troncature bilatère
    - **Partial** : données partielles, bornes de Johnson, rang borné
    - **Witness** : matrices témoins, compressions, sous-espaces réduisants
    - **Hive** : hives, coefficients de Littlewood-Richardson, règle LR continue
    - **Scenarios** : exemples de référence rejouables
    """,
    version=__version__,
    docs_url="/docs",
    redoc_url="/redoc"
)

# Configuration CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Inclure les routers
app.include_router(combinatorics.router, prefix="/combinatorics", tags=["Combinatoire"])
app.include_router(triples.router, prefix="/triples", tags=["Ensembles de Horn"])
app.include_router(check.router, prefix="/check", tags=["Inégalités"])
app.include_router(interpolate.router, prefix="/interpolate", tags=["Interpolation"])
app.include_router(partial.router, prefix="/partial", tags=["Données partielles"])
app.include_router(witness.router, prefix="/witness", tags=["Témoins"])
app.include_router(hive.router, prefix="/hive", tags=["Hives et LR"])
app.include_router(scenarios.router, prefix="/scenarios", tags=["Scénarios"])


@app.get("/", tags=["Root"])
def root():
    """
    Endpoint racine - Informations sur l'API
    """
    return {
        "message": "Bienvenue sur l'API Horn Spectra !",
        "version": __version__,
        "documentation": "/docs",
        "endpoints": {
            "combinatorics": "/combinatorics/*",
            "triples": "/triples/*",
            "check": "/check/*",
            "interpolate": "/interpolate/*",
            "partial": "/partial/*",
            "witness": "/witness/*",
            "hive": "/hive/*",
            "scenarios": "/scenarios/*"
        }
    }


@app.get("/health", tags=["Health"])
def health_check():
    """
    Health check endpoint
    """
    return {"status": "healthy", "service": "horn-spectra-api"}


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
