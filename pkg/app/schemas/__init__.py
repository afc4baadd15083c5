"""Schémas Pydantic : types du domaine (horn) et enveloppe des requêtes/réponses (common)"""

from app.schemas.horn import HornTuple, InequalityRecord, PartialSpectrum, RunConfig, TwoSidedSpectrum

__all__ = ["HornTuple", "InequalityRecord", "PartialSpectrum", "RunConfig", "TwoSidedSpectrum"]
