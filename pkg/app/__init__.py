"""
Horn Spectra - Inégalités de Horn et spectres d'opérateurs compacts
Bibliothèque, API FastAPI et CLI (python -m app)
"""

__version__ = "1.0.0"
