"""
Configuration de l'application
Les valeurs sont lues depuis l'environnement (préfixe HORN_)
"""

import logging
import os
from functools import lru_cache
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field


# Plafonds par défaut de l'énumération (N maximal selon m)
DEFAULT_CAPS: Dict[int, int] = {1: 10, 2: 8, 3: 6}
DEFAULT_CAP_OTHER = 5

# Tolérances
VIOLATION_TOL = 1e-9
HIVE_TOL_EXACT = 1e-12
HIVE_TOL_DATA = 1e-9
WITNESS_TOL = 1e-8


class Settings(BaseModel):
    """Paramètres globaux du service"""

    cache_dir: Optional[str] = Field(None, description="Répertoire du cache disque des tables (HORN_CACHE_DIR)")
    log_level: str = Field("WARNING", description="Niveau de log (HORN_LOG_LEVEL)")
    max_n_m2: int = Field(DEFAULT_CAPS[2], gt=0)
    max_n_m3: int = Field(DEFAULT_CAPS[3], gt=0)
    max_n: Optional[int] = Field(None, gt=0, description="Plafond unique forcé (option --max-n)")
    threads: int = Field(1, gt=0)
    seed: int = 0

    def cap_for(self, m: int) -> int:
        """Plafond de N pour m sommants"""
        if self.max_n is not None:
            return self.max_n
        if m == 2:
            return self.max_n_m2
        if m == 3:
            return self.max_n_m3
        return DEFAULT_CAPS.get(m, DEFAULT_CAP_OTHER)


@lru_cache()
def get_settings() -> Settings:
    env = os.environ
    values = {
        "cache_dir": env.get("HORN_CACHE_DIR") or None,
        "log_level": env.get("HORN_LOG_LEVEL", "WARNING").upper(),
    }
    for key, name in (("max_n_m2", "HORN_MAX_N_M2"), ("max_n_m3", "HORN_MAX_N_M3"),
                      ("threads", "HORN_THREADS"), ("seed", "HORN_SEED")):
        if env.get(name):
            values[key] = int(env[name])
    values.update(_overrides)
    return Settings(**values)


# Valeurs imposées par la CLI (prioritaires sur l'environnement)
_overrides: Dict[str, Any] = {}


def configure(**values: Any) -> Settings:
    """Impose des paramètres (threads, seed, max_n, ...) puis relit la configuration"""
    _overrides.update({k: v for k, v in values.items() if v is not None})
    clear_settings_cache()
    return get_settings()


def reset_configuration() -> None:
    _overrides.clear()
    clear_settings_cache()


def clear_settings_cache() -> None:
    """Relit l'environnement au prochain appel de get_settings()"""
    get_settings.cache_clear()


LOG_FORMAT = "%(name)s:%(levelname)s:%(message)s"


def setup_logging(level: Optional[str] = None) -> None:
    """Configure le handler racine (appelé par la CLI et l'application)"""
    logging.basicConfig(format=LOG_FORMAT)
    logging.getLogger("app").setLevel((level or get_settings().log_level).upper())
