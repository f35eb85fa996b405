"""
KLO - Core Module: Configuration
Parámetros de ejecución leídos de variables de entorno (.env opcional).

Prioridad: flags de la CLI > entorno > valores por defecto.
"""

import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv


DEFAULT_CACHE_DIR = "Data/klcache"
DEFAULT_RUN_LOG_DIR = "Data/runs"
DEFAULT_MAX_ORDER = 40320
DEFAULT_JOBS = 1
DEFAULT_SEGMENT_CAP = 10000


@dataclass(frozen=True)
class Settings:
    """
    Configuración efectiva.

    Attributes:
        cache_dir: Directorio de la caché de tablas KL
        run_log_dir: Directorio del registro de ejecuciones (JSONL)
        max_order: Cota superior de |W| aceptada por build_system
        jobs: Procesos para el modo paralelo por estratos
        segment_cap: Máximo de segmentos enumerados antes de abortar
    """
    cache_dir: Path = Path(DEFAULT_CACHE_DIR)
    run_log_dir: Path = Path(DEFAULT_RUN_LOG_DIR)
    max_order: int = DEFAULT_MAX_ORDER
    jobs: int = DEFAULT_JOBS
    segment_cap: int = DEFAULT_SEGMENT_CAP

    def with_overrides(self,
                       cache_dir: Optional[str] = None,
                       max_order: Optional[int] = None,
                       jobs: Optional[int] = None) -> "Settings":
        """Aplica los valores explícitos de la CLI."""
        changes = {}
        if cache_dir is not None:
            changes["cache_dir"] = Path(cache_dir)
        if max_order is not None:
            changes["max_order"] = max_order
        if jobs is not None:
            changes["jobs"] = max(1, jobs)
        return replace(self, **changes)


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        return default


def load_settings(env_file: Optional[str] = None) -> Settings:
    """
    Construye Settings desde el entorno.

    Args:
        env_file: Ruta explícita a un .env; por defecto se busca en el cwd

    Returns:
        Settings con los valores resueltos
    """
    load_dotenv(dotenv_path=env_file, override=False)
    return Settings(
        cache_dir=Path(os.getenv("KLO_CACHE_DIR", DEFAULT_CACHE_DIR)),
        run_log_dir=Path(os.getenv("KLO_RUN_LOG", DEFAULT_RUN_LOG_DIR)),
        max_order=_int_env("KLO_MAX_ORDER", DEFAULT_MAX_ORDER),
        jobs=max(1, _int_env("KLO_JOBS", DEFAULT_JOBS)),
        segment_cap=_int_env("KLO_SEGMENT_CAP", DEFAULT_SEGMENT_CAP),
    )
