"""
KLO - Sovereignty Module: KL Cache
Caché versionada de tablas KL en disco.

Archivo: <cache_dir>/<tipo><rango>.klcache con JSON
    {format_version, cartan_type, rank, checksum, payload}

Una entrada corrupta o de otra versión se descarta y se recalcula.
"""

import json
import logging
from pathlib import Path
from typing import Optional

from Core.coxeter import CoxeterSystem
from Core.errors import CacheCorrupted
from Core.kl_engine import KLTable, kl_table
from Sovereignty.hash_validator import HashValidator


logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


class KLCache:
    """
    Caché de tablas KL indexada por (tipo, rango).

    Attributes:
        cache_dir: Directorio de la caché
    """

    def __init__(self, cache_dir):
        self.cache_dir = Path(cache_dir)
        self.validator = HashValidator()

    def path(self, system: CoxeterSystem) -> Path:
        return self.cache_dir / f"{system.cartan_type}{system.rank}.klcache"

    def save(self, table: KLTable) -> Path:
        system = table.system
        payload = table.to_payload()
        entry = {
            "format_version": FORMAT_VERSION,
            "cartan_type": system.cartan_type,
            "rank": system.rank,
            "checksum": self.validator.compute_hash(payload),
            "payload": payload,
        }
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        path = self.path(system)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as f:
            json.dump(entry, f, sort_keys=True)
        tmp.replace(path)
        logger.debug("Tabla KL %s guardada en %s", system.name, path)
        return path

    def load(self, system: CoxeterSystem) -> Optional[KLTable]:
        """
        Tabla en caché o None si no existe.

        Raises:
            CacheCorrupted: JSON ilegible, versión o grupo distintos, o suma incorrecta
        """
        path = self.path(system)
        if not path.exists():
            return None
        try:
            with open(path, "r", encoding="utf-8") as f:
                entry = json.load(f)
        except (OSError, ValueError) as exc:
            raise CacheCorrupted(f"Caché ilegible: {path}", path=str(path), reason=str(exc))

        if entry.get("format_version") != FORMAT_VERSION:
            raise CacheCorrupted("Versión de caché distinta", path=str(path),
                                 found=entry.get("format_version"), expected=FORMAT_VERSION)
        if (entry.get("cartan_type"), entry.get("rank")) != (system.cartan_type, system.rank):
            raise CacheCorrupted("La caché corresponde a otro grupo", path=str(path))
        result = self.validator.validate(entry.get("payload"), entry.get("checksum", ""))
        if not result.is_valid:
            raise CacheCorrupted("Suma de la caché no coincide", path=str(path),
                                 expected=result.expected, computed=result.computed)
        return KLTable.from_payload(system, entry["payload"])

    def get_or_compute(self, system: CoxeterSystem, jobs: int = 1,
                       show_progress: bool = False) -> KLTable:
        try:
            table = self.load(system)
        except CacheCorrupted as exc:
            logger.warning("%s; recalculando (%s)", exc, exc.context.get("path"))
            table = None
        if table is None:
            table = kl_table(system, jobs=jobs, show_progress=show_progress)
            self.save(table)
        return table
