"""
KLO - Sovereignty Module: Hash Validator
Sumas SHA-256 sobre JSON canónico para entradas de caché y registros.

Dos cargas con el mismo contenido dan la misma suma aunque el orden de
las claves difiera.
"""

import hashlib
import json
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional


def canonical_json(data: Any) -> str:
    """JSON determinista: claves ordenadas, sin espacios, UTF-8."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass(frozen=True)
class ChecksumResult:
    """
    Comparación entre la suma registrada y la recalculada.

    Attributes:
        is_valid: True si coinciden
        expected: Suma registrada
        computed: Suma recalculada
        reason: Motivo del rechazo, si lo hay
    """
    is_valid: bool
    expected: str
    computed: str
    reason: Optional[str] = None

    @property
    def fingerprint(self) -> str:
        return self.computed[:16]

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["fingerprint"] = self.fingerprint
        return data


class HashValidator:
    """Cálculo y comprobación de sumas SHA-256."""

    @staticmethod
    def compute_hash(data: Any) -> str:
        """
        SHA-256 hexadecimal de bytes, texto o de una estructura JSON.

        Las estructuras se serializan con canonical_json antes de sumar.
        """
        if isinstance(data, bytes):
            raw = data
        elif isinstance(data, str):
            raw = data.encode("utf-8")
        else:
            raw = canonical_json(data).encode("utf-8")
        return hashlib.sha256(raw).hexdigest()

    @classmethod
    def validate(cls, data: Any, expected: str) -> ChecksumResult:
        computed = cls.compute_hash(data)
        if computed == expected:
            return ChecksumResult(True, expected, computed)
        return ChecksumResult(False, expected, computed, reason="Suma SHA-256 no coincide")
