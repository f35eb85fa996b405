"""
KLO - Core Module: Errors
Jerarquía de excepciones del proyecto.

Cada error lleva un código estable y un contexto serializable; la CLI
imprime `to_dict()` como registro estructurado antes de salir con código 1.
"""

import json
from typing import Any, Dict


class KLOError(Exception):
    """
    Error base de KLO.

    Attributes:
        code: Identificador estable del tipo de error
        context: Datos adicionales (índices, subconjuntos J, límites)
    """

    code = "KLOError"

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.context = context

    def to_dict(self) -> Dict[str, Any]:
        """Registro estructurado del error."""
        return {
            "error": self.code,
            "message": str(self),
            "context": {k: _jsonable(v) for k, v in self.context.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=True)


def _jsonable(value: Any) -> Any:
    if isinstance(value, (frozenset, set)):
        return sorted(value)
    if isinstance(value, tuple):
        return list(value)
    return value


class UnsupportedType(KLOError):
    code = "UnsupportedType"


class RankTooLarge(KLOError):
    code = "RankTooLarge"


class NotTypeA(KLOError):
    code = "NotTypeA"


class NotACosetRep(KLOError):
    code = "NotACosetRep"


class CoefficientOverflow(KLOError):
    code = "CoefficientOverflow"


class NoDufloFound(KLOError):
    code = "NoDufloFound"


class ZeroBlock(KLOError):
    code = "ZeroBlock"


class IndexSetViolation(KLOError):
    code = "IndexSetViolation"


class SegmentExplosion(KLOError):
    code = "SegmentExplosion"


class UnsupportedBlock(KLOError):
    code = "UnsupportedBlock"


class CacheCorrupted(KLOError):
    code = "CacheCorrupted"
