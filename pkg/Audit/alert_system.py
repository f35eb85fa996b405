"""
KLO - Audit Module: Alert System
Registro de violaciones de propiedades verificadas sobre datos calculados.

Niveles: INFO, WARNING, CRITICAL

Una comprobación nunca lanza excepciones: produce un Violation que se
acumula en un ViolationCollector con contadores por comprobación.
"""

import json
from dataclasses import asdict, dataclass, field
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional


class AlertLevel(Enum):
    """Niveles de severidad."""
    INFO = "INFO"
    WARNING = "WARNING"
    CRITICAL = "CRITICAL"


@dataclass
class Violation:
    """
    Propiedad incumplida.

    Attributes:
        check: Nombre estable de la comprobación (p.ej. "simple.bottom_w0")
        message: Descripción legible
        level: Nivel de alerta
        block: Descriptor del bloque, si aplica
        element: Etiqueta del elemento implicado, si aplica
        details: Valores concretos que fallaron
    """
    check: str
    message: str
    level: str = AlertLevel.CRITICAL.value
    block: Optional[Dict] = None
    element: Optional[str] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=True)


class ViolationCollector:
    """
    Acumulador de resultados de comprobaciones.

    Lleva cuenta de evaluaciones y fallos por comprobación para que un
    informe vacío pueda distinguirse de un informe que no evaluó nada.
    """

    def __init__(self, block: Optional[Dict] = None):
        self.block = block
        self.violations: List[Violation] = []
        self.counts: Dict[str, Dict[str, int]] = {}

    def _count(self, check: str, passed: bool) -> None:
        entry = self.counts.setdefault(check, {"evaluated": 0, "failed": 0})
        entry["evaluated"] += 1
        if not passed:
            entry["failed"] += 1

    def check(self, name: str, condition: bool, message: str,
              element: Optional[str] = None,
              level: AlertLevel = AlertLevel.CRITICAL,
              **details: Any) -> bool:
        """Registra una evaluación; si falla añade un Violation."""
        passed = bool(condition)
        self._count(name, passed)
        if not passed:
            self.violations.append(Violation(
                check=name,
                message=message,
                level=level.value,
                block=self.block,
                element=element,
                details=details,
            ))
        return passed

    def extend(self, other: "ViolationCollector") -> None:
        self.violations.extend(other.violations)
        for name, entry in other.counts.items():
            mine = self.counts.setdefault(name, {"evaluated": 0, "failed": 0})
            mine["evaluated"] += entry["evaluated"]
            mine["failed"] += entry["failed"]

    @property
    def ok(self) -> bool:
        return not any(v.level == AlertLevel.CRITICAL.value for v in self.violations)

    def by_check(self, prefix: str) -> List[Violation]:
        return [v for v in self.violations if v.check.startswith(prefix)]

    def summary(self) -> Dict:
        return {
            "block": self.block,
            "checks": len(self.counts),
            "evaluations": sum(e["evaluated"] for e in self.counts.values()),
            "violations": len(self.violations),
            "by_level": {
                level.value: sum(1 for v in self.violations if v.level == level.value)
                for level in AlertLevel
            },
        }

    def to_dict(self) -> Dict:
        return {
            "summary": self.summary(),
            "counts": self.counts,
            "violations": [v.to_dict() for v in self.violations],
        }

    def save(self, alert_dir: Path) -> Path:
        """Añade las violaciones a <alert_dir>/violations.jsonl."""
        alert_dir = Path(alert_dir)
        alert_dir.mkdir(parents=True, exist_ok=True)
        path = alert_dir / "violations.jsonl"
        stamp = datetime.utcnow().isoformat() + "Z"
        with open(path, "a", encoding="utf-8") as f:
            for violation in self.violations:
                record = violation.to_dict()
                record["timestamp"] = stamp
                f.write(json.dumps(record, ensure_ascii=False) + "\n")
        return path
