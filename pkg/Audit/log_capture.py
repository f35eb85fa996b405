"""
KLO - Audit Module: Log Capture
Registro append-only de invocaciones del CLI en formato JSONL.

Cada línea guarda comando, bloque, formato, código de salida y la
suma SHA-256 de la salida emitida.
"""

import json
import uuid
from dataclasses import asdict, dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional

from Sovereignty.hash_validator import HashValidator


@dataclass
class RunRecord:
    """
    Registro de una invocación.

    Attributes:
        run_id: ID único
        timestamp: Marca temporal ISO 8601 (UTC)
        command: Subcomando ejecutado
        block: Descriptor del bloque o del grupo
        format: Formato de salida
        exit_status: Código de salida
        output_checksum: SHA-256 de la salida
        record_hash: SHA-256 de los campos anteriores
    """
    run_id: str
    timestamp: str
    command: str
    block: Dict = field(default_factory=dict)
    format: str = "json"
    exit_status: int = 0
    output_checksum: Optional[str] = None
    record_hash: str = ""

    def content(self) -> Dict:
        data = asdict(self)
        data.pop("record_hash")
        return data

    def to_dict(self) -> Dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)


class RunLog:
    """
    Captura persistente de ejecuciones en <log_dir>/runs.jsonl.
    """

    def __init__(self, log_dir: str = "Data/runs"):
        self.log_dir = Path(log_dir)
        self.log_file = self.log_dir / "runs.jsonl"
        self.validator = HashValidator()

    def record(self, command: str, block: Optional[Dict] = None, fmt: str = "json",
               exit_status: int = 0, output: Optional[str] = None) -> RunRecord:
        entry = RunRecord(
            run_id=str(uuid.uuid4()),
            timestamp=datetime.utcnow().isoformat() + "Z",
            command=command,
            block=block or {},
            format=fmt,
            exit_status=exit_status,
            output_checksum=None if output is None else self.validator.compute_hash(output),
        )
        entry.record_hash = self.validator.compute_hash(entry.content())
        self._append_to_jsonl(entry)
        return entry

    def _append_to_jsonl(self, entry: RunRecord) -> None:
        self.log_dir.mkdir(parents=True, exist_ok=True)
        with open(self.log_file, "a", encoding="utf-8") as f:
            f.write(entry.to_json() + "\n")

    def load_all(self) -> List[RunRecord]:
        if not self.log_file.exists():
            return []
        records = []
        with open(self.log_file, "r", encoding="utf-8") as f:
            for line in f:
                if line.strip():
                    records.append(RunRecord(**json.loads(line)))
        return records

    def verify_integrity(self, entry: RunRecord) -> bool:
        return self.validator.compute_hash(entry.content()) == entry.record_hash

    def get_statistics(self) -> Dict:
        records = self.load_all()
        return {
            "total_runs": len(records),
            "failed_runs": sum(1 for r in records if r.exit_status != 0),
            "first_run": records[0].timestamp if records else None,
            "last_run": records[-1].timestamp if records else None,
            "integrity_verified": all(self.verify_integrity(r) for r in records),
        }
