"""
KLO - Audit Module: Report Generator
Emisión de resultados en json, csv, table, latex, dot, markdown y html.

Cada resultado se reduce a un Document (título, carga JSON, filas
tabulares y secciones opcionales); los emisores sólo ven Documents.
"""

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

import markdown
from rich.console import Console
from rich.table import Table

from Audit.ext_quiver import Ext1Quiver
from Audit.monotonicity import MonotonicityReport
from Core.block_invariants import InvariantReport, StructuralKind


logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "table", "latex", "dot", "markdown", "html")

KIND_ORDER = [
    StructuralKind.SIMPLE, StructuralKind.STANDARD, StructuralKind.COSTANDARD,
    StructuralKind.PROJECTIVE, StructuralKind.INJECTIVE, StructuralKind.TILTING,
]


@dataclass
class Document:
    """
    Resultado listo para emitir.

    Attributes:
        title: Título del documento
        payload: Estructura JSON completa
        rows: Filas tabulares (csv, table, latex, markdown)
        columns: Orden de columnas; por defecto las claves de la primera fila
        sections: Secciones markdown adicionales (título -> texto)
        dot: Texto DOT si el resultado es un grafo
        latex: Tabla LaTeX específica; si falta se usa la genérica
    """
    title: str
    payload: Any
    rows: List[Dict[str, Any]] = field(default_factory=list)
    columns: Optional[List[str]] = None
    sections: Dict[str, str] = field(default_factory=dict)
    dot: Optional[str] = None
    latex: Optional[str] = None

    def column_names(self) -> List[str]:
        if self.columns is not None:
            return self.columns
        return list(self.rows[0]) if self.rows else []


# ============================================================================
# CONSTRUCTORES DE DOCUMENTOS
# ============================================================================

def _latex_escape(text: str) -> str:
    return str(text).replace("_", r"\_").replace("&", r"\&").replace("%", r"\%")


def block_latex(report: InvariantReport) -> str:
    """Tabla a dos columnas: peso (o palabra), pd Δ y pd L."""
    records = report.records
    half = (len(records) + 1) // 2
    left, right = records[:half], records[half:]
    lines = [
        r"\begin{tabular}{c|c|c||c|c|c}",
        r"$x$ & ${\mathrm{pd}}\,\Delta$ & ${\mathrm{pd}}\,L$ & "
        r"$x$ & ${\mathrm{pd}}\,\Delta$ & ${\mathrm{pd}}\,L$ \\",
        r"\hline",
    ]
    for i, rec in enumerate(left):
        cells = [f"$({rec.label})$" if rec.weight else f"${rec.label}$",
                 str(rec.pd["Delta"]), str(rec.pd["L"])]
        if i < len(right):
            other = right[i]
            cells += [f"$({other.label})$" if other.weight else f"${other.label}$",
                      str(other.pd["Delta"]), str(other.pd["L"])]
        else:
            cells += ["", "", ""]
        lines.append(" & ".join(cells) + r" \\")
    lines.append(r"\end{tabular}")
    return "\n".join(lines) + "\n"


def document_for_report(report: InvariantReport,
                        monotonicity: Optional[MonotonicityReport] = None) -> Document:
    rows = []
    for rec in report.records:
        row: Dict[str, Any] = {"x": rec.label, "word": rec.word}
        for kind in KIND_ORDER:
            row[f"pd_{kind.value}"] = rec.pd[kind.value]
        for kind in KIND_ORDER:
            row[f"gl_{kind.value}"] = rec.gl[kind.value]
        rows.append(row)
    payload = report.to_dict()
    labels = {r.x: r.label for r in report.records}
    sets = report.sets
    sections = {
        "Dimensión global": (
            f"- **Valor:** {report.global_dimension.value}\n"
            f"- **Semisimple:** {'sí' if report.global_dimension.semisimple else 'no'}\n"
        ),
        "Conjuntos distinguidos": "".join(
            f"- **{name}:** {', '.join(labels[x] for x in members) or '∅'}\n"
            for name, members in (
                ("S", sets.S_set),
                ("Simples estándar", sets.simple_standards),
                ("Proyectivo-inyectivos", sets.projective_injectives),
                ("Tilting proyectivos", sets.projective_tiltings),
            )
        ),
    }
    if monotonicity is not None:
        payload["monotonicity"] = monotonicity.to_dict()
        flags = ", ".join(f"{k}={'✓' if v else '✗'}" for k, v in monotonicity.flags.items())
        sections["Monotonía"] = (
            f"- **Clasificación:** {monotonicity.classification}\n"
            f"- **Igualdad s/d:** {'sí' if monotonicity.sd_identity_holds else 'no'}\n"
            f"- **Propiedades:** {flags}\n"
        )
    return Document(
        title=f"Bloque {report.block.label()}",
        payload=payload,
        rows=rows,
        sections=sections,
        latex=block_latex(report),
    )


def document_for_monotonicity(report: MonotonicityReport) -> Document:
    rows = [
        {"property": name, "holds": value,
         "witnesses": "; ".join(" < ".join(w) for w in report.witnesses.get(name, []))}
        for name, value in report.flags.items()
    ]
    return Document(
        title=f"Monotonía {report.block.label()}",
        payload=report.to_dict(),
        rows=rows,
        sections={"Clasificación": f"{report.classification} "
                                   f"(igualdad s/d: {'sí' if report.sd_identity_holds else 'no'})\n"},
    )


def document_for_quiver(quiver: Ext1Quiver) -> Document:
    rows = [
        {"source": quiver.labels[x], "target": quiver.labels[y], "coefficient": c,
         "pd_source": quiver.pd_simple[x], "pd_target": quiver.pd_simple[y]}
        for x, y, c in quiver.edges
    ]
    return Document(
        title=f"Carcaj Ext¹ {quiver.block.label()}",
        payload=quiver.to_dict(),
        rows=rows,
        columns=["source", "target", "coefficient", "pd_source", "pd_target"],
        dot=quiver.to_dot(),
    )


def document_from_rows(title: str, payload: Any, rows: List[Dict[str, Any]],
                       columns: Optional[List[str]] = None) -> Document:
    return Document(title=title, payload=payload, rows=rows, columns=columns)


# ============================================================================
# EMISORES
# ============================================================================

class ReportGenerator:
    """
    Emisor de Documents en los formatos soportados.

    Attributes:
        output_dir: Directorio para save()
    """

    def __init__(self, output_dir: str = "Data/reports"):
        self.output_dir = Path(output_dir)

    def render(self, doc: Document, fmt: str) -> str:
        if fmt not in FORMATS:
            raise ValueError(f"Formato desconocido: {fmt}")
        return getattr(self, f"_emit_{fmt}")(doc)

    def _emit_json(self, doc: Document) -> str:
        return json.dumps(doc.payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def _emit_csv(self, doc: Document) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=doc.column_names(), lineterminator="\n")
        writer.writeheader()
        for row in doc.rows:
            writer.writerow(row)
        return buffer.getvalue()

    def _emit_table(self, doc: Document) -> str:
        table = Table(title=doc.title)
        columns = doc.column_names()
        for name in columns:
            table.add_column(name)
        for row in doc.rows:
            table.add_row(*(str(row.get(name, "")) for name in columns))
        console = Console(file=io.StringIO(), width=max(80, 14 * len(columns)),
                          no_color=True, highlight=False)
        console.print(table)
        return console.file.getvalue()

    def _emit_latex(self, doc: Document) -> str:
        if doc.latex is not None:
            return doc.latex
        columns = doc.column_names()
        lines = [r"\begin{tabular}{" + "|".join("c" for _ in columns) + "}",
                 " & ".join(_latex_escape(c) for c in columns) + r" \\", r"\hline"]
        for row in doc.rows:
            lines.append(" & ".join(_latex_escape(row.get(c, "")) for c in columns) + r" \\")
        lines.append(r"\end{tabular}")
        return "\n".join(lines) + "\n"

    def _emit_dot(self, doc: Document) -> str:
        if doc.dot is None:
            raise ValueError("Formato dot sólo disponible para carcajes")
        return doc.dot

    def _emit_markdown(self, doc: Document) -> str:
        stamp = datetime.utcnow().isoformat() + "Z"
        out = f"# {doc.title}\n\n**Fecha de generación:** {stamp}\n\n---\n\n"
        for heading, body in doc.sections.items():
            out += f"## {heading}\n\n{body}\n"
        columns = doc.column_names()
        if columns:
            out += "## Tabla\n\n"
            out += "| " + " | ".join(columns) + " |\n"
            out += "|" + "---|" * len(columns) + "\n"
            for row in doc.rows:
                out += "| " + " | ".join(str(row.get(c, "")) for c in columns) + " |\n"
        return out

    def _emit_html(self, doc: Document) -> str:
        body = markdown.markdown(self._emit_markdown(doc), extensions=["tables"])
        return (f"<!DOCTYPE html>\n<html>\n<head><meta charset=\"utf-8\">"
                f"<title>{doc.title}</title></head>\n<body>\n{body}\n</body>\n</html>\n")

    def save(self, doc: Document, fmt: str, filename: Optional[str] = None) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        if filename is None:
            timestamp = datetime.utcnow().strftime("%Y%m%d_%H%M%S")
            filename = f"klo_{timestamp}.{'md' if fmt == 'markdown' else fmt}"
        path = self.output_dir / filename
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.render(doc, fmt))
        logger.debug("Documento guardado en %s", path)
        return path
