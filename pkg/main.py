"""
KLO - Command Line Interface
Combinatoria de Kazhdan-Lusztig y dimensiones homológicas de bloques
O^μ_λ desde la terminal.

Códigos de salida: 0 correcto, 1 error estructurado (o violaciones en
verify sin --allow-violations), 2 error de uso.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

# --- CONFIGURACIÓN DE RUTAS ---
BASE_DIR = Path(__file__).resolve().parent
if str(BASE_DIR) not in sys.path:
    sys.path.insert(0, str(BASE_DIR))

from rich.console import Console

from Audit.bounds_monitor import BoundsMonitor
from Audit.ext_quiver import ext1_quiver
from Audit.log_capture import RunLog
from Audit.monotonicity import MonotonicityAnalyzer, survey
from Audit.report_generator import (FORMATS, Document, ReportGenerator, document_for_monotonicity,
                                    document_for_quiver, document_for_report, document_from_rows)
from Audit.segment_explorer import COMPONENTS, MODES, SegmentExplorer
from Core.block_invariants import CategoryOEngine
from Core.cells import CellKind, compute_cells
from Core.config import Settings, load_settings
from Core.coxeter import SUPPORTED_TYPES, CoxeterSystem, build_system
from Core.errors import KLOError
from Sovereignty.kl_cache import KLCache


console = Console(stderr=True)
logger = logging.getLogger("klo")

Result = Tuple[Document, int]


class Session:
    """
    Datos calculados para un grupo: sistema, tabla KL, células y evaluador.

    La tabla KL se lee de la caché o se calcula al primer acceso.
    """

    def __init__(self, settings: Settings, cartan_type: str, rank: int,
                 show_progress: bool = False):
        self.settings = settings
        self.system: CoxeterSystem = build_system(cartan_type, rank, settings.max_order)
        self.show_progress = show_progress
        self._kl = None
        self._cells = None
        self._engine = None

    @property
    def kl(self):
        if self._kl is None:
            cache = KLCache(self.settings.cache_dir)
            self._kl = cache.get_or_compute(self.system, jobs=self.settings.jobs,
                                            show_progress=self.show_progress)
        return self._kl

    @property
    def cells(self):
        if self._cells is None:
            self._cells = compute_cells(self.system, self.kl)
        return self._cells

    @property
    def engine(self) -> CategoryOEngine:
        if self._engine is None:
            self._engine = CategoryOEngine(self.system, self.kl, self.cells)
        return self._engine


# ============================================================================
# SUBCOMANDOS
# ============================================================================

def cmd_group(session: Session, args) -> Result:
    sys_ = session.system
    payload = sys_.summary()
    rows = []
    if args.elements:
        rows = [
            {"x": x, "word": sys_.word_label(x), "length": int(sys_.length[x]),
             "inverse": sys_.word_label(sys_.inv(x))}
            for x in range(sys_.order)
        ]
        payload["elements"] = rows
    if args.element:
        x = sys_.parse_element(args.element)
        payload["element"] = sys_.element_calculus(x).to_dict()
    if args.leq:
        x, y = (sys_.parse_element(token) for token in args.leq)
        payload["bruhat_leq"] = {"x": sys_.word_label(x), "y": sys_.word_label(y),
                                 "holds": sys_.bruhat_leq(x, y)}
    if not rows:
        rows = [{"key": k, "value": v} for k, v in payload.items() if not isinstance(v, (dict, list))]
    return document_from_rows(f"Grupo {sys_.name}", payload, rows), 0


def cmd_kl(session: Session, args) -> Result:
    sys_, kl = session.system, session.kl
    rows = []
    for y, row in enumerate(kl.rows):
        for x, poly in sorted(row.items()):
            rows.append({"x": sys_.word_label(x), "y": sys_.word_label(y),
                         "P": str(poly), "mu": kl.mu(x, y)})
    payload = {"group": sys_.summary(), "nontrivial": kl.nontrivial_count(),
               "rows": kl.to_payload(),
               "mu": [[sys_.word_label(z), sys_.word_label(w), m] for z, w, m in kl.mu_pairs()]}
    return document_from_rows(f"Polinomios KL {sys_.name}", payload, rows,
                              ["x", "y", "P", "mu"]), 0


def _matrix_rows(session: Session, J, index: List[int], entry: Callable) -> Tuple[List[Dict], List[str]]:
    label = lambda z: session.engine.weight_label(z, J) or session.system.word_label(z)
    columns = ["x"] + [label(y) for y in index]
    rows = []
    for x in index:
        row = {"x": label(x)}
        for y in index:
            poly = entry(x, y)
            row[label(y)] = "" if poly.is_zero() else str(poly)
        rows.append(row)
    return rows, columns


def cmd_basis(session: Session, args) -> Result:
    eng = session.engine
    J = session.system.parabolic(args.singular)
    basis = eng.basis(J)
    rows, columns = _matrix_rows(session, J, basis.index, basis.entry)
    payload = {"J": sorted(J.J), "entries": basis.to_nested()}
    return document_from_rows(f"Base canónica J={J.label()}", payload, rows, columns), 0


def cmd_klv(session: Session, args) -> Result:
    eng = session.engine
    J = session.system.parabolic(args.singular)
    klv = eng.klv(J)
    rows, columns = _matrix_rows(session, J, klv.index, klv.p)
    payload = {
        "J": sorted(J.J),
        "p": {str(x): {str(y): p.to_list() for y, p in sorted(klv.row(x).items())}
              for x in klv.index},
        "d": {str(x): klv.d(x) for x in klv.index},
    }
    return document_from_rows(f"Polinomios KLV J={J.label()}", payload, rows, columns), 0


def cmd_cells(session: Session, args) -> Result:
    sys_, cells = session.system, session.cells
    rows = [
        {"x": sys_.word_label(x), "left": sys_.word_label(cells.partition_left[x]),
         "right": sys_.word_label(cells.partition_right[x]),
         "twosided": sys_.word_label(cells.partition_twosided[x]), "a": cells.a(x)}
        for x in range(sys_.order)
    ]
    payload = {
        "group": sys_.summary(),
        "a_method": cells.a_method,
        "cells": {
            kind.value: [[sys_.word_label(z) for z in members]
                         for members in cells.cells(kind).values()]
            for kind in CellKind
        },
        "a": {sys_.word_label(x): cells.a(x) for x in range(sys_.order)},
        "duflo": {sys_.word_label(label): sys_.word_label(d) for label, d in cells.duflo.items()},
    }
    return document_from_rows(f"Células {sys_.name}", payload, rows), 0


def cmd_block(session: Session, args) -> Result:
    eng = session.engine
    block = eng.block(args.singular, args.parabolic)
    report = eng.report(block)
    mono = None
    if args.format in ("markdown", "html"):
        mono = MonotonicityAnalyzer(eng).report(block)
    return document_for_report(report, mono), 0


def cmd_monotone(session: Session, args) -> Result:
    eng = session.engine
    analyzer = MonotonicityAnalyzer(eng)
    block = eng.block(args.singular, args.parabolic)
    report = analyzer.report(block)
    doc = document_for_monotonicity(report)
    witness = analyzer.witness(block)
    doc.payload["witness"] = None if witness is None else witness.to_dict()
    doc.payload["implications"] = analyzer.implication_checks(block).to_dict()
    return doc, 0


def cmd_quiver(session: Session, args) -> Result:
    eng = session.engine
    block = eng.block(args.singular, args.parabolic)
    quiver = ext1_quiver(eng, block.J_lambda, block.J_mu)
    doc = document_for_quiver(quiver)
    if args.segments:
        explorer = SegmentExplorer(eng, block, mode=args.mode,
                                   cap=session.settings.segment_cap, quiver=quiver)
        doc.payload["saturated_segments"] = [s.to_dict() for s in explorer.saturated_segments()]
        doc.payload["guichardet"] = explorer.guichardet_report().to_dict()
    return doc, 0


def cmd_verify(session: Session, args) -> Result:
    eng = session.engine
    block = eng.block(args.singular, args.parabolic)
    collector = BoundsMonitor(eng).verify(block)
    rows = [{"check": name, "evaluated": c["evaluated"], "failed": c["failed"]}
            for name, c in sorted(collector.counts.items())]
    doc = document_from_rows(f"Verificación {block.label()}", collector.to_dict(), rows)
    status = 0 if collector.ok or args.allow_violations else 1
    if not collector.ok:
        console.print(f"[red]{len(collector.violations)} violaciones en {block.label()}[/red]")
        path = collector.save(session.settings.run_log_dir)
        console.print(f"Violaciones registradas en {path}")
    return doc, status


def cmd_survey(session: Session, args) -> Result:
    rows = []
    for row in survey(session.engine):
        data = row.to_dict()
        data["singular"] = ",".join(map(str, row.singular)) or "-"
        data["parabolic"] = ",".join(map(str, row.parabolic)) or "-"
        rows.append(data)
    payload = {"group": session.system.summary(), "blocks": [r.copy() for r in rows]}
    return document_from_rows(f"Bloques de {session.system.name}", payload, rows), 0


COMMANDS: Dict[str, Callable[[Session, argparse.Namespace], Result]] = {
    "group": cmd_group,
    "kl": cmd_kl,
    "basis": cmd_basis,
    "klv": cmd_klv,
    "cells": cmd_cells,
    "block": cmd_block,
    "monotone": cmd_monotone,
    "quiver": cmd_quiver,
    "verify": cmd_verify,
    "survey": cmd_survey,
}


# ============================================================================
# ARGUMENTOS
# ============================================================================

def subset_arg(text: str) -> List[int]:
    """"1,3" -> [1, 3]; cadena vacía o "-" -> []."""
    text = text.strip()
    if text in ("", "-"):
        return []
    try:
        return sorted({int(part) for part in text.split(",") if part.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"Lista de reflejos inválida: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", dest="cartan_type", required=True, choices=SUPPORTED_TYPES,
                        help="Tipo de Cartan")
    common.add_argument("--rank", type=int, required=True, help="Rango")
    common.add_argument("--format", default="json", choices=FORMATS, help="Formato de salida")
    common.add_argument("--cache-dir", default=None, help="Directorio de la caché KL")
    common.add_argument("--max-order", type=int, default=None, help="Cota de |W|")
    common.add_argument("--jobs", type=int, default=None,
                        help="Procesos para construir la tabla KL; verify y los informes son secuenciales")
    common.add_argument("--progress", action="store_true", help="Barra de progreso en stderr")

    block_args = argparse.ArgumentParser(add_help=False)
    block_args.add_argument("--singular", type=subset_arg, default=[], help="J_λ, p.ej. 1,3")
    block_args.add_argument("--parabolic", type=subset_arg, default=[], help="J_μ, p.ej. 2")

    parser = argparse.ArgumentParser(
        prog="klo", description="Kazhdan-Lusztig y dimensiones homológicas en la categoría O.")
    sub = parser.add_subparsers(dest="command", required=True)

    group = sub.add_parser("group", parents=[common], help="Resumen del grupo y consultas de Bruhat")
    group.add_argument("--elements", action="store_true", help="Listar todos los elementos")
    group.add_argument("--element", default=None, help="Datos de un elemento (p.ej. s1s2)")
    group.add_argument("--leq", nargs=2, metavar=("X", "Y"), default=None, help="¿X <= Y en Bruhat?")

    sub.add_parser("kl", parents=[common], help="Polinomios KL y coeficientes μ")
    sub.add_parser("basis", parents=[common, block_args], help="Matriz B de un bloque singular")
    sub.add_parser("klv", parents=[common, block_args], help="Polinomios KLV (inversa de B)")
    sub.add_parser("cells", parents=[common], help="Células, función a e involuciones de Duflo")
    sub.add_parser("block", parents=[common, block_args], help="Informe pd/gl del bloque")
    sub.add_parser("monotone", parents=[common, block_args], help="Propiedades de monotonía")

    quiver = sub.add_parser("quiver", parents=[common, block_args], help="Carcaj Ext¹")
    quiver.add_argument("--segments", action="store_true",
                        help="Enumerar segmentos saturados iniciales")
    quiver.add_argument("--mode", default=COMPONENTS, choices=MODES, help="Modo de saturación")

    verify = sub.add_parser("verify", parents=[common, block_args], help="Batería de propiedades")
    verify.add_argument("--allow-violations", action="store_true",
                        help="Salir con 0 aunque haya violaciones")

    sub.add_parser("survey", parents=[common], help="Todos los pares (J_λ, J_μ)")
    return parser


# ============================================================================
# EJECUCIÓN
# ============================================================================

def _block_descriptor(args) -> Dict:
    descriptor = {"type": args.cartan_type, "rank": args.rank}
    if hasattr(args, "singular"):
        descriptor["singular"] = args.singular
        descriptor["parabolic"] = args.parabolic
    return descriptor


def run(argv: Optional[List[str]] = None) -> int:
    """Ejecuta la CLI; devuelve el código de salida."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    settings = load_settings().with_overrides(
        cache_dir=args.cache_dir, max_order=args.max_order, jobs=args.jobs)
    generator = ReportGenerator()
    output: Optional[str] = None
    try:
        session = Session(settings, args.cartan_type, args.rank,
                          show_progress=args.progress and console.is_terminal)
        doc, status = COMMANDS[args.command](session, args)
        output = generator.render(doc, args.format)
    except KLOError as exc:
        console.print(f"[red]{exc.code}:[/red] {exc}")
        output = json.dumps(exc.to_dict(), ensure_ascii=False, sort_keys=True) + "\n"
        status = 1
    except ValueError as exc:
        console.print(f"[red]Error de uso:[/red] {exc}")
        status = 2

    if output is not None:
        sys.stdout.write(output)
    try:
        RunLog(str(settings.run_log_dir)).record(
            command=args.command, block=_block_descriptor(args), fmt=args.format,
            exit_status=status, output=output)
    except OSError as exc:
        logger.warning("No se pudo escribir el registro de ejecución: %s", exc)
    return status


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
