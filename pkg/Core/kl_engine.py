"""
KLO - Core Module: Kazhdan-Lusztig Engine
Polinomios de Kazhdan-Lusztig ordinarios P_{x,y} por recursión de descensos.

Recursión (s·y < y, v = s·y, c = 1 si s·x < x y 0 en otro caso):

    P_{x,y} = q^(1-c) P_{sx,v} + q^c P_{x,v}
              - Σ_{z < v, s·z < z} μ(z,v) q^((l(y)-l(z))/2) P_{x,z}

Las filas se calculan por estratos de longitud de y; dentro de un estrato
las filas son independientes y pueden repartirse entre procesos.
"""

import logging
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from rich.progress import Progress

from Core.coxeter import CoxeterSystem
from Core.polynomials import PolyQ


logger = logging.getLogger(__name__)

Row = Dict[int, PolyQ]
MuList = List[Tuple[int, int]]


class KLTable:
    """
    Tabla completa de polinomios KL de un sistema.

    rows[y] guarda sólo las entradas x < y con P_{x,y} != 1; las demás
    entradas comparables valen 1 implícitamente.
    """

    def __init__(self, system: CoxeterSystem, rows: List[Row]):
        self.system = system
        self.rows = rows
        self._mu_down: Dict[int, MuList] = {}
        self._mu_pairs: Optional[List[Tuple[int, int, int]]] = None

    def P(self, x: int, y: int) -> PolyQ:
        return _lookup(self.system, self.rows, x, y)

    def mu(self, x: int, y: int) -> int:
        """Coeficiente μ del par comparable (en cualquier orden)."""
        if x == y:
            return 0
        low, high = (x, y) if self.system.length[x] < self.system.length[y] else (y, x)
        gap = int(self.system.length[high] - self.system.length[low])
        if gap % 2 == 0 or not self.system.bruhat_leq(low, high):
            return 0
        return self.P(low, high).coefficient((gap - 1) // 2)

    def mu_down(self, w: int) -> MuList:
        """Pares (z, μ(z,w)) con z < w y μ != 0."""
        if w not in self._mu_down:
            self._mu_down[w] = _mu_down(self.system, self.rows, w)
        return self._mu_down[w]

    def mu_pairs(self) -> List[Tuple[int, int, int]]:
        """Todas las ternas (z, w, μ) con z < w y μ(z,w) != 0."""
        if self._mu_pairs is None:
            self._mu_pairs = [
                (z, w, mu)
                for w in range(self.system.order)
                for z, mu in self.mu_down(w)
            ]
        return self._mu_pairs

    def nontrivial_count(self) -> int:
        return sum(len(row) for row in self.rows)

    def to_payload(self) -> Dict[str, Dict[str, List[int]]]:
        """Filas serializables: {y: {x: [coeficientes]}}."""
        return {
            str(y): {str(x): poly.to_list() for x, poly in sorted(row.items())}
            for y, row in enumerate(self.rows) if row
        }

    @classmethod
    def from_payload(cls, system: CoxeterSystem, payload: Dict[str, Dict[str, List[int]]]) -> "KLTable":
        rows: List[Row] = [dict() for _ in range(system.order)]
        for y, row in payload.items():
            rows[int(y)] = {int(x): PolyQ(coeffs) for x, coeffs in row.items()}
        return cls(system, rows)


def _lookup(system: CoxeterSystem, rows: Sequence[Row], x: int, y: int) -> PolyQ:
    if x == y:
        return PolyQ.ONE
    if not system.bruhat_leq(x, y):
        return PolyQ.ZERO
    return rows[y].get(x, PolyQ.ONE)


def _mu_down(system: CoxeterSystem, rows: Sequence[Row], w: int) -> MuList:
    lw = int(system.length[w])
    lower = system.lower_ideal(w)
    result: MuList = [(int(z), 1) for z in np.flatnonzero(lower & (system.length == lw - 1))]
    for z, poly in rows[w].items():
        gap = lw - int(system.length[z])
        if gap > 1 and gap % 2 == 1:
            coeff = poly.coefficient((gap - 1) // 2)
            if coeff:
                result.append((z, coeff))
    return sorted(result)


def _compute_row(system: CoxeterSystem,
                 rows: Sequence[Row],
                 mu_cache: Dict[int, MuList],
                 y: int) -> Row:
    s = system.left_descents(y)[0]
    v = system.lmul(s, y)
    ly = int(system.length[y])
    if v not in mu_cache:
        mu_cache[v] = _mu_down(system, rows, v)
    corrections = [(z, mu) for z, mu in mu_cache[v] if system.has_left_descent(z, s)]

    row: Row = {}
    for x in system.bruhat_lower(y):
        x = int(x)
        if x == y:
            continue
        sx = system.lmul(s, x)
        c = 1 if system.has_left_descent(x, s) else 0
        poly = (_lookup(system, rows, sx, v).shift(1 - c)
                + _lookup(system, rows, x, v).shift(c))
        for z, mu in corrections:
            if system.bruhat_leq(x, z):
                shift = (ly - int(system.length[z])) // 2
                poly = poly - _lookup(system, rows, x, z).shift(shift) * mu
        if not poly.is_one():
            row[x] = poly
    return row


# Estado heredado por los procesos hijos (fork) en el modo paralelo.
_WORKER_STATE: Dict[str, object] = {}


def _row_chunk(ys: List[int]) -> List[Tuple[int, Row]]:
    system = _WORKER_STATE["system"]
    rows = _WORKER_STATE["rows"]
    mu_cache: Dict[int, MuList] = {}
    return [(y, _compute_row(system, rows, mu_cache, y)) for y in ys]


class KLEngine:
    """
    Motor de cálculo de tablas KL.

    Attributes:
        jobs: Número de procesos por estrato (1 = secuencial)
        show_progress: Mostrar barra de progreso rich por estratos
    """

    CHUNKS_PER_JOB = 4

    def __init__(self, jobs: int = 1, show_progress: bool = False):
        self.jobs = max(1, jobs)
        self.show_progress = show_progress

    def strata(self, system: CoxeterSystem) -> List[List[int]]:
        top = int(system.length[system.w0])
        return [
            [int(y) for y in np.flatnonzero(system.length == length)]
            for length in range(top + 1)
        ]

    def compute(self, system: CoxeterSystem) -> KLTable:
        rows: List[Row] = [dict() for _ in range(system.order)]
        strata = self.strata(system)
        parallel = self.jobs > 1 and "fork" in multiprocessing.get_all_start_methods()
        if self.jobs > 1 and not parallel:
            logger.warning("Sin soporte fork: cálculo KL secuencial")

        if self.show_progress:
            with Progress(transient=True) as progress:
                task = progress.add_task(f"KL {system.name}", total=system.order)
                for stratum in strata:
                    self._run_stratum(system, rows, stratum, parallel)
                    progress.advance(task, len(stratum))
        else:
            for stratum in strata:
                self._run_stratum(system, rows, stratum, parallel)

        table = KLTable(system, rows)
        logger.debug("Tabla KL %s: %d entradas no triviales", system.name, table.nontrivial_count())
        return table

    def _run_stratum(self, system: CoxeterSystem, rows: List[Row],
                     stratum: List[int], parallel: bool) -> None:
        if not parallel or len(stratum) < 2 * self.jobs:
            mu_cache: Dict[int, MuList] = {}
            for y in stratum:
                if y != 0:
                    rows[y] = _compute_row(system, rows, mu_cache, y)
            return

        size = max(1, len(stratum) // (self.jobs * self.CHUNKS_PER_JOB))
        chunks = [stratum[i:i + size] for i in range(0, len(stratum), size)]
        _WORKER_STATE["system"] = system
        _WORKER_STATE["rows"] = rows
        try:
            context = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(max_workers=self.jobs, mp_context=context) as pool:
                for results in pool.map(_row_chunk, chunks):
                    for y, row in results:
                        rows[y] = row
        finally:
            _WORKER_STATE.clear()


def kl_table(system: CoxeterSystem, jobs: int = 1, show_progress: bool = False) -> KLTable:
    """Calcula la tabla KL completa de `system`."""
    return KLEngine(jobs=jobs, show_progress=show_progress).compute(system)


def mu_coefficient(table: KLTable, x: int, y: int) -> int:
    return table.mu(x, y)
