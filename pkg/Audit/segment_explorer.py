"""
KLO - Audit Module: Segment Explorer
Segmentos iniciales y saturados de un bloque sobre el carcaj Ext¹ y los
valores pd L.

    Inicial:  L ∈ I, pd L' = pd L - 1, Ext¹(L, L') != 0  =>  L' ∈ I
    Saturado: inicial y cerrado por niveles de pd

Modos de saturación:
    components  I ∩ nivel es unión de componentes conexas del carcaj
                restringido al nivel
    levels      I ∩ nivel es vacío o el nivel completo
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from Audit.ext_quiver import Ext1Quiver, ext1_quiver
from Audit.monotonicity import comparable_pairs, monotonicity_report
from Core.block_invariants import BlockSpec, CategoryOEngine
from Core.config import DEFAULT_SEGMENT_CAP
from Core.errors import SegmentExplosion


logger = logging.getLogger(__name__)

COMPONENTS = "components"
LEVELS = "levels"
MODES = (COMPONENTS, LEVELS)


@dataclass
class Segment:
    """
    Subconjunto del conjunto índice con sus banderas.

    Attributes:
        members: Elementos en orden creciente
        labels: Etiquetas de los elementos
        is_initial: Cerrado por la regla inicial
        is_saturated: Inicial y cerrado por niveles
    """
    members: List[int]
    labels: List[str]
    is_initial: bool
    is_saturated: bool

    def to_dict(self) -> Dict:
        return {
            "members": self.labels,
            "initial": self.is_initial,
            "saturated": self.is_saturated,
        }


@dataclass
class GuichardetReport:
    """
    Hipótesis combinatorias sobre coberturas y segmentos saturados.

    Attributes:
        covers: Número de coberturas de Bruhat en el conjunto índice
        missing_edges: Coberturas sin arista Ext¹
        large_drops: Coberturas con |Δ pd L| > 1
        segments: Número de segmentos saturados iniciales enumerados
        non_ideal_segments: Segmentos saturados que no son ideales de pesos
        simple_monotone: Valor de S_0 en el bloque
    """
    covers: int
    missing_edges: List[Tuple[str, str]] = field(default_factory=list)
    large_drops: List[Tuple[str, str]] = field(default_factory=list)
    segments: int = 0
    non_ideal_segments: List[List[str]] = field(default_factory=list)
    simple_monotone: bool = False

    @property
    def cover_hypothesis(self) -> bool:
        return not self.missing_edges and not self.large_drops

    @property
    def ideal_hypothesis(self) -> bool:
        """S_0 => todo segmento saturado inicial es un ideal de pesos."""
        return (not self.simple_monotone) or not self.non_ideal_segments

    def to_dict(self) -> Dict:
        return {
            "covers": self.covers,
            "missing_edges": [list(p) for p in self.missing_edges],
            "large_drops": [list(p) for p in self.large_drops],
            "cover_hypothesis": self.cover_hypothesis,
            "saturated_segments": self.segments,
            "non_ideal_segments": self.non_ideal_segments,
            "simple_monotone": self.simple_monotone,
            "ideal_hypothesis": self.ideal_hypothesis,
        }


class SegmentExplorer:
    """
    Clausuras y enumeración de segmentos sobre un carcaj Ext¹.

    Saturar admite dos lecturas. En "components" (por defecto) cada nivel de
    pd L entra por componentes conexas del carcaj restringido a ese nivel.
    En "levels" un segmento que toca un nivel debe contenerlo entero.

    Attributes:
        engine: Evaluador de bloques
        quiver: Carcaj Ext¹ del bloque
        mode: "components" o "levels"
        cap: Máximo de segmentos enumerados
    """

    def __init__(self, engine: CategoryOEngine, block: BlockSpec,
                 mode: str = COMPONENTS, cap: int = DEFAULT_SEGMENT_CAP,
                 quiver: Optional[Ext1Quiver] = None):
        if mode not in MODES:
            raise ValueError(f"Modo de saturación desconocido: {mode}")
        self.engine = engine
        self.block = block
        self.mode = mode
        self.cap = cap
        self.quiver = quiver or ext1_quiver(engine, block.J_lambda, block.J_mu)
        self.pd = self.quiver.pd_simple
        self.units = self._units()
        self._unit_of = {x: i for i, unit in enumerate(self.units) for x in unit}

    # -- estructura -----------------------------------------------------------

    def _lower_neighbors(self, x: int) -> Set[int]:
        return {y for y in self.quiver.neighbors(x) if self.pd[y] == self.pd[x] - 1}

    def _levels(self) -> Dict[int, List[int]]:
        levels: Dict[int, List[int]] = {}
        for x in self.quiver.vertices:
            levels.setdefault(self.pd[x], []).append(x)
        return levels

    def _units(self) -> List[Tuple[int, ...]]:
        """Bloques mínimos de saturación, por nivel ascendente."""
        units: List[Tuple[int, ...]] = []
        for level, members in sorted(self._levels().items()):
            if self.mode == LEVELS:
                units.append(tuple(members))
                continue
            position = {x: i for i, x in enumerate(members)}
            rows, cols = [], []
            for x in members:
                for y in self.quiver.neighbors(x):
                    if y in position:
                        rows.append(position[x])
                        cols.append(position[y])
            graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)),
                               shape=(len(members), len(members)))
            _, labels = connected_components(graph, directed=False)
            groups: Dict[int, List[int]] = {}
            for x, label in zip(members, labels):
                groups.setdefault(int(label), []).append(x)
            units.extend(tuple(g) for g in sorted(groups.values()))
        return units

    # -- banderas -------------------------------------------------------------

    def is_initial(self, members: Iterable[int]) -> bool:
        members = set(members)
        return all(self._lower_neighbors(x) <= members for x in members)

    def is_level_closed(self, members: Iterable[int]) -> bool:
        members = set(members)
        return all(set(self.units[self._unit_of[x]]) <= members for x in members)

    def segment(self, members: Iterable[int]) -> Segment:
        members = sorted(set(members))
        initial = self.is_initial(members)
        return Segment(
            members=members,
            labels=[self.quiver.labels[x] for x in members],
            is_initial=initial,
            is_saturated=initial and self.is_level_closed(members),
        )

    # -- clausuras ------------------------------------------------------------

    def closure(self, seed: Iterable[int]) -> Segment:
        """Menor segmento inicial que contiene a la semilla."""
        members = set(seed)
        pending = list(members)
        while pending:
            x = pending.pop()
            for y in self._lower_neighbors(x):
                if y not in members:
                    members.add(y)
                    pending.append(y)
        return self.segment(members)

    def saturated_closure(self, seed: Iterable[int]) -> Segment:
        """Menor segmento saturado inicial que contiene a la semilla."""
        members = set(seed)
        while True:
            grown = set(self.closure(members).members)
            for x in list(grown):
                grown.update(self.units[self._unit_of[x]])
            if grown == members:
                return self.segment(members)
            members = grown

    # -- enumeración ----------------------------------------------------------

    def _requirements(self) -> List[Set[int]]:
        needs: List[Set[int]] = []
        for unit in self.units:
            below = set()
            for x in unit:
                below.update(self._unit_of[y] for y in self._lower_neighbors(x))
            needs.append(below)
        return needs

    def saturated_segments(self) -> List[Segment]:
        """
        Todos los segmentos saturados iniciales (ideales del grafo de unidades).

        Raises:
            SegmentExplosion: Si se supera el máximo configurado
        """
        needs = self._requirements()
        found: List[Set[int]] = []

        def walk(i: int, chosen: Set[int]) -> None:
            if i == len(self.units):
                found.append(set(chosen))
                if len(found) > self.cap:
                    raise SegmentExplosion(
                        f"Más de {self.cap} segmentos saturados en {self.block.label()}",
                        cap=self.cap, **self.block.to_dict(),
                    )
                return
            walk(i + 1, chosen)
            if needs[i] <= chosen:
                chosen.add(i)
                walk(i + 1, chosen)
                chosen.discard(i)

        walk(0, set())
        segments = []
        for units in found:
            members = [x for i in units for x in self.units[i]]
            segments.append(self.segment(members))
        logger.debug("%d segmentos saturados en %s", len(segments), self.block.label())
        return segments

    # -- hipótesis ------------------------------------------------------------

    def covers(self) -> List[Tuple[int, int]]:
        """Coberturas y < x del orden de Bruhat restringido al conjunto índice."""
        pairs = comparable_pairs(self.engine, self.block)
        below: Dict[int, Set[int]] = {}
        for y, x in pairs:
            below.setdefault(x, set()).add(y)
        return [
            (y, x) for y, x in pairs
            if not any(y in below.get(z, ()) for z in below[x])
        ]

    def is_weight_ideal(self, members: Iterable[int]) -> bool:
        """Cerrado hacia pesos menores, es decir hacia arriba en Bruhat."""
        members = set(members)
        for y, x in comparable_pairs(self.engine, self.block):
            if y in members and x not in members:
                return False
        return True

    def guichardet_report(self) -> GuichardetReport:
        labels = self.quiver.labels
        covers = self.covers()
        report = GuichardetReport(covers=len(covers))
        for y, x in covers:
            if not self.quiver.has_edge(x, y):
                report.missing_edges.append((labels[y], labels[x]))
            if abs(self.pd[x] - self.pd[y]) > 1:
                report.large_drops.append((labels[y], labels[x]))
        segments = self.saturated_segments()
        report.segments = len(segments)
        report.non_ideal_segments = [
            s.labels for s in segments if not self.is_weight_ideal(s.members)
        ]
        report.simple_monotone = monotonicity_report(self.engine, self.block).flags["S0"]
        return report


def segment_explorer(engine: CategoryOEngine, block: BlockSpec, seed: Iterable[int] = (),
                     mode: str = COMPONENTS,
                     cap: int = DEFAULT_SEGMENT_CAP) -> Tuple[Segment, List[Segment]]:
    """Clausura inicial de la semilla y todos los segmentos saturados iniciales."""
    explorer = SegmentExplorer(engine, block, mode=mode, cap=cap)
    return explorer.closure(seed), explorer.saturated_segments()
