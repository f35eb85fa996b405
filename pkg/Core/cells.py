"""
KLO - Core Module: Kazhdan-Lusztig Cells
Preórdenes KL, particiones en células, función a de Lusztig e
involuciones de Duflo.

Convención: e es el elemento mínimo. Para z < w con μ(z,w) != 0 se
añade la arista z -> w (z <=_L w) si L(w) no está contenido en L(z), y
w -> z si L(z) no está contenido en L(w), con L = descensos a izquierda.
Para el preorden derecho se usan descensos a derecha.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from Core.coxeter import CoxeterSystem
from Core.errors import NoDufloFound
from Core.hecke_algebra import HeckeAlgebra, max_degree
from Core.kl_engine import KLTable
from Core.tableau import rsk


logger = logging.getLogger(__name__)


class CellKind(Enum):
    LEFT = "left"
    RIGHT = "right"
    TWOSIDED = "twosided"


@dataclass
class CellData:
    """
    Particiones en células y datos asociados.

    Attributes:
        partition_left: elemento -> id de célula izquierda (mínimo índice de la célula)
        partition_right: elemento -> id de célula derecha
        partition_twosided: elemento -> id de célula bilátera
        a_values: elemento -> a(x)
        duflo: id de célula izquierda -> involución de Duflo
        a_method: "rsk" o "structure_constants"
    """
    partition_left: List[int]
    partition_right: List[int]
    partition_twosided: List[int]
    a_values: List[int]
    duflo: Dict[int, int]
    a_method: str = "rsk"
    preorder: Optional["KLPreorder"] = field(default=None, repr=False)

    def partition(self, kind: CellKind) -> List[int]:
        kind = CellKind(kind)
        if kind is CellKind.LEFT:
            return self.partition_left
        if kind is CellKind.RIGHT:
            return self.partition_right
        return self.partition_twosided

    def members(self, kind: CellKind, x: int) -> List[int]:
        """Elementos de la célula de x."""
        labels = self.partition(kind)
        return [z for z, label in enumerate(labels) if label == labels[x]]

    def left_cell(self, x: int) -> List[int]:
        return self.members(CellKind.LEFT, x)

    def right_cell(self, x: int) -> List[int]:
        return self.members(CellKind.RIGHT, x)

    def cells(self, kind: CellKind) -> Dict[int, List[int]]:
        groups: Dict[int, List[int]] = {}
        for z, label in enumerate(self.partition(kind)):
            groups.setdefault(label, []).append(z)
        return groups

    def a(self, x: int) -> int:
        return self.a_values[x]

    def leq(self, kind: CellKind, x: int, y: int) -> bool:
        """x <=_kind y."""
        return self.preorder.leq(kind, x, y)


class KLPreorder:
    """
    Grafos dirigidos de los preórdenes KL y consultas de alcanzabilidad.
    """

    def __init__(self, system: CoxeterSystem, kl: KLTable):
        self.system = system
        self.graphs = {
            CellKind.LEFT: self._graph(kl, system.left_descent_mask),
            CellKind.RIGHT: self._graph(kl, system.right_descent_mask),
        }
        union = self.graphs[CellKind.LEFT] + self.graphs[CellKind.RIGHT]
        self.graphs[CellKind.TWOSIDED] = (union > 0).astype(np.int8).tocsr()
        self._reach: Dict[CellKind, Dict[int, np.ndarray]] = {k: {} for k in CellKind}

    def _graph(self, kl: KLTable, masks: np.ndarray) -> csr_matrix:
        sources: List[int] = []
        targets: List[int] = []
        for z, w, _ in kl.mu_pairs():
            mz, mw = int(masks[z]), int(masks[w])
            if mw & ~mz:
                sources.append(z)
                targets.append(w)
            if mz & ~mw:
                sources.append(w)
                targets.append(z)
        order = self.system.order
        data = np.ones(len(sources), dtype=np.int8)
        return csr_matrix((data, (sources, targets)), shape=(order, order))

    def partition(self, kind: CellKind) -> List[int]:
        """Componentes fuertemente conexas, etiquetadas por su mínimo índice."""
        _, labels = connected_components(self.graphs[CellKind(kind)], directed=True, connection="strong")
        minimum: Dict[int, int] = {}
        for z, label in enumerate(labels):
            minimum.setdefault(int(label), z)
        return [minimum[int(label)] for label in labels]

    def reachable(self, kind: CellKind, x: int) -> np.ndarray:
        kind = CellKind(kind)
        if x not in self._reach[kind]:
            nodes = breadth_first_order(self.graphs[kind], x, directed=True,
                                        return_predecessors=False)
            marks = np.zeros(self.system.order, dtype=bool)
            marks[nodes] = True
            self._reach[kind][x] = marks
        return self._reach[kind][x]

    def leq(self, kind: CellKind, x: int, y: int) -> bool:
        return bool(self.reachable(kind, x)[y])


def cell_partition(system: CoxeterSystem, kl: KLTable, kind: CellKind) -> List[int]:
    return KLPreorder(system, kl).partition(kind)


def a_values_rsk(system: CoxeterSystem) -> List[int]:
    """a(x) = Σ (i-1)·λ_i sobre la forma RSK de x (sólo tipo A)."""
    return [rsk(system.one_line(x)).insertion.shape_statistic() for x in range(system.order)]


def a_values_structure_constants(system: CoxeterSystem, algebra: HeckeAlgebra,
                                 twosided: List[int]) -> List[int]:
    """a(z) = max deg_v h_{x,y,z} con x, y, z en la célula bilátera de z."""
    groups: Dict[int, List[int]] = {}
    for z, label in enumerate(twosided):
        groups.setdefault(label, []).append(z)
    values = [0] * system.order
    for members in groups.values():
        inside = set(members)
        best = 0
        for x in members:
            for y in members:
                constants = algebra.structure_constants(x, y)
                best = max(best, max_degree(c for z, c in constants.items() if z in inside))
        for z in members:
            values[z] = best
    return values


def duflo_involution(system: CoxeterSystem, kl: KLTable, members: List[int],
                     a_values: List[int]) -> int:
    """Único d en la célula con a(d) = l(d) - 2·deg P_{e,d}."""
    candidates = [
        d for d in members
        if a_values[d] == int(system.length[d]) - 2 * kl.P(0, d).degree
    ]
    if len(candidates) != 1 or system.inv(candidates[0]) != candidates[0]:
        raise NoDufloFound(
            f"Célula izquierda sin involución de Duflo única: candidatos {candidates}",
            cell=members, candidates=candidates,
        )
    return candidates[0]


def compute_cells(system: CoxeterSystem, kl: KLTable,
                  algebra: Optional[HeckeAlgebra] = None,
                  a_method: str = "auto") -> CellData:
    """
    Calcula particiones, función a e involuciones de Duflo.

    Args:
        system: Sistema de Coxeter
        kl: Tabla KL completa
        algebra: Álgebra de Hecke (necesaria para constantes de estructura)
        a_method: "rsk", "structure_constants" o "auto" (RSK en tipo A)
    """
    preorder = KLPreorder(system, kl)
    left = preorder.partition(CellKind.LEFT)
    right = preorder.partition(CellKind.RIGHT)
    twosided = preorder.partition(CellKind.TWOSIDED)

    if a_method == "auto":
        a_method = "rsk" if system.cartan_type == "A" else "structure_constants"
    if a_method == "rsk":
        a_values = a_values_rsk(system)
    else:
        algebra = algebra or HeckeAlgebra(system, kl)
        a_values = a_values_structure_constants(system, algebra, twosided)

    groups: Dict[int, List[int]] = {}
    for z, label in enumerate(left):
        groups.setdefault(label, []).append(z)
    duflo = {label: duflo_involution(system, kl, members, a_values)
             for label, members in groups.items()}
    logger.debug("%s: %d células izquierdas, %d biláteras",
                 system.name, len(groups), len(set(twosided)))
    return CellData(
        partition_left=left,
        partition_right=right,
        partition_twosided=twosided,
        a_values=a_values,
        duflo=duflo,
        a_method=a_method,
        preorder=preorder,
    )
