"""
KLO - Audit Module: Ext1 Quiver
Carcaj Ext¹ simetrizado de un bloque a partir de la capa q¹ de la
matriz de descomposición graduada.

    x -- y  <=>  coeficiente de q en B[min][max] no nulo

Sólo bloques con a lo sumo un subconjunto no vacío.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from Core.block_invariants import BlockSpec, CategoryOEngine, StructuralKind
from Core.errors import UnsupportedBlock


logger = logging.getLogger(__name__)

Edge = Tuple[int, int, int]


@dataclass
class Ext1Quiver:
    """
    Grafo simple no dirigido con anotaciones pd L.

    Attributes:
        block: Bloque de origen
        vertices: Conjunto índice en orden creciente
        labels: elemento -> etiqueta (peso o palabra)
        pd_simple: elemento -> pd L
        edges: (x, y, c) con x < y y c el coeficiente q¹
    """
    block: BlockSpec
    vertices: List[int]
    labels: Dict[int, str]
    pd_simple: Dict[int, int]
    edges: List[Edge] = field(default_factory=list)
    _adjacency: Optional[Dict[int, Set[int]]] = field(default=None, repr=False)

    @property
    def adjacency(self) -> Dict[int, Set[int]]:
        if self._adjacency is None:
            adjacency: Dict[int, Set[int]] = {v: set() for v in self.vertices}
            for x, y, _ in self.edges:
                adjacency[x].add(y)
                adjacency[y].add(x)
            self._adjacency = adjacency
        return self._adjacency

    def neighbors(self, x: int) -> Set[int]:
        return self.adjacency[x]

    def has_edge(self, x: int, y: int) -> bool:
        return y in self.adjacency.get(x, ())

    def degree(self, x: int) -> int:
        return len(self.adjacency[x])

    def edge_labels(self) -> List[Tuple[str, str]]:
        """Aristas como pares de etiquetas ordenados."""
        return sorted(tuple(sorted((self.labels[x], self.labels[y])))
                      for x, y, _ in self.edges)

    def to_dict(self) -> Dict:
        return {
            "block": self.block.to_dict(),
            "vertices": [
                {"x": v, "label": self.labels[v], "pd_L": self.pd_simple[v]}
                for v in self.vertices
            ],
            "edges": [
                {"source": self.labels[x], "target": self.labels[y], "coefficient": c}
                for x, y, c in self.edges
            ],
        }

    def to_dot(self) -> str:
        lines = ["graph ext1 {", '  node [shape=box, fontname="monospace"];']
        for v in self.vertices:
            lines.append(f'  v{v} [label="{self.labels[v]}\\npd L = {self.pd_simple[v]}"];')
        for x, y, c in self.edges:
            suffix = f' [label="{c}"]' if c != 1 else ""
            lines.append(f"  v{x} -- v{y}{suffix};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def ext1_quiver(engine: CategoryOEngine, J_lambda=(), J_mu=()) -> Ext1Quiver:
    """
    Carcaj Ext¹ del bloque (J_λ, J_μ).

    Raises:
        UnsupportedBlock: Si ambos subconjuntos son no vacíos
    """
    block = engine.block(J_lambda, J_mu)
    lam, mu = block.J_lambda, block.J_mu
    if not lam.is_regular and not mu.is_regular:
        raise UnsupportedBlock(
            "Carcaj Ext¹ sólo disponible con J_λ o J_μ vacío",
            singular=sorted(lam.J), parabolic=sorted(mu.J),
        )
    if mu.is_regular:
        matrix = engine.basis(lam)
    else:
        matrix, _ = engine.parabolic(mu)

    report = engine.report(block)
    labels = {r.x: r.label for r in report.records}
    edges: List[Edge] = []
    for y in matrix.index:
        for x, poly in matrix.columns.get(y, {}).items():
            c = poly.coefficient(1)
            if c:
                edges.append((min(x, y), max(x, y), c))
    edges.sort()
    logger.debug("Carcaj %s: %d vértices, %d aristas",
                 block.label(), len(labels), len(edges))
    return Ext1Quiver(
        block=block,
        vertices=list(block.index_set),
        labels=labels,
        pd_simple=report.column(StructuralKind.SIMPLE),
        edges=edges,
    )
