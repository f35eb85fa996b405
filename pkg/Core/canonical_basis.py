"""
KLO - Core Module: Canonical Bases
Matriz de descomposición graduada de bloques singulares y parabólicos,
e inversión unitriangular exacta sobre Z[q] (polinomios KLV).

Bloque singular (X_λ = representantes más largos):
    B[x][y] = q^(l(y)-l(x)) · P_{x,y}(q^-2)

Bloque parabólico (X^μ = representantes más cortos), suma de Lepowsky:
    M[x][y] = Σ_{w ∈ W_μ} (-1)^l(w) · q^l(w) · B₀[wx][y]

Polinomios KLV: p(x,y) = B^-1[y][x].
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from Core.coxeter import CoxeterSystem, ParabolicSubset
from Core.hecke_algebra import HeckeAlgebra
from Core.kl_engine import KLTable
from Core.polynomials import PolyQ


logger = logging.getLogger(__name__)

Columns = Dict[int, Dict[int, PolyQ]]


@dataclass
class GradedMatrix:
    """
    Matriz unitriangular sobre Z[q] indexada por elementos del grupo.

    Attributes:
        system: Sistema de Coxeter
        index: Índices de fila/columna en orden creciente (extensión lineal de Bruhat)
        columns: columns[y][x] = entrada (x, y) fuera de la diagonal, sólo no nulas
    """
    system: CoxeterSystem
    index: List[int]
    columns: Columns
    _rows: Optional[Columns] = field(default=None, repr=False)

    def entry(self, x: int, y: int) -> PolyQ:
        if x == y:
            return PolyQ.ONE
        return self.columns.get(y, {}).get(x, PolyQ.ZERO)

    def column(self, y: int) -> Dict[int, PolyQ]:
        """Columna y con la diagonal incluida."""
        result = dict(self.columns.get(y, {}))
        result[y] = PolyQ.ONE
        return result

    def row(self, x: int) -> Dict[int, PolyQ]:
        """Fila x con la diagonal incluida."""
        if self._rows is None:
            rows: Columns = {z: {} for z in self.index}
            for y, col in self.columns.items():
                for z, poly in col.items():
                    rows[z][y] = poly
            self._rows = rows
        result = dict(self._rows.get(x, {}))
        result[x] = PolyQ.ONE
        return result

    def q1_coefficient(self, x: int, y: int) -> int:
        low, high = (x, y) if x < y else (y, x)
        return self.entry(low, high).coefficient(1)

    def max_row_degree(self, x: int) -> int:
        return max(p.degree for p in self.row(x).values() if not p.is_zero())

    def to_nested(self) -> Dict[str, Dict[str, List[int]]]:
        return {
            str(y): {str(x): self.entry(x, y).to_list() for x in sorted(self.column(y))}
            for y in self.index
        }


@dataclass
class BMatrix(GradedMatrix):
    """Matriz de descomposición graduada del bloque singular O_λ."""
    J: Optional[ParabolicSubset] = None


@dataclass
class ParabolicMatrix(GradedMatrix):
    """Matriz de descomposición graduada del bloque parabólico O^μ_0."""
    J: Optional[ParabolicSubset] = None


class KLVTable:
    """
    Polinomios KLV p(x,y) con x >= y, obtenidos por inversión.

    Attributes:
        system: Sistema de Coxeter
        J: Subconjunto que define el bloque
        index: Conjunto índice del bloque
        rows: rows[x][y] = p(x,y) no nulo (diagonal incluida)
    """

    def __init__(self, system: CoxeterSystem, J: ParabolicSubset,
                 index: List[int], rows: Dict[int, Dict[int, PolyQ]]):
        self.system = system
        self.J = J
        self.index = index
        self.rows = rows
        self._d: Dict[int, int] = {}

    def p(self, x: int, y: int) -> PolyQ:
        return self.rows.get(x, {}).get(y, PolyQ.ZERO)

    def degree(self, x: int, y: int) -> Optional[int]:
        return self.p(x, y).degree

    def row(self, x: int) -> Dict[int, PolyQ]:
        return self.rows.get(x, {})

    def column(self, y: int) -> Dict[int, PolyQ]:
        return {x: row[y] for x, row in self.rows.items() if y in row}

    def d(self, x: int) -> int:
        """max_y deg p(x,y) sobre entradas no nulas."""
        if x not in self._d:
            self._d[x] = max(p.degree for p in self.rows[x].values())
        return self._d[x]


def invert_unitriangular(index: List[int], matrix: GradedMatrix) -> Columns:
    """
    Inversa exacta de una matriz unitriangular superior sobre Z[q].

    Devuelve columnas completas (diagonal incluida) de N = M^-1.
    """
    position = {x: i for i, x in enumerate(index)}
    inverse: Columns = {}
    for y in index:
        col: Dict[int, PolyQ] = {y: PolyQ.ONE}
        for x in reversed(index[:position[y]]):
            total = PolyQ.ZERO
            for z, m_xz in matrix.row(x).items():
                if z != x and z in col:
                    total = total + m_xz * col[z]
            if not total.is_zero():
                col[x] = -total
        inverse[y] = col
    return inverse


def identity_defects(matrix: GradedMatrix, inverse: Columns) -> List[Tuple[int, int]]:
    """Pares (x,y) donde (M·N)[x][y] != δ_{x,y}."""
    defects = []
    for y in matrix.index:
        for x in matrix.index:
            total = PolyQ.ZERO
            for z, m_xz in matrix.row(x).items():
                n_zy = inverse[y].get(z)
                if n_zy is not None:
                    total = total + m_xz * n_zy
            if total != (PolyQ.ONE if x == y else PolyQ.ZERO):
                defects.append((x, y))
    return defects


def graded_decomposition_matrix(system: CoxeterSystem, kl: KLTable,
                                J: ParabolicSubset) -> BMatrix:
    """Matriz B del bloque singular O_λ con W_λ = W_J."""
    index = system.x_lambda(J)
    columns: Columns = {}
    for y in index:
        ly = int(system.length[y])
        lower = system.lower_ideal(y)
        columns[y] = {
            x: kl.P(x, y).kl_normalized(ly - int(system.length[x]))
            for x in index if x != y and lower[x]
        }
    return BMatrix(system=system, index=index, columns=columns, J=J)


def klv_table(matrix: GradedMatrix, J: ParabolicSubset) -> KLVTable:
    """Invierte la matriz de descomposición: p(x,y) = N[y][x]."""
    inverse = invert_unitriangular(matrix.index, matrix)
    # la columna x de N contiene N[y][x] = p(x, y)
    return KLVTable(matrix.system, J, matrix.index, inverse)


def parabolic_graded_decomposition(system: CoxeterSystem, kl: KLTable,
                                   J_mu: ParabolicSubset) -> Tuple[ParabolicMatrix, KLVTable]:
    """Matriz de la suma de Lepowsky sobre X^μ y su inversa (KLV parabólicos)."""
    index = system.x_mu(J_mu)
    subgroup = system.subgroup_elements(J_mu.J)
    columns: Columns = {}
    for y in index:
        ly = int(system.length[y])
        lower = system.lower_ideal(y)
        col: Dict[int, PolyQ] = {}
        for x in index:
            if x == y or int(system.length[x]) >= ly:
                continue
            total = PolyQ.ZERO
            for w in subgroup:
                wx = system.multiply(w, x)
                if not lower[wx]:
                    continue
                lw = int(system.length[w])
                term = kl.P(wx, y).kl_normalized(ly - int(system.length[wx])).shift(lw)
                total = total + (term if lw % 2 == 0 else -term)
            if not total.is_zero():
                col[x] = total
        columns[y] = col
    matrix = ParabolicMatrix(system=system, index=index, columns=columns, J=J_mu)
    return matrix, klv_table(matrix, J_mu)


def bar_invariance_violations(algebra: HeckeAlgebra, matrix: BMatrix) -> List[int]:
    """Columnas y cuyo vector Σ_x B[x][y]·H_{x w0J}·C_{w0J} no es invariante por la barra."""
    failures = []
    for y in matrix.index:
        vector = algebra.coset_vector(matrix.J, matrix.column(y))
        if not algebra.is_bar_invariant(vector):
            failures.append(y)
    return failures
