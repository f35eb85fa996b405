"""
KLO - Core Module: Block Invariants
Dimensiones proyectivas y longitudes graduadas de los módulos estructurales
de un bloque O^μ_λ, a partir de las funciones s y d de bloques singulares.

Un bloque se identifica por el par (J_λ, J_μ): J_λ fija la singularidad y
J_μ la parabolicidad. El conjunto índice es X^μ_λ; si es vacío el bloque
es cero.

Fórmulas (x en X^μ_λ, a = función a de Lusztig, l = longitud):

    pd L  = s_λ(x) - 2 l(w0^μ)
    pd Δ  = d_λ(w0^μ x) - l(w0^μ)
    pd ∇  = d_λ(w0 x w0^λ) + a(w0 w0^λ) - 2 a(w0^μ)
    pd P  = 0
    pd I  = 2 a(w0 x) - 2 a(w0^μ)
    pd T  = a(w0^μ x w0^λ) - a(w0^μ)
    gl L  = 0
    gl Δ  = gl ∇ = d_μ(w0 w0^λ x^-1) - l(w0^λ)
    gl P  = gl I = s_μ(w0 x^-1) - 2 l(w0^λ)
    gl T  = 2 (s_μ(w0^λ x^-1 w0^μ) - a(w0^λ) - a(w0 w0^μ))

Dimensión global: 2 a(w0 w0^λ) - 2 a(w0^μ).
"""

import json
import logging
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

from Core.canonical_basis import (
    BMatrix,
    KLVTable,
    ParabolicMatrix,
    graded_decomposition_matrix,
    klv_table,
    parabolic_graded_decomposition,
)
from Core.cells import CellData
from Core.coxeter import CosetFlavor, CoxeterSystem, ParabolicSubset, format_weight
from Core.errors import IndexSetViolation, ZeroBlock
from Core.kl_engine import KLTable


logger = logging.getLogger(__name__)


class StructuralKind(Enum):
    """Módulos estructurales de una categoría de peso máximo."""
    SIMPLE = "L"
    STANDARD = "Delta"
    COSTANDARD = "nabla"
    PROJECTIVE = "P"
    INJECTIVE = "I"
    TILTING = "T"


@dataclass(frozen=True)
class BlockSpec:
    """
    Bloque O^μ_λ.

    Attributes:
        system: Sistema de Coxeter
        J_lambda: Subconjunto de singularidad
        J_mu: Subconjunto parabólico
        index_set: X^μ_λ en orden creciente
    """
    system: CoxeterSystem = field(repr=False, compare=False)
    J_lambda: ParabolicSubset
    J_mu: ParabolicSubset
    index_set: Tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return not self.index_set

    @property
    def is_regular(self) -> bool:
        return self.J_lambda.is_regular

    @property
    def is_principal(self) -> bool:
        return self.J_lambda.is_regular and self.J_mu.is_regular

    def label(self) -> str:
        return f"{self.system.name} λ={self.J_lambda.label()} μ={self.J_mu.label()}"

    def to_dict(self) -> Dict:
        return {
            "type": self.system.cartan_type,
            "rank": self.system.rank,
            "singular": sorted(self.J_lambda.J),
            "parabolic": sorted(self.J_mu.J),
            "size": len(self.index_set),
        }


def block_spec(system: CoxeterSystem, J_lambda: Iterable[int] = (),
               J_mu: Iterable[int] = ()) -> BlockSpec:
    """Construye el bloque (J_λ, J_μ); un índice vacío es legal (bloque cero)."""
    lam = J_lambda if isinstance(J_lambda, ParabolicSubset) else system.parabolic(J_lambda)
    mu = J_mu if isinstance(J_mu, ParabolicSubset) else system.parabolic(J_mu)
    index = system.coset_representatives(lam, mu, CosetFlavor.X_MU_LAMBDA)
    return BlockSpec(system=system, J_lambda=lam, J_mu=mu, index_set=tuple(index))


@dataclass
class SDFunctions:
    """
    Funciones s (pd de simples) y d (pd de estándar) de un bloque singular.

    Attributes:
        J: Subconjunto del bloque
        s: x -> s(x)
        d: x -> d(x); None si la fuente no la determina
        d_cell: x -> max deg p(x,y) con y en L(w0^J) (variante restringida a la célula)
        provenance: Origen de los valores ("klv", "parabolic_klv", forma cerrada)
    """
    J: ParabolicSubset
    s: Dict[int, int]
    d: Optional[Dict[int, int]]
    d_cell: Dict[int, Optional[int]] = field(default_factory=dict)
    provenance: str = "klv"

    def to_dict(self) -> Dict:
        return {
            "J": sorted(self.J.J),
            "provenance": self.provenance,
            "s": {str(x): v for x, v in sorted(self.s.items())},
            "d": None if self.d is None else {str(x): v for x, v in sorted(self.d.items())},
        }


def sd_functions(klv: KLVTable, cells: Optional[CellData] = None,
                 provenance: str = "klv") -> SDFunctions:
    """
    d(x) = max_y deg p(x,y); s(x) = max_y (d(y) + deg p(y,x)).

    Las entradas nulas no participan en los máximos.
    """
    d = {x: klv.d(x) for x in klv.index}
    s: Dict[int, int] = {}
    for x in klv.index:
        s[x] = max(d[y] + poly.degree for y, poly in klv.column(x).items())

    d_cell: Dict[int, Optional[int]] = {}
    if cells is not None:
        anchor = set(cells.left_cell(klv.J.w0J))
        for x in klv.index:
            degrees = [poly.degree for y, poly in klv.row(x).items() if y in anchor]
            d_cell[x] = max(degrees) if degrees else None
    return SDFunctions(J=klv.J, s=s, d=d, d_cell=d_cell, provenance=provenance)


@dataclass
class ElementRecord:
    """
    Invariantes de un elemento x de X^μ_λ.

    Attributes:
        x: Índice del elemento
        word: Palabra reducida shortlex
        weight: Secuencia de pesos (tipo A con singularidad), o None
        pd: StructuralKind.value -> dimensión proyectiva
        gl: StructuralKind.value -> longitud graduada
    """
    x: int
    word: str
    weight: Optional[str]
    pd: Dict[str, int]
    gl: Dict[str, int]

    @property
    def label(self) -> str:
        return self.weight or self.word

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class GlobalDimension:
    value: int
    semisimple: bool

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class DistinguishedSets:
    """
    Subconjuntos distinguidos de X^μ_λ.

    Attributes:
        S_set: X^μ_λ ∩ w0^μ R(w0^μ) w0^λ
        simple_standards: x con gl Δ(x) = 0
        projective_injectives: x en R(w0^μ w0)
        projective_tiltings: x con w0^μ x w0^λ en R(w0^μ)
    """
    S_set: List[int]
    simple_standards: List[int]
    projective_injectives: List[int]
    projective_tiltings: List[int]

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class InvariantReport:
    """
    Informe completo de un bloque.

    Attributes:
        block: Bloque evaluado
        records: Un ElementRecord por x en X^μ_λ
        global_dimension: Dimensión global y bandera de semisimplicidad
        sets: Subconjuntos distinguidos
    """
    block: BlockSpec
    records: List[ElementRecord]
    global_dimension: GlobalDimension
    sets: DistinguishedSets

    def record(self, x: int) -> ElementRecord:
        for record in self.records:
            if record.x == x:
                return record
        raise KeyError(x)

    def pd(self, kind: StructuralKind, x: int) -> int:
        return self.record(x).pd[StructuralKind(kind).value]

    def gl(self, kind: StructuralKind, x: int) -> int:
        return self.record(x).gl[StructuralKind(kind).value]

    def column(self, kind: StructuralKind, which: str = "pd") -> Dict[int, int]:
        key = StructuralKind(kind).value
        return {r.x: getattr(r, which)[key] for r in self.records}

    def to_dict(self) -> Dict:
        return {
            "block": self.block.to_dict(),
            "global_dimension": self.global_dimension.to_dict(),
            "sets": self.sets.to_dict(),
            "elements": [r.to_dict() for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


class CategoryOEngine:
    """
    Evaluador de bloques sobre tablas KL y células congeladas.

    Las matrices, tablas KLV y funciones s/d se calculan una vez por
    subconjunto J y se reutilizan entre bloques.

    Attributes:
        system: Sistema de Coxeter
        kl: Tabla KL completa
        cells: Células y función a
    """

    def __init__(self, system: CoxeterSystem, kl: KLTable, cells: CellData):
        self.system = system
        self.kl = kl
        self.cells = cells
        self._basis: Dict[frozenset, BMatrix] = {}
        self._klv: Dict[frozenset, KLVTable] = {}
        self._sd: Dict[frozenset, SDFunctions] = {}
        self._parabolic: Dict[frozenset, Tuple[ParabolicMatrix, KLVTable]] = {}
        self._reports: Dict[Tuple[frozenset, frozenset], InvariantReport] = {}

    # -- datos por subconjunto ---------------------------------------------

    def _subset(self, J) -> ParabolicSubset:
        return J if isinstance(J, ParabolicSubset) else self.system.parabolic(J)

    def basis(self, J) -> BMatrix:
        J = self._subset(J)
        if J.J not in self._basis:
            self._basis[J.J] = graded_decomposition_matrix(self.system, self.kl, J)
        return self._basis[J.J]

    def klv(self, J) -> KLVTable:
        J = self._subset(J)
        if J.J not in self._klv:
            self._klv[J.J] = klv_table(self.basis(J), J)
        return self._klv[J.J]

    def sd(self, J) -> SDFunctions:
        J = self._subset(J)
        if J.J not in self._sd:
            self._sd[J.J] = sd_functions(self.klv(J), self.cells)
        return self._sd[J.J]

    def parabolic(self, J_mu) -> Tuple[ParabolicMatrix, KLVTable]:
        J_mu = self._subset(J_mu)
        if J_mu.J not in self._parabolic:
            self._parabolic[J_mu.J] = parabolic_graded_decomposition(self.system, self.kl, J_mu)
        return self._parabolic[J_mu.J]

    def parabolic_sd(self, J_mu) -> SDFunctions:
        """s^μ y d^μ del bloque parabólico regular O^μ_0."""
        _, table = self.parabolic(J_mu)
        return sd_functions(table, provenance="parabolic_klv")

    def block(self, J_lambda=(), J_mu=()) -> BlockSpec:
        return block_spec(self.system, J_lambda, J_mu)

    # -- utilidades ---------------------------------------------------------

    def a(self, x: int) -> int:
        return self.cells.a_values[x]

    def l(self, x: int) -> int:
        return int(self.system.length[x])

    def _at(self, table: Dict[int, int], element: int, J: ParabolicSubset,
            name: str, x: int) -> int:
        if element not in table:
            raise IndexSetViolation(
                f"Argumento de {name} fuera de X_J para x={self.system.word_label(x)}",
                function=name, element=element, x=x, J=J.J,
            )
        return table[element]

    def _require_nonzero(self, block: BlockSpec) -> None:
        if block.is_zero:
            raise ZeroBlock(f"Bloque cero: {block.label()}", **block.to_dict())

    def weight_label(self, x: int, J: ParabolicSubset) -> Optional[str]:
        if self.system.cartan_type != "A" or J.is_regular:
            return None
        return format_weight(self.system.weight_sequence(x, J))

    # -- operaciones --------------------------------------------------------

    def global_dimension(self, block: BlockSpec) -> GlobalDimension:
        self._require_nonzero(block)
        sys_ = self.system
        value = (2 * self.a(sys_.multiply(sys_.w0, block.J_lambda.w0J))
                 - 2 * self.a(block.J_mu.w0J))
        return GlobalDimension(value=value, semisimple=value == 0)

    def distinguished_sets(self, block: BlockSpec,
                           records: Optional[List[ElementRecord]] = None) -> DistinguishedSets:
        self._require_nonzero(block)
        sys_ = self.system
        w0mu, w0lam = block.J_mu.w0J, block.J_lambda.w0J
        right_mu = set(self.cells.right_cell(w0mu))
        right_top = set(self.cells.right_cell(sys_.multiply(w0mu, sys_.w0)))
        tilting = [x for x in block.index_set if sys_.product(w0mu, x, w0lam) in right_mu]
        if records is None:
            records = self.report(block).records
        return DistinguishedSets(
            S_set=list(tilting),
            simple_standards=[r.x for r in records if r.gl[StructuralKind.STANDARD.value] == 0],
            projective_injectives=[x for x in block.index_set if x in right_top],
            projective_tiltings=tilting,
        )

    def report(self, block: BlockSpec) -> InvariantReport:
        """Evalúa las doce fórmulas para cada x de X^μ_λ."""
        self._require_nonzero(block)
        key = (block.J_lambda.J, block.J_mu.J)
        if key in self._reports:
            return self._reports[key]

        sys_ = self.system
        lam, mu = block.J_lambda, block.J_mu
        w0, w0lam, w0mu = sys_.w0, lam.w0J, mu.w0J
        sd_lam = self.sd(lam)
        sd_mu = self.sd(mu)
        a_top_lam = self.a(sys_.multiply(w0, w0lam))
        a_top_mu = self.a(sys_.multiply(w0, w0mu))
        a_mu = self.a(w0mu)

        records: List[ElementRecord] = []
        for x in block.index_set:
            x_inv = sys_.inv(x)
            pd = {
                StructuralKind.SIMPLE.value:
                    self._at(sd_lam.s, x, lam, "s_λ", x) - 2 * self.l(w0mu),
                StructuralKind.STANDARD.value:
                    self._at(sd_lam.d, sys_.multiply(w0mu, x), lam, "d_λ", x) - self.l(w0mu),
                StructuralKind.COSTANDARD.value:
                    self._at(sd_lam.d, sys_.product(w0, x, w0lam), lam, "d_λ", x)
                    + a_top_lam - 2 * a_mu,
                StructuralKind.PROJECTIVE.value: 0,
                StructuralKind.INJECTIVE.value: 2 * self.a(sys_.multiply(w0, x)) - 2 * a_mu,
                StructuralKind.TILTING.value: self.a(sys_.product(w0mu, x, w0lam)) - a_mu,
            }
            gl_standard = (self._at(sd_mu.d, sys_.product(w0, w0lam, x_inv), mu, "d_μ", x)
                           - self.l(w0lam))
            gl_projective = (self._at(sd_mu.s, sys_.multiply(w0, x_inv), mu, "s_μ", x)
                             - 2 * self.l(w0lam))
            gl_tilting = 2 * (self._at(sd_mu.s, sys_.product(w0lam, x_inv, w0mu), mu, "s_μ", x)
                              - self.a(w0lam) - a_top_mu)
            gl = {
                StructuralKind.SIMPLE.value: 0,
                StructuralKind.STANDARD.value: gl_standard,
                StructuralKind.COSTANDARD.value: gl_standard,
                StructuralKind.PROJECTIVE.value: gl_projective,
                StructuralKind.INJECTIVE.value: gl_projective,
                StructuralKind.TILTING.value: gl_tilting,
            }
            records.append(ElementRecord(
                x=x,
                word=sys_.word_label(x),
                weight=self.weight_label(x, lam),
                pd=pd,
                gl=gl,
            ))

        report = InvariantReport(
            block=block,
            records=records,
            global_dimension=self.global_dimension(block),
            sets=self.distinguished_sets(block, records),
        )
        self._reports[key] = report
        logger.debug("Informe %s: %d elementos", block.label(), len(records))
        return report

    def nonzero_blocks(self) -> List[BlockSpec]:
        """Todos los bloques no nulos del grupo, en orden (J_λ, J_μ) por máscara."""
        subsets = [
            [s for s in self.system.simple_reflections if mask >> (s - 1) & 1]
            for mask in range(1 << self.system.rank)
        ]
        blocks = []
        for lam in subsets:
            for mu in subsets:
                block = self.block(lam, mu)
                if not block.is_zero:
                    blocks.append(block)
        return blocks


def global_dimension(engine: CategoryOEngine, block: BlockSpec) -> GlobalDimension:
    return engine.global_dimension(block)


def invariant_report(engine: CategoryOEngine, block: BlockSpec) -> InvariantReport:
    return engine.report(block)


def distinguished_sets(engine: CategoryOEngine, block: BlockSpec) -> DistinguishedSets:
    return engine.distinguished_sets(block)
