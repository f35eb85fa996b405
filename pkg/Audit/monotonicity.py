"""
KLO - Audit Module: Monotonicity
Propiedades de monotonía de dimensiones proyectivas en un bloque O^μ_λ,
clasificación de bloques singulares, auditoría de implicaciones y
búsqueda de testigos de no monotonía.

Orden de pesos: x·λ < y·λ  <=>  y < x en Bruhat (restringido a X^μ_λ).
Para cada par y < x y c_γ en {c_* = -1, c_0 = 0, c_1 = 1}:

    S_γ: pd L(x) <= pd L(y) + c_γ
    C_γ: pd ∇(x) <= pd ∇(y) + c_γ
    D_γ: pd Δ(x) >= pd Δ(y) - c_γ

    P: pd L = pd ∇ en todo el bloque
    Q: gl T = gl Δ + gl ∇ en todo el bloque
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from Audit.alert_system import Violation, ViolationCollector
from Core.block_invariants import BlockSpec, CategoryOEngine, StructuralKind
from Core.coxeter import ParabolicSubset


logger = logging.getLogger(__name__)

GAMMAS = {"*": -1, "0": 0, "1": 1}
PAIR_PROPERTIES = ("S", "C", "D")
WITNESS_CAP = 10

STRICT = "strict"
WEAK = "weak"
ALMOST = "almost"
NONE = "none"
MONOTONE_CLASSES = (STRICT, WEAK, ALMOST)


def classify(flags: Dict[str, bool]) -> str:
    """Clasificación de O_λ a partir de sus banderas D_γ."""
    if flags["D*"]:
        return STRICT
    if flags["D0"]:
        return WEAK
    if flags["D1"]:
        return ALMOST
    return NONE


@dataclass
class MonotonicityReport:
    """
    Tabla de verdad de las propiedades de monotonía de un bloque.

    Attributes:
        block: Bloque evaluado
        flags: "S*", "S0", "S1", "C*", ..., "D1", "P", "Q" -> bool
        classification: strict / weak / almost / none de O_λ
        sd_identity_holds: s_λ(x) = d_λ(w0 x w0^λ) + a(w0 w0^λ) para todo x de X_λ
        witnesses: propiedad fallida -> pares (menor, mayor) en Bruhat, o elementos para P y Q
    """
    block: BlockSpec
    flags: Dict[str, bool]
    classification: str
    sd_identity_holds: bool
    witnesses: Dict[str, List[Tuple[str, ...]]] = field(default_factory=dict)

    def holds(self, name: str) -> bool:
        return self.flags[name]

    def to_dict(self) -> Dict:
        return {
            "block": self.block.to_dict(),
            "flags": dict(self.flags),
            "classification": self.classification,
            "sd_identity_holds": self.sd_identity_holds,
            "witnesses": {k: [list(w) for w in v] for k, v in self.witnesses.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


@dataclass
class Witness:
    """
    Par y < x con caída de pd Δ.

    Attributes:
        x: Elemento mayor en Bruhat (peso menor)
        y: Elemento menor en Bruhat
        gap: pd Δ(y) - pd Δ(x)
    """
    x: int
    y: int
    gap: int
    x_label: str = ""
    y_label: str = ""

    def to_dict(self) -> Dict:
        return {"x": self.x_label, "y": self.y_label, "gap": self.gap}


def comparable_pairs(engine: CategoryOEngine, block: BlockSpec) -> List[Tuple[int, int]]:
    """Pares (y, x) del conjunto índice con y < x en Bruhat."""
    sys_ = engine.system
    members = np.zeros(sys_.order, dtype=bool)
    members[list(block.index_set)] = True
    pairs: List[Tuple[int, int]] = []
    for x in block.index_set:
        below = sys_.lower_ideal(x) & members
        below[x] = False
        pairs.extend((int(y), x) for y in np.flatnonzero(below))
    return pairs


class MonotonicityAnalyzer:
    """
    Evaluador de monotonía con caché por bloque.

    Attributes:
        engine: Evaluador de bloques
    """

    def __init__(self, engine: CategoryOEngine):
        self.engine = engine
        self.system = engine.system
        self._reports: Dict[Tuple[frozenset, frozenset], MonotonicityReport] = {}

    def _flags(self, block: BlockSpec) -> Tuple[Dict[str, bool], Dict[str, List[Tuple[str, ...]]]]:
        report = self.engine.report(block)
        pd_l = report.column(StructuralKind.SIMPLE)
        pd_n = report.column(StructuralKind.COSTANDARD)
        pd_d = report.column(StructuralKind.STANDARD)
        labels = {r.x: r.label for r in report.records}
        tests = {
            "S": lambda y, x, c: pd_l[x] <= pd_l[y] + c,
            "C": lambda y, x, c: pd_n[x] <= pd_n[y] + c,
            "D": lambda y, x, c: pd_d[x] >= pd_d[y] - c,
        }
        flags: Dict[str, bool] = {}
        witnesses: Dict[str, List[Tuple[str, ...]]] = {}
        pairs = comparable_pairs(self.engine, block)
        for prop in PAIR_PROPERTIES:
            for gamma, c in GAMMAS.items():
                name = prop + gamma
                failing = [(labels[y], labels[x]) for y, x in pairs if not tests[prop](y, x, c)]
                flags[name] = not failing
                if failing:
                    witnesses[name] = failing[:WITNESS_CAP]

        bad_p = [(r.label,) for r in report.records
                 if r.pd[StructuralKind.SIMPLE.value] != r.pd[StructuralKind.COSTANDARD.value]]
        bad_q = [(r.label,) for r in report.records
                 if r.gl[StructuralKind.TILTING.value]
                 != r.gl[StructuralKind.STANDARD.value] + r.gl[StructuralKind.COSTANDARD.value]]
        flags["P"], flags["Q"] = not bad_p, not bad_q
        if bad_p:
            witnesses["P"] = bad_p[:WITNESS_CAP]
        if bad_q:
            witnesses["Q"] = bad_q[:WITNESS_CAP]
        return flags, witnesses

    def sd_identity_holds(self, J_lambda) -> bool:
        sys_, eng = self.system, self.engine
        lam = J_lambda if isinstance(J_lambda, ParabolicSubset) else sys_.parabolic(J_lambda)
        sd = eng.sd(lam)
        top = eng.a(sys_.multiply(sys_.w0, lam.w0J))
        return all(
            sd.s[x] == sd.d[sys_.product(sys_.w0, x, lam.w0J)] + top
            for x in sd.s
        )

    def report(self, block: BlockSpec) -> MonotonicityReport:
        key = (block.J_lambda.J, block.J_mu.J)
        if key not in self._reports:
            flags, witnesses = self._flags(block)
            if block.J_mu.is_regular:
                base_flags = flags
            else:
                base_flags = self.report(self.engine.block(block.J_lambda, ())).flags
            self._reports[key] = MonotonicityReport(
                block=block,
                flags=flags,
                classification=classify(base_flags),
                sd_identity_holds=self.sd_identity_holds(block.J_lambda),
                witnesses=witnesses,
            )
            logger.debug("Monotonía %s: %s", block.label(), self._reports[key].classification)
        return self._reports[key]

    def _optional(self, J_lambda, J_mu) -> Optional[MonotonicityReport]:
        block = self.engine.block(J_lambda, J_mu)
        return None if block.is_zero else self.report(block)

    def implication_checks(self, block: BlockSpec) -> ViolationCollector:
        """Cada flecha del diagrama de implicaciones sobre los valores calculados."""
        sys_ = self.system
        c = ViolationCollector(block.to_dict())
        lam, mu = block.J_lambda, block.J_mu
        here = self.report(block)
        f = here.flags

        def implies(name: str, premise: bool, conclusion: bool, **details) -> None:
            c.check(f"implication.{name}", (not premise) or conclusion,
                    f"Falla la implicación {name}", premise=premise,
                    conclusion=conclusion, **details)

        for prop in PAIR_PROPERTIES:
            implies(f"{prop}*=>{prop}0", f[prop + "*"], f[prop + "0"])
            implies(f"{prop}0=>{prop}1", f[prop + "0"], f[prop + "1"])

        dual = self._optional(lam, sys_.hat_involution(mu))
        if dual is not None:
            g = dual.flags
            for gamma in ("*", "0"):
                implies(f"S{gamma}<=>D{gamma}(hat mu)", f["S" + gamma], g["D" + gamma])
                implies(f"D{gamma}(hat mu)<=>S{gamma}", g["D" + gamma], f["S" + gamma])
                implies(f"S{gamma}<=>C{gamma}", f["S" + gamma], f["C" + gamma])
                implies(f"C{gamma}<=>S{gamma}", f["C" + gamma], f["S" + gamma])
            implies("D1(hat mu)<=>C1", g["D1"], f["C1"])
            implies("C1<=>D1(hat mu)", f["C1"], g["D1"])

        swapped = self._optional(mu, lam)
        if swapped is not None:
            implies("P<=>Q(swapped)", f["P"], swapped.flags["Q"])
            implies("Q(swapped)<=>P", swapped.flags["Q"], f["P"])
            if dual is not None:
                implies("D1(hat mu)=>Q(swapped)", dual.flags["D1"], swapped.flags["Q"])

        if not mu.is_regular:
            base = self._optional(lam, ())
            if base is not None:
                for prop in PAIR_PROPERTIES:
                    for gamma in GAMMAS:
                        name = prop + gamma
                        implies(f"{name}(0)=>{name}(mu)", base.flags[name], f[name])
                implies("P(0)=>P(mu)", base.flags["P"], f["P"])
        if not lam.is_regular:
            regular_singular = self._optional((), mu)
            if regular_singular is not None:
                implies("Q(lambda=0)=>Q", regular_singular.flags["Q"], f["Q"])

        implies("monotone=>sd_identity", here.classification in MONOTONE_CLASSES,
                here.sd_identity_holds, classification=here.classification)
        return c

    def witness(self, block: BlockSpec) -> Optional[Witness]:
        """
        Par y < x que maximiza pd Δ(y) - pd Δ(x).

        Empates: menor diferencia de longitudes, luego menor índice.
        None si ninguna caída es positiva.
        """
        report = self.engine.report(block)
        pd_d = report.column(StructuralKind.STANDARD)
        length = self.system.length
        best = None
        for y, x in comparable_pairs(self.engine, block):
            gap = pd_d[y] - pd_d[x]
            key = (-gap, int(length[x] - length[y]), x, y)
            if best is None or key < best[0]:
                best = (key, x, y, gap)
        if best is None or best[3] <= 0:
            return None
        _, x, y, gap = best
        return Witness(x=x, y=y, gap=gap,
                       x_label=report.record(x).label, y_label=report.record(y).label)


@dataclass
class SurveyRow:
    """
    Resumen de un par (J_λ, J_μ).

    Attributes:
        singular: J_λ
        parabolic: J_μ
        size: |X^μ_λ| (0 = bloque cero)
        global_dimension: None en bloques cero
        semisimple: None en bloques cero
        classification: Clasificación de O_λ
        sd_identity_holds: Igualdad s/d de O_λ
    """
    singular: List[int]
    parabolic: List[int]
    size: int
    global_dimension: Optional[int]
    semisimple: Optional[bool]
    classification: str
    sd_identity_holds: bool

    @property
    def is_zero(self) -> bool:
        return self.size == 0

    def to_dict(self) -> Dict:
        return {
            "singular": self.singular,
            "parabolic": self.parabolic,
            "size": self.size,
            "zero": self.is_zero,
            "global_dimension": self.global_dimension,
            "semisimple": self.semisimple,
            "classification": self.classification,
            "sd_identity_holds": self.sd_identity_holds,
        }


def monotonicity_report(engine: CategoryOEngine, block: BlockSpec) -> MonotonicityReport:
    return MonotonicityAnalyzer(engine).report(block)


def implication_checks(engine: CategoryOEngine, block: BlockSpec) -> ViolationCollector:
    return MonotonicityAnalyzer(engine).implication_checks(block)


def implication_audit(engine: CategoryOEngine, block: BlockSpec) -> List[Violation]:
    """Lista vacía si todas las flechas se cumplen."""
    return implication_checks(engine, block).violations


def nonmonotonicity_witness(engine: CategoryOEngine, block: BlockSpec) -> Optional[Witness]:
    return MonotonicityAnalyzer(engine).witness(block)


def survey(engine: CategoryOEngine) -> List[SurveyRow]:
    """Todos los pares (J_λ, J_μ) del grupo con la clasificación de O_λ."""
    sys_ = engine.system
    analyzer = MonotonicityAnalyzer(engine)
    subsets = [
        [s for s in sys_.simple_reflections if mask >> (s - 1) & 1]
        for mask in range(1 << sys_.rank)
    ]
    rows: List[SurveyRow] = []
    for lam in subsets:
        base = analyzer.report(engine.block(lam, ()))
        for mu in subsets:
            block = engine.block(lam, mu)
            gd = None if block.is_zero else engine.global_dimension(block)
            rows.append(SurveyRow(
                singular=lam,
                parabolic=mu,
                size=len(block.index_set),
                global_dimension=None if gd is None else gd.value,
                semisimple=None if gd is None else gd.semisimple,
                classification=base.classification,
                sd_identity_holds=base.sd_identity_holds,
            ))
    return rows
