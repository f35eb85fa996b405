"""
KLO - Audit Module: Bounds Monitor
Batería de propiedades sobre tablas KL, bases canónicas, polinomios KLV,
células e informes de bloque.

Cada comprobación se registra en un ViolationCollector; un bloque sano
produce una lista de violaciones vacía.
"""

import logging
from typing import List, Optional

import numpy as np

from Audit.alert_system import Violation, ViolationCollector
from Audit.monotonicity import implication_checks
from Core.block_invariants import BlockSpec, CategoryOEngine, StructuralKind
from Core.canonical_basis import bar_invariance_violations, identity_defects
from Core.cells import CellKind
from Core.closed_forms import closed_forms, hermitian_symmetric, in_singular_family, right_cell_rule
from Core.coxeter import ParabolicSubset
from Core.hecke_algebra import HeckeAlgebra
from Core.tableau import rsk


logger = logging.getLogger(__name__)

L_ = StructuralKind.SIMPLE
D_ = StructuralKind.STANDARD
N_ = StructuralKind.COSTANDARD
P_ = StructuralKind.PROJECTIVE
I_ = StructuralKind.INJECTIVE
T_ = StructuralKind.TILTING

BAR_CHECK_MAX_RANK = 3
ORDER_CHECK_MAX = 720


class BoundsMonitor:
    """
    Verificador de propiedades de un grupo y sus bloques.

    Attributes:
        engine: Evaluador de bloques (sistema, tabla KL y células)
        algebra: Álgebra de Hecke para la invariancia por la barra
    """

    def __init__(self, engine: CategoryOEngine, algebra: Optional[HeckeAlgebra] = None):
        self.engine = engine
        self.system = engine.system
        self.algebra = algebra
        self._order_matrices = None

    def _label(self, x: int, J: Optional[ParabolicSubset] = None) -> str:
        if J is not None:
            weight = self.engine.weight_label(x, J)
            if weight is not None:
                return weight
        return self.system.word_label(x)

    def _subset(self, J) -> ParabolicSubset:
        return J if isinstance(J, ParabolicSubset) else self.system.parabolic(J)

    # -- polinomios KL ------------------------------------------------------

    def kl_properties(self) -> ViolationCollector:
        c = ViolationCollector({"group": self.system.name})
        length = self.system.length
        for y, row in enumerate(self.engine.kl.rows):
            for x, poly in row.items():
                gap = int(length[y] - length[x])
                where = f"{self._label(x)} <= {self._label(y)}"
                c.check("kl.degree", 2 * poly.degree <= gap - 1,
                        f"deg P excede (l(y)-l(x)-1)/2", where, degree=poly.degree, gap=gap)
                c.check("kl.nonnegative", all(v >= 0 for v in poly.coeffs),
                        "Coeficiente negativo en P", where, poly=str(poly))
                c.check("kl.constant_term", poly.coefficient(0) == 1,
                        "P(0) != 1", where, poly=str(poly))
        return c

    # -- bases canónicas y KLV ----------------------------------------------

    def klv_properties(self, J) -> ViolationCollector:
        J = self._subset(J)
        sys_ = self.system
        c = ViolationCollector({"group": sys_.name, "J": sorted(J.J)})
        basis = self.engine.basis(J)
        klv = self.engine.klv(J)
        index = set(klv.index)

        for y in basis.index:
            for x, poly in basis.columns.get(y, {}).items():
                where = f"B[{self._label(x, J)}][{self._label(y, J)}]"
                c.check("basis.positive",
                        poly.coefficient(0) == 0 and all(v >= 0 for v in poly.coeffs),
                        "Entrada fuera de la diagonal no está en qN[q]", where, poly=str(poly))
                c.check("basis.bruhat", sys_.bruhat_leq(x, y),
                        "Entrada no nula fuera del orden de Bruhat", where)

        defects = identity_defects(basis, klv.rows)
        c.check("klv.inverse", not defects, "B·p != identidad", defects=defects[:10])

        for x in klv.index:
            for y, p in klv.row(x).items():
                n = int(sys_.length[x] - sys_.length[y])
                where = f"p({self._label(x, J)},{self._label(y, J)})"
                c.check("klv.sign", p.has_alternating_signs(),
                        "Signos de p no alternan", where, poly=str(p))
                c.check("vanish.order", sys_.bruhat_leq(y, x),
                        "p(x,y) != 0 sin y <= x", where)
                c.check("vanish.degree", p.degree <= n,
                        "deg p(x,y) > l(x) - l(y)", where, degree=p.degree, gap=n)
                c.check("klv.extremal_coefficient", abs(p.coefficient(n)) <= 1,
                        "Coeficiente extremo con módulo > 1", where, poly=str(p))

        for x in klv.index:
            for s in sys_.left_descents(x):
                xp = sys_.lmul(s, x)
                if xp not in index:
                    continue
                for y in klv.index:
                    if not sys_.bruhat_leq(y, x):
                        continue
                    n = int(sys_.length[x] - sys_.length[y])
                    actual = abs(klv.p(x, y).coefficient(n))
                    sy = sys_.lmul(s, y)
                    if sys_.has_left_descent(y, s):
                        expected = abs(klv.p(xp, sy).coefficient(n)) if sy in index else 0
                    else:
                        expected = abs(klv.p(xp, y).coefficient(n - 1))
                        lifted = klv.p(xp, y).shift(1)
                        c.check("klv.left_shift", klv.p(x, y) == -lifted,
                                "p(x,y) != -q·p(x',y) con x = s x'",
                                f"{self._label(x, J)}, {self._label(y, J)}", s=s)
                    c.check("klv.extremal_recursion", actual == expected,
                            "Coeficiente extremo no sigue la recursión",
                            f"{self._label(x, J)}, {self._label(y, J)}",
                            s=s, actual=actual, expected=expected)

        orthogonal = [
            s for s in sys_.simple_reflections
            if s not in J.J and all(
                sys_.multiply(sys_.generator(s), sys_.generator(t))
                == sys_.multiply(sys_.generator(t), sys_.generator(s))
                for t in J.J)
        ]
        for x in klv.index:
            for s in orthogonal:
                if not sys_.has_right_descent(x, s):
                    continue
                xp = sys_.rmul(x, s)
                if xp not in index:
                    continue
                for y in klv.index:
                    if sys_.has_right_descent(y, s):
                        continue
                    c.check("klv.right_shift", klv.p(x, y) == -(klv.p(xp, y).shift(1)),
                            "p(x,y) != -q·p(x',y) con x = x' s",
                            f"{self._label(x, J)}, {self._label(y, J)}", s=s)
        return c

    def bar_invariance(self, J) -> ViolationCollector:
        J = self._subset(J)
        c = ViolationCollector({"group": self.system.name, "J": sorted(J.J)})
        if self.system.rank > BAR_CHECK_MAX_RANK:
            return c
        if self.algebra is None:
            self.algebra = HeckeAlgebra(self.system, self.engine.kl)
        failures = bar_invariance_violations(self.algebra, self.engine.basis(J))
        c.check("basis.bar_invariant", not failures,
                "Columnas de B no invariantes por la barra",
                columns=[self._label(y, J) for y in failures])
        return c

    # -- funciones s y d ------------------------------------------------------

    def singular_bounds(self, J) -> ViolationCollector:
        J = self._subset(J)
        sys_, eng = self.system, self.engine
        c = ViolationCollector({"group": sys_.name, "J": sorted(J.J)})
        sd = eng.sd(J)
        klv = eng.klv(J)
        w0, w0J = sys_.w0, J.w0J
        A = eng.a(sys_.multiply(w0, w0J))
        anchor = set(eng.cells.left_cell(w0J))
        top = set(eng.cells.left_cell(sys_.multiply(w0, w0J)))
        parabolic_tops = {
            sys_.multiply(sys_.longest_element(
                [s for s in sys_.simple_reflections if mask >> (s - 1) & 1]), w0)
            for mask in range(1 << sys_.rank)
        }

        for x in klv.index:
            s, d = sd.s[x], sd.d[x]
            lab = self._label(x, J)
            c.check("simple.range", A <= s <= 2 * A, "s fuera de [a, 2a]", lab, s=s, a=A)
            c.check("simple.top_cell", (s == 2 * A) == (x in anchor),
                    "s = 2a no caracteriza L(w0^λ)", lab, s=s, a=A)
            c.check("simple.bottom_w0", (s == A) == (x == w0), "s = a no caracteriza w0", lab, s=s, a=A)
            c.check("simple.length_bound", s <= eng.l(sys_.multiply(w0, x)) + A,
                    "s > l(w0 x) + a", lab, s=s)
            lower = eng.a(sys_.multiply(w0, x)) + A
            if sys_.cartan_type == "A" or parabolic_tops & set(eng.cells.right_cell(x)):
                c.check("simple.a_lower_bound", s >= lower, "s < a(w0 x) + a(w0 w0^λ)", lab, s=s, bound=lower)
            opposite = sys_.product(w0, x, w0J)
            c.check("simple.standard_lower_bound", s >= sd.d[opposite] + A, "s < d(w0 x w0^λ) + a", lab,
                    s=s, d_opposite=sd.d[opposite])
            c.check("standard.range", 0 <= d <= A, "d fuera de [0, a]", lab, d=d, a=A)
            c.check("standard.top_cell", (d == A) == (sys_.multiply(x, w0J) in top),
                    "d = a no caracteriza x w0^λ en L(w0 w0^λ)", lab, d=d)
            c.check("standard.zero_w0", (d == 0) == (x == w0J), "d = 0 no caracteriza w0^λ", lab, d=d)
            c.check("standard.length_bound", d <= eng.l(sys_.multiply(x, w0J)), "d > l(x w0^λ)", lab, d=d)
            c.check("standard.cell_degree", sd.d_cell.get(x) == d,
                    "d(x) != max deg p(x,y) con y en L(w0^λ)", lab,
                    d=d, d_cell=sd.d_cell.get(x))
            for y, p in klv.row(x).items():
                if p.degree == d:
                    c.check("standard.cell_top", y in anchor,
                            "Grado máximo alcanzado fuera de L(w0^λ)", lab, y=self._label(y, J))
        return c

    def closed_form_agreement(self, J) -> ViolationCollector:
        J = self._subset(J)
        c = ViolationCollector({"group": self.system.name, "J": sorted(J.J)})
        form = closed_forms(self.engine, J)
        if form is None:
            return c
        sd = self.engine.sd(J)
        for x, value in form.s.items():
            c.check(f"closed_forms.{form.provenance}.s", value == sd.s[x],
                    "Forma cerrada de s discrepa del cálculo KLV", self._label(x, J),
                    closed=value, klv=sd.s[x])
            if form.d is not None:
                c.check(f"closed_forms.{form.provenance}.d", form.d[x] == sd.d[x],
                        "Forma cerrada de d discrepa del cálculo KLV", self._label(x, J),
                        closed=form.d[x], klv=sd.d[x])
        if self.system.cartan_type == "A" and (
                hermitian_symmetric("A", self.system.rank, J)
                or in_singular_family("A", self.system.rank, J)):
            for x, value in right_cell_rule(self.engine, J).items():
                c.check("closed_forms.right_cell_rule", value == sd.s[x],
                        "Regla de la célula derecha discrepa de s", self._label(x, J),
                        rule=value, klv=sd.s[x])
        return c

    # -- informes de bloque -----------------------------------------------------

    def bounds_report(self, block: BlockSpec) -> List[Violation]:
        """Cotas de s/d del bloque singular más las de O^μ_λ; lista vacía si todo se cumple."""
        c = self.singular_bounds(block.J_lambda)
        c.extend(self._block_bounds(block))
        return c.violations

    def _block_bounds(self, block: BlockSpec) -> ViolationCollector:
        sys_, eng = self.system, self.engine
        c = ViolationCollector(block.to_dict())
        report = eng.report(block)
        lam, mu = block.J_lambda, block.J_mu
        A = eng.a(sys_.multiply(sys_.w0, lam.w0J))
        a_mu = eng.a(mu.w0J)
        target = A - a_mu
        standards = set(report.sets.simple_standards)
        top = set(eng.cells.left_cell(sys_.multiply(sys_.w0, lam.w0J)))
        sd = eng.sd(lam)
        for x in block.index_set:
            lab = self._label(x, lam)
            pd_delta, pd_simple = report.pd(D_, x), report.pd(L_, x)
            c.check("block.bound_sandwich", pd_delta <= target <= pd_simple,
                    "pd Δ <= a(w0w0^λ) - a(w0^μ) <= pd L incumplida", lab,
                    pd_delta=pd_delta, pd_simple=pd_simple, bound=target)
            c.check("block.simple_standards", (pd_simple == target) == (x in standards),
                    "pd L = cota no caracteriza simples estándar", lab, pd_simple=pd_simple)
            c.check("block.standard_top",
                    (pd_delta == target) == (sys_.product(mu.w0J, x, lam.w0J) in top),
                    "pd Δ = cota no caracteriza w0^μ L(w0 w0^λ) w0^λ", lab, pd_delta=pd_delta)
            if x in standards:
                c.check("block.standard_simple_values",
                        sd.s[x] == A + a_mu and sd.d[sys_.multiply(mu.w0J, x)] == A,
                        "Simple estándar con s o d inesperados", lab, s=sd.s[x])
            else:
                c.check("block.non_standard_simple", sd.s[x] > A + a_mu,
                        "Simple no estándar con s <= a(w0w0^λ) + a(w0^μ)", lab, s=sd.s[x])
        return c

    def report_properties(self, block: BlockSpec) -> ViolationCollector:
        sys_, eng = self.system, self.engine
        c = ViolationCollector(block.to_dict())
        report = eng.report(block)
        lam, mu = block.J_lambda, block.J_mu
        w0, w0lam, w0mu = sys_.w0, lam.w0J, mu.w0J
        top_gl = eng.a(sys_.multiply(w0mu, w0)) - eng.a(w0lam)
        gd = report.global_dimension

        for rec in report.records:
            lab = rec.label
            c.check("report.projective", rec.pd[P_.value] == 0, "pd P != 0", lab)
            c.check("report.simple_gl", rec.gl[L_.value] == 0, "gl L != 0", lab)
            c.check("report.nonnegative",
                    min(rec.pd.values()) >= 0 and min(rec.gl.values()) >= 0,
                    "Valor negativo en el informe", lab, pd=rec.pd, gl=rec.gl)
            c.check("report.gl_pairs",
                    rec.gl[D_.value] == rec.gl[N_.value] and rec.gl[P_.value] == rec.gl[I_.value],
                    "gl Δ != gl ∇ o gl P != gl I", lab)
        c.check("global_dimension.max_pd_simple",
                max(report.column(L_).values()) == gd.value,
                "max pd L != dimensión global", value=gd.value)
        c.check("global_dimension.semisimple", gd.semisimple == (gd.value == 0),
                "Bandera semisimple inconsistente", value=gd.value)

        S = set(report.sets.S_set)
        proj_inj = set(report.sets.projective_injectives)
        proj_tilt = set(report.sets.projective_tiltings)
        for rec in report.records:
            x, lab = rec.x, rec.label
            gl_d, gl_p, gl_t = rec.gl[D_.value], rec.gl[P_.value], rec.gl[T_.value]
            c.check("sets.gl_standard", gl_d == top_gl if x in S else gl_d < top_gl,
                    "gl Δ no separa S^μ_λ", lab, gl=gl_d, bound=top_gl)
            c.check("sets.gl_projective", gl_p == 2 * top_gl if x in proj_inj else gl_p < 2 * top_gl,
                    "gl P no separa los proyectivo-inyectivos", lab, gl=gl_p, bound=2 * top_gl)
            c.check("sets.gl_tilting", gl_t == 2 * top_gl if x in proj_tilt else gl_t < 2 * top_gl,
                    "gl T no separa los tilting proyectivos", lab, gl=gl_t, bound=2 * top_gl)

        if mu.is_regular:
            sd = eng.sd(lam)
            c.check("sets.S_regular_mu", report.sets.S_set == [w0lam],
                    "S_λ != {w0^λ}", sets=report.sets.S_set)
            for rec in report.records:
                x, lab, lx = rec.x, rec.label, eng.l(rec.x)
                c.check("consistency.pd_standard", rec.pd[D_.value] == sd.d[x],
                        "pd Δ del informe != d_λ", lab)
                c.check("second_line.gl_standard", rec.gl[D_.value] == eng.l(w0) - lx,
                        "gl Δ != l(w0) - l(x)", lab)
                c.check("second_line.gl_tilting", rec.gl[T_.value] == 2 * eng.l(w0) - 2 * lx,
                        "gl T != 2l(w0) - 2l(x)", lab)
                c.check("second_line.gl_projective",
                        rec.gl[P_.value] == eng.l(w0) + lx - 2 * eng.l(w0lam),
                        "gl P != l(w0) + l(x) - 2l(w0^λ)", lab)
        if lam.is_regular:
            top = eng.l(sys_.multiply(w0, w0mu))
            expected_S = {sys_.multiply(w0mu, r) for r in eng.cells.right_cell(w0mu)}
            c.check("sets.S_regular_lambda", set(report.sets.S_set) == expected_S,
                    "S^μ_0 != w0^μ R(w0^μ)")
            longest = sys_.multiply(w0mu, w0)
            for rec in report.records:
                x, lab, lx = rec.x, rec.label, eng.l(rec.x)
                c.check("second_line.pd_simple", rec.pd[L_.value] == 2 * top - lx,
                        "pd L^μ != 2l(w0w0^μ) - l(x)", lab)
                c.check("second_line.pd_standard", rec.pd[D_.value] == lx,
                        "pd Δ^μ != l(x)", lab)
                c.check("second_line.pd_costandard", rec.pd[N_.value] == 2 * top - lx,
                        "pd ∇^μ != 2l(w0w0^μ) - l(x)", lab)
                c.check("parabolic_regular.simple_standard", (rec.gl[D_.value] == 0) == (x == longest),
                        "Δ^μ simple no caracteriza w0^μ w0", lab)
                c.check("parabolic_regular.simple_tilting", (rec.gl[T_.value] == 0) == (x == longest),
                        "T^μ simple no caracteriza w0^μ w0", lab)
        if block.is_principal:
            for rec in report.records:
                x, lab = rec.x, rec.label
                c.check("principal.pd_tilting", rec.pd[T_.value] == eng.a(x),
                        "pd T(x) != a(x)", lab)
                c.check("principal.pd_injective",
                        rec.pd[I_.value] == 2 * eng.a(sys_.multiply(w0, x)),
                        "pd I(x) != 2a(w0 x)", lab)
                c.check("principal.gl_projective",
                        rec.gl[P_.value] == eng.l(w0) + eng.l(x),
                        "gl P(x) != l(w0) + l(x)", lab)
        if sys_.cartan_type == "A" and hermitian_symmetric("A", sys_.rank, mu):
            xs = sys_.x_mu(mu)
            count = len({eng.cells.partition_right[x] for x in xs})
            c.check("hermitian.right_cells", eng.a(sys_.multiply(w0mu, w0)) == count - 1,
                    "a(w0^μ w0) != (células derechas en X^μ) - 1",
                    a=eng.a(sys_.multiply(w0mu, w0)), cells=count)
        return c

    def translation_properties(self, block: BlockSpec) -> ViolationCollector:
        sys_, eng = self.system, self.engine
        c = ViolationCollector(block.to_dict())
        lam, mu = block.J_lambda, block.J_mu
        if lam.is_regular:
            return c
        report = eng.report(block)
        regular = eng.report(eng.block((), mu))
        members = set(regular.block.index_set)
        shift = eng.l(lam.w0J)
        for x in block.index_set:
            lab = self._label(x, lam)
            xw = sys_.multiply(x, lam.w0J)
            if not c.check("translation.index", xw in members,
                           "x w0^λ fuera de X^μ", lab):
                continue
            c.check("translation.gl_standard", report.gl(D_, x) == regular.gl(D_, xw) - shift,
                    "gl Δ^μ(x·λ) != gl Δ^μ(x w0^λ) - l(w0^λ)", lab)
            c.check("translation.gl_tilting", report.gl(T_, x) == regular.gl(T_, xw) - 2 * shift,
                    "gl T^μ(x·λ) != gl T^μ(x w0^λ) - 2l(w0^λ)", lab)
            c.check("translation.pd_tilting", report.pd(T_, x) == regular.pd(T_, xw),
                    "pd T^μ(x·λ) != pd T^μ(x w0^λ)", lab)
            c.check("translation.pd_injective", report.pd(I_, x) == regular.pd(I_, x),
                    "pd I^μ(x·λ) != pd I^μ(x)", lab)
        return c

    def ringel_properties(self, block: BlockSpec) -> ViolationCollector:
        """pd I^{μ̂}(w0 w0^μ x w0^λ) = 2 pd T^μ(x·λ)."""
        sys_, eng = self.system, self.engine
        c = ViolationCollector(block.to_dict())
        lam, mu = block.J_lambda, block.J_mu
        dual_block = eng.block(lam, sys_.hat_involution(mu))
        if dual_block.is_zero:
            c.check("ringel.nonzero", False, "Dual de Ringel con índice vacío")
            return c
        report, dual = eng.report(block), eng.report(dual_block)
        members = set(dual_block.index_set)
        for x in block.index_set:
            lab = self._label(x, lam)
            y = sys_.product(sys_.w0, mu.w0J, x, lam.w0J)
            if not c.check("ringel.index", y in members, "w0 w0^μ x w0^λ fuera del dual", lab):
                continue
            c.check("ringel.doubling", dual.pd(I_, y) == 2 * report.pd(T_, x),
                    "pd del dual de Ringel de T != 2 pd T", lab,
                    pd_injective=dual.pd(I_, y), pd_tilting=report.pd(T_, x))
        return c

    def parabolic_properties(self, J_mu) -> ViolationCollector:
        J_mu = self._subset(J_mu)
        sys_, eng = self.system, self.engine
        c = ViolationCollector({"group": sys_.name, "parabolic": sorted(J_mu.J)})
        matrix, table = eng.parabolic(J_mu)
        psd = eng.parabolic_sd(J_mu)
        singular = eng.sd(J_mu)
        top = eng.l(sys_.multiply(sys_.w0, J_mu.w0J))
        defects = identity_defects(matrix, table.rows)
        c.check("parabolic.inverse", not defects, "M·p^μ != identidad", defects=defects[:10])
        for y in matrix.index:
            for x, poly in matrix.columns.get(y, {}).items():
                c.check("parabolic.positive",
                        poly.coefficient(0) == 0 and all(v >= 0 for v in poly.coeffs),
                        "Entrada parabólica fuera de qN[q]",
                        f"{self._label(x)} <= {self._label(y)}", poly=str(poly))
        for x in matrix.index:
            lab, lx = self._label(x), eng.l(x)
            c.check("parabolic.d", psd.d[x] == lx, "d^μ(x) != l(x)", lab, d=psd.d[x])
            c.check("parabolic.s", psd.s[x] == 2 * top - lx,
                    "s^μ(x) != 2l(w0w0^μ) - l(x)", lab, s=psd.s[x])
            dual = singular.d[sys_.multiply(sys_.w0, sys_.inv(x))]
            c.check("koszul.row_degree", matrix.max_row_degree(x) == dual,
                    "Grado máximo de la fila != d_μ(w0 x^-1)", lab,
                    row_degree=matrix.max_row_degree(x), d_mu=dual)
        return c

    # -- células ----------------------------------------------------------------

    def _orders(self):
        if self._order_matrices is None:
            preorder = self.engine.cells.preorder
            order = self.system.order
            left = np.array([preorder.reachable(CellKind.LEFT, x) for x in range(order)])
            right = np.array([preorder.reachable(CellKind.RIGHT, x) for x in range(order)])
            self._order_matrices = (left, right)
        return self._order_matrices

    def cell_properties(self) -> ViolationCollector:
        sys_, cells = self.system, self.engine.cells
        c = ViolationCollector({"group": sys_.name})
        a = np.array(cells.a_values)
        for label, members in cells.cells(CellKind.TWOSIDED).items():
            c.check("cells.a_constant", len({cells.a_values[z] for z in members}) == 1,
                    "a no es constante en la célula bilátera", self._label(label))
        c.check("cells.a_identity", cells.a_values[0] == 0, "a(e) != 0")
        c.check("cells.a_longest", cells.a_values[sys_.w0] == int(sys_.length[sys_.w0]),
                "a(w0) != l(w0)")
        for label, d in cells.duflo.items():
            c.check("cells.duflo", sys_.inv(d) == d and cells.partition_left[d] == label,
                    "Involución de Duflo inválida", self._label(label), duflo=self._label(d))
        for x in range(sys_.order):
            mirrored = {sys_.inv(z) for z in cells.left_cell(x)}
            c.check("cells.mirror", mirrored == set(cells.right_cell(sys_.inv(x))),
                    "L(x)^-1 != R(x^-1)", self._label(x))
        for kind in (CellKind.LEFT, CellKind.RIGHT):
            for members in cells.cells(kind).values():
                c.check("cells.twosided_refines",
                        len({cells.partition_twosided[z] for z in members}) == 1,
                        "Célula no contenida en una bilátera", kind=kind.value)

        if sys_.order > ORDER_CHECK_MAX:
            return c
        left, right = self._orders()
        c.check("cells.a_monotone", bool(np.all((a[:, None] <= a[None, :]) | ~left)),
                "x <=_L y con a(x) > a(y)")
        inv = sys_.inverse
        times_w0 = np.array([sys_.multiply(x, sys_.w0) for x in range(sys_.order)])
        w0_times = np.array([sys_.multiply(sys_.w0, x) for x in range(sys_.order)])
        c.check("cells.inverse_order", bool(np.array_equal(left, right[np.ix_(inv, inv)])),
                "x <=_L y no equivale a x^-1 <=_R y^-1")
        c.check("cells.right_w0",
                bool(np.array_equal(left, left[np.ix_(times_w0, times_w0)].T)),
                "x <=_L y no equivale a y w0 <=_L x w0")
        c.check("cells.left_w0",
                bool(np.array_equal(left, left[np.ix_(w0_times, w0_times)].T)),
                "x <=_L y no equivale a w0 y <=_L w0 x")
        for mask in range(1 << sys_.rank):
            J = sys_.parabolic([s for s in sys_.simple_reflections if mask >> (s - 1) & 1])
            target = sys_.multiply(J.w0J, sys_.w0)
            below = {int(x) for x in np.flatnonzero(right[:, target])}
            c.check("cells.X_mu_right_order", below == set(sys_.x_mu(J)),
                    "X^μ != {x <=_R w0^μ w0}", J=sorted(J.J))
            if sys_.cartan_type == "A" and hermitian_symmetric("A", sys_.rank, J):
                xs = sys_.x_mu(J)
                total = all(right[x, y] or right[y, x] for x in xs for y in xs)
                c.check("hermitian.total_order", total,
                        "X^μ no está totalmente ordenado por <=_R", J=sorted(J.J))
        if sys_.cartan_type == "A":
            c.extend(self.rsk_agreement())
        return c

    def rsk_agreement(self) -> ViolationCollector:
        sys_, cells = self.system, self.engine.cells
        c = ViolationCollector({"group": sys_.name})
        checks = (
            ("rsk.left", cells.partition_left, lambda r: r.recording.key()),
            ("rsk.right", cells.partition_right, lambda r: r.insertion.key()),
            ("rsk.twosided", cells.partition_twosided, lambda r: r.shape),
        )
        results = [rsk(sys_.one_line(x)) for x in range(sys_.order)]
        for name, partition, key in checks:
            pairs = {(partition[x], key(results[x])) for x in range(sys_.order)}
            labels = {p for p, _ in pairs}
            keys = {k for _, k in pairs}
            c.check(name, len(pairs) == len(labels) == len(keys),
                    "Partición KL y RSK no coinciden", cells=len(labels), tableaux=len(keys))
        return c

    # -- batería completa --------------------------------------------------------

    def verify(self, block: BlockSpec) -> ViolationCollector:
        """Todas las propiedades aplicables al bloque y a su grupo."""
        c = ViolationCollector(block.to_dict())
        c.extend(self.kl_properties())
        c.extend(self.cell_properties())
        for J in {block.J_lambda.J: block.J_lambda, block.J_mu.J: block.J_mu}.values():
            c.extend(self.klv_properties(J))
            c.extend(self.singular_bounds(J))
            c.extend(self.bar_invariance(J))
            c.extend(self.closed_form_agreement(J))
        if not block.J_mu.is_regular:
            c.extend(self.parabolic_properties(block.J_mu))
        c.extend(self._block_bounds(block))
        c.extend(self.report_properties(block))
        c.extend(self.translation_properties(block))
        c.extend(self.ringel_properties(block))
        c.extend(implication_checks(self.engine, block))
        logger.debug("Verificación %s: %s", block.label(), c.summary())
        return c


def bounds_report(engine: CategoryOEngine, block: BlockSpec) -> List[Violation]:
    return BoundsMonitor(engine).bounds_report(block)
