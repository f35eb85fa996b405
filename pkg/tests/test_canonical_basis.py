"""Matrices de descomposición graduadas, polinomios KLV y álgebra de Hecke."""

from Core.canonical_basis import (bar_invariance_violations, identity_defects,
                                  invert_unitriangular)
from Core.hecke_algebra import HeckeAlgebra, hecke_structure_constants
from Core.polynomials import LaurentV, PolyQ, V, V_INV


def test_singular_basis_entries(engine_a3, weight):
    basis = engine_a3.basis([3])
    w = lambda text: weight(engine_a3, [3], text)
    assert len(basis.index) == 12
    assert basis.entry(w("2100"), w("1200")) == PolyQ([0, 1])
    assert basis.entry(w("1200"), w("0102")) == PolyQ([0, 1, 0, 1])
    assert basis.entry(w("1200"), w("2100")) == PolyQ.ZERO
    assert basis.entry(w("0012"), w("0012")) == PolyQ.ONE


def test_regular_basis_is_normalized_kl(engine_a2):
    system = engine_a2.system
    basis = engine_a2.basis([])
    assert basis.entry(0, system.w0) == PolyQ.monomial(3)
    assert basis.entry(0, system.generator(1)) == PolyQ.monomial(1)
    assert basis.q1_coefficient(system.generator(1), 0) == 1


def test_klv_golden_entries(engine_a3, weight):
    klv = engine_a3.klv([3])
    w = lambda text: weight(engine_a3, [3], text)
    assert klv.p(w("0012"), w("0210")) == PolyQ([0, 0, 0, -1])
    assert klv.p(w("1002"), w("2010")) == PolyQ([0, 0, 1])
    assert klv.p(w("2010"), w("1002")) == PolyQ.ZERO


def test_klv_row_of_longest_weight(engine_a3, weight):
    klv = engine_a3.klv([3])
    w = lambda text: weight(engine_a3, [3], text)
    expected = {
        w("0012"): PolyQ.ONE,
        w("0102"): PolyQ([0, -1]),
        w("0021"): PolyQ([0, -1]),
        w("1200"): PolyQ([0, 0, 1]),
        w("0120"): PolyQ([0, 0, 1]),
        w("0201"): PolyQ([0, 0, 1]),
        w("0210"): PolyQ([0, 0, 0, -1]),
    }
    assert klv.row(w("0012")) == expected
    assert klv.d(w("0012")) == 3


def test_inverse_is_exact(engine_a3):
    for J in ([], [3], [2], [1, 3]):
        basis = engine_a3.basis(J)
        assert identity_defects(basis, invert_unitriangular(basis.index, basis)) == []
    matrix, table = engine_a3.parabolic([3])
    assert identity_defects(matrix, table.rows) == []


def test_klv_signs(engine_a3):
    system = engine_a3.system
    klv = engine_a3.klv([2])
    for x in klv.index:
        for y, poly in klv.row(x).items():
            gap = int(system.length[x] - system.length[y])
            sign = 1 if gap % 2 == 0 else -1
            for power, c in poly.terms():
                assert power <= gap and (gap - power) % 2 == 0
                assert sign * c > 0


def test_canonical_basis_bar_invariance(engine_a3):
    algebra = HeckeAlgebra(engine_a3.system, engine_a3.kl)
    assert bar_invariance_violations(algebra, engine_a3.basis([3])) == []
    assert bar_invariance_violations(algebra, engine_a3.basis([1, 3])) == []


def test_hecke_quadratic_relation(engine_a2):
    system = engine_a2.system
    algebra = HeckeAlgebra(system, engine_a2.kl)
    s = system.generator(1)
    assert algebra.canonical(s) == {0: V, s: LaurentV.ONE}
    assert algebra.structure_constants(s, s) == {s: V + V_INV}
    for y in range(system.order):
        assert algebra.is_bar_invariant(algebra.canonical(y))


def test_hecke_product_with_longest(engine_a2):
    system = engine_a2.system
    algebra = HeckeAlgebra(system, engine_a2.kl)
    w0 = system.w0
    product = hecke_structure_constants(algebra, system.generator(2), w0)
    assert product == {w0: V + V_INV}


def test_canonical_basis_column(engine_a3, weight):
    basis = engine_a3.basis([3])
    w = lambda text: weight(engine_a3, [3], text)
    q, q2, q3 = PolyQ([0, 1]), PolyQ([0, 0, 1]), PolyQ([0, 0, 0, 1])
    expected = {
        w("0102"): PolyQ.ONE,
        w("1002"): q, w("0120"): q, w("0201"): q,
        w("1200"): q + q3,
        w("1020"): q2, w("0210"): q2, w("2001"): q2,
        w("2100"): q2 + PolyQ.monomial(4),
        w("2010"): q3,
    }
    assert basis.column(w("0102")) == expected


# Columna de cada b_y en la base estándar: y -> {x: coeficientes de B[x][y]}
SINGULAR_S3_BASIS = {
    "2100": {},
    "1200": {"2100": [0, 1]},
    "2010": {"2100": [0, 1]},
    "1020": {"1200": [0, 1], "2010": [0, 1], "2100": [0, 0, 1]},
    "0210": {"2010": [0, 1], "1200": [0, 1], "2100": [0, 0, 1]},
    "2001": {"2010": [0, 1], "2100": [0, 0, 1]},
    "1002": {"1020": [0, 1], "2001": [0, 1], "2010": [0, 0, 1], "1200": [0, 0, 1],
             "2100": [0, 0, 0, 1]},
    "0120": {"1020": [0, 1], "0210": [0, 1], "2010": [0, 0, 1], "1200": [0, 0, 1],
             "2100": [0, 0, 0, 1]},
    "0201": {"2001": [0, 1], "0210": [0, 1], "2010": [0, 0, 1], "1200": [0, 0, 1],
             "2100": [0, 0, 0, 1]},
    "0102": {"1002": [0, 1], "0120": [0, 1], "0201": [0, 1], "1200": [0, 1, 0, 1],
             "1020": [0, 0, 1], "0210": [0, 0, 1], "2001": [0, 0, 1],
             "2100": [0, 0, 1, 0, 1], "2010": [0, 0, 0, 1]},
    "0021": {"0120": [0, 1], "0201": [0, 1], "1020": [0, 0, 1], "0210": [0, 0, 1],
             "2001": [0, 0, 1], "1200": [0, 0, 0, 1], "2010": [0, 0, 0, 1],
             "2100": [0, 0, 0, 0, 1]},
    "0012": {"0102": [0, 1], "0021": [0, 1], "1002": [0, 0, 1], "0120": [0, 0, 1],
             "0201": [0, 0, 1], "1020": [0, 0, 0, 1], "0210": [0, 0, 0, 1],
             "2001": [0, 0, 0, 1], "1200": [0, 0, 0, 0, 1], "2010": [0, 0, 0, 0, 1],
             "2100": [0, 0, 0, 0, 0, 1]},
}

# Fila de cada v_x en la base canónica: x -> {y: coeficientes de p(x,y)}
SINGULAR_S3_KLV = {
    "2100": {},
    "1200": {"2100": [0, -1]},
    "2010": {"2100": [0, -1]},
    "1020": {"1200": [0, -1], "2010": [0, -1], "2100": [0, 0, 1]},
    "0210": {"2010": [0, -1], "1200": [0, -1], "2100": [0, 0, 1]},
    "2001": {"2010": [0, -1]},
    "1002": {"1020": [0, -1], "2001": [0, -1], "2010": [0, 0, 1]},
    "0120": {"1020": [0, -1], "0210": [0, -1], "2010": [0, 0, 1], "1200": [0, 0, 1],
             "2100": [0, 0, 0, -1]},
    "0201": {"2001": [0, -1], "0210": [0, -1], "2010": [0, 0, 1]},
    "0102": {"1002": [0, -1], "0120": [0, -1], "0201": [0, -1], "1200": [0, -1],
             "1020": [0, 0, 1], "0210": [0, 0, 1], "2001": [0, 0, 1],
             "2010": [0, 0, 0, -1]},
    "0021": {"0120": [0, -1], "0201": [0, -1], "0210": [0, 0, 1]},
    "0012": {"0102": [0, -1], "0021": [0, -1], "1200": [0, 0, 1], "0120": [0, 0, 1],
             "0201": [0, 0, 1], "0210": [0, 0, 0, -1]},
}


def test_singular_basis_full_table(engine_a3, weight):
    basis = engine_a3.basis([3])
    w = lambda text: weight(engine_a3, [3], text)
    assert len(SINGULAR_S3_BASIS) == len(basis.index) == 12
    for y, column in SINGULAR_S3_BASIS.items():
        expected = {w(x): PolyQ(coeffs) for x, coeffs in column.items()}
        expected[w(y)] = PolyQ.ONE
        assert basis.column(w(y)) == expected, y


def test_klv_full_table(engine_a3, weight):
    klv = engine_a3.klv([3])
    w = lambda text: weight(engine_a3, [3], text)
    assert len(SINGULAR_S3_KLV) == 12
    for x, row in SINGULAR_S3_KLV.items():
        expected = {w(y): PolyQ(coeffs) for y, coeffs in row.items()}
        expected[w(x)] = PolyQ.ONE
        assert klv.row(w(x)) == expected, x
