"""Tablas de polinomios KL y coeficientes μ."""

import pytest

from Core.coxeter import build_system
from Core.kl_engine import KLEngine, KLTable, kl_table, mu_coefficient
from Core.polynomials import PolyQ


def test_rank_one(engine_a1):
    kl = engine_a1.kl
    assert kl.P(0, 1) == PolyQ.ONE
    assert kl.mu(0, 1) == 1
    assert kl.nontrivial_count() == 0


def test_a2_polynomials_are_trivial(engine_a2):
    kl, system = engine_a2.kl, engine_a2.system
    assert kl.nontrivial_count() == 0
    s1, s2 = system.generator(1), system.generator(2)
    assert kl.P(s1, s2) == PolyQ.ZERO
    assert kl.P(s1, system.w0) == PolyQ.ONE


def test_a3_singular_pairs(engine_a3):
    kl, system = engine_a3.kl, engine_a3.system
    singular = system.from_word([2, 1, 3, 2])
    transposition = system.from_word([1, 2, 3, 2, 1])
    assert kl.P(0, singular) == PolyQ([1, 1])
    assert kl.P(system.generator(2), singular) == PolyQ([1, 1])
    assert kl.P(0, transposition) == PolyQ([1, 1])
    assert kl.P(0, system.w0) == PolyQ.ONE


def test_a3_structural_properties(engine_a3):
    kl, system = engine_a3.kl, engine_a3.system
    for y in range(system.order):
        ly = int(system.length[y])
        for x in range(system.order):
            poly = kl.P(x, y)
            if not system.bruhat_leq(x, y):
                assert poly.is_zero()
                continue
            assert poly.coefficient(0) == 1
            assert all(c >= 0 for c in poly.coeffs)
            if x != y:
                assert 2 * poly.degree <= ly - int(system.length[x]) - 1


def test_mu_coefficients(engine_a3):
    kl, system = engine_a3.kl, engine_a3.system
    s2 = system.generator(2)
    assert mu_coefficient(kl, 0, s2) == 1
    assert kl.mu(s2, 0) == 1
    assert kl.mu(0, system.from_word([1, 2])) == 0
    assert kl.mu(system.generator(2), system.from_word([2, 1, 3, 2])) == 1
    for z, w, mu in kl.mu_pairs():
        assert system.bruhat_leq(z, w) and z != w
        assert mu == kl.mu(z, w) != 0


def test_payload_round_trip(engine_a3):
    kl, system = engine_a3.kl, engine_a3.system
    restored = KLTable.from_payload(system, kl.to_payload())
    assert restored.rows == kl.rows


def test_parallel_matches_sequential(engine_a3):
    system = engine_a3.system
    parallel = KLEngine(jobs=2).compute(system)
    assert parallel.rows == engine_a3.kl.rows


@pytest.mark.slow
def test_b3_nonnegativity():
    system = build_system("B", 3)
    kl = kl_table(system)
    assert kl.nontrivial_count() > 0
    for row in kl.rows:
        for poly in row.values():
            assert all(c >= 0 for c in poly.coeffs)
