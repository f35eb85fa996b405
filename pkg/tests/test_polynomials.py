"""Aritmética exacta de PolyQ y LaurentV."""

import pytest

from Core.errors import CoefficientOverflow
from Core.polynomials import INT64_LIMIT, LaurentV, PolyQ, V, V_INV


def test_polyq_arithmetic():
    one_plus_q = PolyQ([1, 1])
    one_minus_q = PolyQ([1, -1])
    assert one_plus_q * one_minus_q == PolyQ([1, 0, -1])
    assert one_plus_q + one_minus_q == 2
    assert (one_plus_q - one_plus_q).is_zero()
    assert -one_plus_q == PolyQ([-1, -1])
    assert 3 * one_plus_q == PolyQ([3, 3])


def test_polyq_degree_and_normalization():
    assert PolyQ.ZERO.degree is None
    assert PolyQ([0, 0, 5, 0, 0]).degree == 2
    assert PolyQ.ONE.is_one()
    assert PolyQ([1, 1]).kl_normalized(3) == PolyQ([0, 1, 0, 1])
    assert PolyQ.ONE.kl_normalized(2) == PolyQ.monomial(2)
    with pytest.raises(ValueError):
        PolyQ([1, 0, 1]).kl_normalized(3)


def test_polyq_shift_and_signs():
    assert PolyQ([1, 2]).shift(2) == PolyQ([0, 0, 1, 2])
    assert PolyQ([1, -1, 1]).has_alternating_signs()
    assert not PolyQ([1, 1]).has_alternating_signs()
    assert PolyQ([2, 1, 1]).evaluate(2) == 8


def test_polyq_rendering():
    assert str(PolyQ([0, 1, 0, 2])) == "q + 2q^3"
    assert str(PolyQ([0, 0, 0, -1])) == "-q^3"
    assert str(PolyQ([1, -1])) == "1 - q"
    assert str(PolyQ.ZERO) == "0"


def test_coefficient_overflow_is_rejected():
    with pytest.raises(CoefficientOverflow):
        PolyQ([INT64_LIMIT])
    big = PolyQ([1 << 62])
    with pytest.raises(CoefficientOverflow):
        big * 2


def test_laurent_bar_involution():
    element = LaurentV({1: 1, -2: 3})
    assert element.bar() == LaurentV({-1: 1, 2: 3})
    assert element.bar().bar() == element
    assert (V + V_INV).is_bar_invariant()
    assert not V.is_bar_invariant()
    assert V * V_INV == LaurentV.ONE


def test_laurent_to_poly():
    assert LaurentV.from_poly(PolyQ([1, 2]), shift=1) == LaurentV({1: 1, 2: 2})
    assert LaurentV({0: 1, 2: -1}).to_poly() == PolyQ([1, 0, -1])
    with pytest.raises(ValueError):
        V_INV.to_poly()
