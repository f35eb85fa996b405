"""Fórmulas cerradas para s_λ y d_λ frente al cálculo KLV."""

import pytest

from Core.closed_forms import (HERMITIAN_SYMMETRIC, SINGULAR_FAMILY, SMALL_A, closed_forms,
                               family_cells, family_simple_dimensions, hermitian_symmetric,
                               in_singular_family, right_cell_rule)


def test_hermitian_symmetric_detection(a3):
    assert hermitian_symmetric("A", 3, a3.parabolic([1, 3]))
    assert hermitian_symmetric("A", 3, a3.parabolic([1, 2]))
    assert not hermitian_symmetric("A", 3, a3.parabolic([3]))
    assert not hermitian_symmetric("A", 3, a3.parabolic([]))
    assert in_singular_family("A", 3, a3.parabolic([3]))
    assert not in_singular_family("A", 3, a3.parabolic([2]))


@pytest.mark.parametrize("J", [[1, 3], [1, 2], [2, 3]])
def test_hermitian_symmetric_forms(engine_a3, J):
    forms = closed_forms(engine_a3, J)
    assert forms.provenance == HERMITIAN_SYMMETRIC
    computed = engine_a3.sd(J)
    assert forms.s == computed.s
    assert forms.d == computed.d


def test_small_a_forms(engine_a2):
    forms = closed_forms(engine_a2, [1])
    assert forms.provenance in (HERMITIAN_SYMMETRIC, SMALL_A)
    assert forms.s == engine_a2.sd([1]).s


def test_singular_family_forms(engine_a3):
    forms = closed_forms(engine_a3, [3])
    assert forms.provenance == SINGULAR_FAMILY
    assert forms.d is None
    assert forms.s == engine_a3.sd([3]).s


def test_family_cells(engine_a3, weight):
    J = engine_a3.system.parabolic([3])
    cells = family_cells(engine_a3, J)
    assert len(cells.x) == 3
    assert len(cells.x_prime) == 3
    assert set(cells.x) <= set(cells.L1)
    assert set(cells.x_prime) == set(cells.L1_prime)
    labels = {engine_a3.weight_label(x, J) for x in cells.L1_prime}
    assert labels == {"1002", "0102", "0120"}


def test_right_cell_rule(engine_a3):
    for J in ([3], [1, 3]):
        assert right_cell_rule(engine_a3, J) == engine_a3.sd(J).s


@pytest.mark.parametrize("J", [[3], [1, 3]])
def test_family_helpers_accept_lists(engine_a3, J):
    subset = engine_a3.system.parabolic(J)
    assert right_cell_rule(engine_a3, J) == right_cell_rule(engine_a3, subset)
    if J == [3]:
        assert family_cells(engine_a3, J) == family_cells(engine_a3, subset)
        assert family_simple_dimensions(engine_a3, J) == engine_a3.sd(subset).s


def test_no_closed_form(engine_a3):
    assert closed_forms(engine_a3, []) is None
    assert closed_forms(engine_a3, [1]) is None


@pytest.mark.slow
@pytest.mark.parametrize("J", [[2, 3, 4], [1, 3, 4], [1, 2, 4], [1, 2, 3]])
def test_a4_hermitian_symmetric_forms(engine_a4, J):
    forms = closed_forms(engine_a4, J)
    computed = engine_a4.sd(J)
    assert forms.s == computed.s
    assert forms.d == computed.d


@pytest.mark.slow
def test_a4_singular_family(engine_a4):
    forms = closed_forms(engine_a4, [3, 4])
    assert forms.provenance == SINGULAR_FAMILY
    assert forms.s == engine_a4.sd([3, 4]).s
    assert right_cell_rule(engine_a4, [3, 4]) == engine_a4.sd([3, 4]).s
