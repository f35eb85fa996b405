"""Células KL, función a e involuciones de Duflo."""

import pytest

from Audit.bounds_monitor import BoundsMonitor
from Core.cells import CellKind, a_values_rsk, cell_partition, compute_cells
from Core.errors import NotTypeA
from Core.tableau import YoungTableau, rsk


def test_rsk_shape_and_tableaux():
    result = rsk([2, 1, 4, 3])
    assert result.shape == (2, 2)
    assert result.insertion == [[1, 3], [2, 4]]
    assert result.recording == [[1, 3], [2, 4]]
    assert rsk([1, 2, 3]).insertion.shape_statistic() == 0
    assert rsk([3, 2, 1]).insertion.shape_statistic() == 3
    with pytest.raises(NotTypeA):
        rsk([1, 1, 2])
    with pytest.raises(ValueError):
        YoungTableau([[1], [2, 3]])


def test_a3_cell_counts(engine_a3):
    cells = engine_a3.cells
    assert len(cells.cells(CellKind.LEFT)) == 10
    assert len(cells.cells(CellKind.RIGHT)) == 10
    assert len(cells.cells(CellKind.TWOSIDED)) == 5
    assert cells.a_method == "rsk"


def test_a2_cell_partition(engine_a2):
    system = engine_a2.system
    left = cell_partition(system, engine_a2.kl, CellKind.LEFT)
    twosided = cell_partition(system, engine_a2.kl, CellKind.TWOSIDED)
    assert len(left) == system.order
    assert len(set(left)) == 4
    assert len(set(twosided)) == 3
    assert left[system.generator(1)] == left[system.from_word([2, 1])]
    assert left[system.generator(1)] != left[system.generator(2)]


def test_cells_match_robinson_schensted(engine_a3):
    assert BoundsMonitor(engine_a3).rsk_agreement().ok


def test_a_function_extremes(engine_a3):
    system, cells = engine_a3.system, engine_a3.cells
    assert cells.a(0) == 0
    assert cells.a(system.w0) == 6
    assert cells.left_cell(0) == [0]
    assert cells.left_cell(system.w0) == [system.w0]
    for label, members in cells.cells(CellKind.TWOSIDED).items():
        assert len({cells.a(x) for x in members}) == 1


def test_duflo_involutions(engine_a3):
    system, cells = engine_a3.system, engine_a3.cells
    left = cells.cells(CellKind.LEFT)
    assert set(cells.duflo) == set(left)
    for label, d in cells.duflo.items():
        assert d in left[label]
        assert system.inv(d) == d
        assert cells.a(d) == int(system.length[d]) - 2 * engine_a3.kl.P(0, d).degree


def test_preorder_queries(engine_a3):
    system, cells = engine_a3.system, engine_a3.cells
    s1 = system.generator(1)
    assert cells.leq(CellKind.TWOSIDED, 0, system.w0)
    assert cells.leq(CellKind.TWOSIDED, s1, system.w0)
    assert cells.leq(CellKind.LEFT, s1, s1)
    assert not cells.leq(CellKind.TWOSIDED, system.w0, 0)


def test_structure_constants_agree_with_rsk(engine_a3):
    system, kl = engine_a3.system, engine_a3.kl
    data = compute_cells(system, kl, a_method="structure_constants")
    assert data.a_values == a_values_rsk(system)
    assert data.partition_left == engine_a3.cells.partition_left


def test_b2_cells(engine_b2):
    system, cells = engine_b2.system, engine_b2.cells
    assert cells.a_method == "structure_constants"
    assert len(cells.cells(CellKind.TWOSIDED)) == 3
    assert cells.a(0) == 0
    assert cells.a(system.w0) == 4
    assert cells.a(system.generator(1)) == 1


@pytest.mark.slow
def test_a4_cells_match_robinson_schensted(engine_a4):
    assert len(engine_a4.cells.cells(CellKind.TWOSIDED)) == 7
    assert BoundsMonitor(engine_a4).rsk_agreement().ok
