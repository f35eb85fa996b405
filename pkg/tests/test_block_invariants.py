"""Dimensiones proyectivas, longitudes graduadas y dimensión global por bloque."""

import pytest

from Core.block_invariants import StructuralKind, global_dimension, invariant_report
from Core.errors import ZeroBlock


# peso: (pd Δ, pd L, palabra reducida)
A3_S3 = {
    "2100": (0, 6, "s3"),
    "1200": (1, 5, "s1s3"),
    "2010": (1, 6, "s2s3"),
    "1020": (2, 5, "s2s1s3"),
    "0210": (2, 6, "s1s2s3"),
    "2001": (1, 5, "s3s2s3"),
    "1002": (2, 4, "s3s2s1s3"),
    "0120": (3, 5, "s1s2s1s3"),
    "0201": (2, 5, "s3s1s2s3"),
    "0102": (3, 4, "s3s1s2s1s3"),
    "0021": (2, 4, "s2s3s1s2s3"),
    "0012": (3, 3, "s3s2s3s1s2s3"),
}

A3_S2 = {
    "2110": (0, 6), "1210": (1, 6), "2101": (1, 6), "1201": (2, 5),
    "1120": (1, 5), "2011": (1, 5), "1021": (2, 5), "1102": (2, 4),
    "0211": (2, 4), "0121": (3, 4), "1012": (3, 4), "0112": (3, 3),
}

A3_S1S3 = {
    "1100": (0, 4), "1010": (1, 4), "0110": (1, 3),
    "1001": (1, 3), "0101": (2, 3), "0011": (2, 2),
}


def _by_label(report):
    return {r.label: r for r in report.records}


def test_singular_block_s3(engine_a3):
    system = engine_a3.system
    report = invariant_report(engine_a3, engine_a3.block([3]))
    records = _by_label(report)
    assert set(records) == set(A3_S3)
    for label, (pd_standard, pd_simple, word) in A3_S3.items():
        record = records[label]
        assert record.pd["Delta"] == pd_standard, label
        assert record.pd["L"] == pd_simple, label
        assert record.x == system.parse_element(word)


@pytest.mark.parametrize("J, table", [([2], A3_S2), ([1, 3], A3_S1S3)])
def test_singular_block_tables(engine_a3, J, table):
    records = _by_label(engine_a3.report(engine_a3.block(J)))
    assert {label: (r.pd["Delta"], r.pd["L"]) for label, r in records.items()} == table


@pytest.mark.parametrize("J, value", [([], 12), ([3], 6), ([1, 3], 4), ([1, 2, 3], 0)])
def test_global_dimension(engine_a3, J, value):
    result = global_dimension(engine_a3, engine_a3.block(J))
    assert result.value == value
    assert result.semisimple == (value == 0)


def test_principal_block(engine_a3):
    system = engine_a3.system
    report = engine_a3.report(engine_a3.block())
    assert report.pd(StructuralKind.INJECTIVE, 0) == 12
    assert report.pd(StructuralKind.INJECTIVE, system.w0) == 0
    for x in range(system.order):
        length = int(system.length[x])
        assert report.pd(StructuralKind.STANDARD, x) == length
        assert report.pd(StructuralKind.SIMPLE, x) == 12 - length
        assert report.pd(StructuralKind.PROJECTIVE, x) == 0
        assert report.pd(StructuralKind.TILTING, x) == engine_a3.a(x)
        assert report.pd(StructuralKind.INJECTIVE, x) == 2 * engine_a3.a(system.multiply(system.w0, x))
        assert report.gl(StructuralKind.PROJECTIVE, x) == 6 + length
    assert report.sets.projective_injectives == [system.w0]


def test_parabolic_block(engine_a3):
    system = engine_a3.system
    report = engine_a3.report(engine_a3.block([], [3]))
    assert len(report.records) == 12
    for record in report.records:
        assert record.pd["L"] == 10 - int(system.length[record.x])
        assert record.weight is None


def test_projective_dimensions_are_nonnegative(engine_a3):
    for block in engine_a3.nonzero_blocks():
        report = engine_a3.report(block)
        for record in report.records:
            assert all(v >= 0 for v in record.pd.values())
            assert all(v >= 0 for v in record.gl.values())
            assert record.gl["L"] == 0


def test_distinguished_sets(engine_a3, weight):
    report = engine_a3.report(engine_a3.block([3]))
    assert report.sets.S_set == [weight(engine_a3, [3], "2100")]
    assert report.sets.projective_injectives == [weight(engine_a3, [3], "0012")]


def test_zero_block(engine_a3):
    block = engine_a3.block([1, 2, 3], [1])
    assert block.is_zero
    with pytest.raises(ZeroBlock):
        engine_a3.report(block)
    assert all(not b.is_zero for b in engine_a3.nonzero_blocks())


def test_report_serialization(engine_a3):
    report = engine_a3.report(engine_a3.block([1, 3]))
    data = report.to_dict()
    assert data["block"] == {"type": "A", "rank": 3, "singular": [1, 3], "parabolic": [], "size": 6}
    assert data["global_dimension"] == {"value": 4, "semisimple": False}
    assert len(data["elements"]) == 6
    assert '"Delta"' in report.to_json()


@pytest.mark.parametrize("fixture", ["engine_a2", "engine_a3"])
def test_global_dimension_is_max_simple_pd(request, fixture):
    engine = request.getfixturevalue(fixture)
    for block in engine.nonzero_blocks():
        report = engine.report(block)
        top = max(report.column(StructuralKind.SIMPLE).values())
        assert report.global_dimension.value == top, block.label()
