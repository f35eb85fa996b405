"""Carcaj Ext¹ desde el coeficiente q¹ de la matriz de descomposición."""

import pytest

from Audit.ext_quiver import ext1_quiver
from Core.errors import UnsupportedBlock


A3_S3_EDGES = [
    "1200-2100", "2010-2100", "1020-1200", "1020-2010", "0210-2010",
    "0210-1200", "2001-2010", "0120-1020", "0120-0210", "1002-1020",
    "1002-2001", "0201-2001", "0201-0210", "0102-0120", "0102-1002",
    "0102-1200", "0102-0201", "0021-0120", "0021-0201", "0012-0102",
    "0012-0021",
]


@pytest.fixture(scope="module")
def quiver_s3(engine_a3):
    return ext1_quiver(engine_a3, [3])


def test_golden_edges(quiver_s3):
    expected = sorted(tuple(sorted(edge.split("-"))) for edge in A3_S3_EDGES)
    assert quiver_s3.edge_labels() == expected
    assert len(quiver_s3.edges) == 21
    assert all(c == 1 for _, _, c in quiver_s3.edges)


def test_neighbors(quiver_s3, engine_a3, weight):
    w = lambda text: weight(engine_a3, [3], text)
    assert quiver_s3.neighbors(w("0210")) == {w("2010"), w("1200"), w("0120"), w("0201")}
    assert quiver_s3.has_edge(w("0012"), w("0102"))
    assert quiver_s3.has_edge(w("0102"), w("0012"))
    assert not quiver_s3.has_edge(w("2100"), w("0012"))
    assert quiver_s3.degree(w("0012")) == 2


def test_pd_annotations(quiver_s3, engine_a3, weight):
    assert quiver_s3.pd_simple[weight(engine_a3, [3], "2100")] == 6
    assert quiver_s3.pd_simple[weight(engine_a3, [3], "0012")] == 3


def test_regular_quiver_is_bruhat_cover_graph(engine_a2):
    quiver = ext1_quiver(engine_a2)
    assert len(quiver.vertices) == 6
    assert len(quiver.edges) == 8
    system = engine_a2.system
    for x, y, _ in quiver.edges:
        assert abs(int(system.length[x]) - int(system.length[y])) == 1


def test_parabolic_quiver(engine_a3):
    quiver = ext1_quiver(engine_a3, [], [3])
    assert len(quiver.vertices) == 12
    assert quiver.edges


def test_both_subsets_unsupported(engine_a3):
    with pytest.raises(UnsupportedBlock):
        ext1_quiver(engine_a3, [1], [3])


def test_serialization(quiver_s3):
    data = quiver_s3.to_dict()
    assert len(data["vertices"]) == 12
    assert len(data["edges"]) == 21
    dot = quiver_s3.to_dot()
    assert dot.startswith("graph ext1 {")
    assert dot.count(" -- ") == 21
    assert dot.rstrip().endswith("}")
