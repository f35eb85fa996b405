"""Enumeración de grupos de Weyl, orden de Bruhat y secuencias de pesos."""

import pytest

from Core.coxeter import CosetFlavor, build_system, format_weight
from Core.errors import NotACosetRep, NotTypeA, RankTooLarge, UnsupportedType


@pytest.mark.parametrize("cartan_type, rank, order, top", [
    ("A", 1, 2, 1),
    ("A", 2, 6, 3),
    ("A", 3, 24, 6),
    ("B", 2, 8, 4),
    ("C", 3, 48, 9),
    ("D", 4, 192, 12),
])
def test_group_orders(cartan_type, rank, order, top):
    system = build_system(cartan_type, rank)
    assert system.order == order
    assert int(system.length[system.w0]) == top
    assert system.inv(system.w0) == system.w0
    assert system.length[0] == 0


def test_invalid_groups():
    with pytest.raises(UnsupportedType):
        build_system("E", 6)
    with pytest.raises(UnsupportedType):
        build_system("D", 3)
    with pytest.raises(RankTooLarge):
        build_system("A", 8, max_order=40320)


def test_words_and_parsing(a3):
    assert a3.word_label(0) == "e"
    s1s2 = a3.from_word([1, 2])
    assert a3.parse_element("s1s2") == s1s2
    assert a3.parse_element("1,2") == s1s2
    assert a3.parse_element("e") == 0
    assert a3.word_label(a3.from_word([3, 1])) == "s1s3"
    with pytest.raises(ValueError):
        a3.parse_element("xyz")
    with pytest.raises(ValueError):
        a3.from_word([4])


def test_descents_and_inverse(a3):
    x = a3.from_word([1, 2])
    assert a3.right_descents(x) == [2]
    assert a3.left_descents(x) == [1]
    assert a3.inv(x) == a3.from_word([2, 1])
    assert a3.multiply(x, a3.inv(x)) == 0
    info = a3.element_calculus(x).to_dict()
    assert info["length"] == 2
    assert info["shortlex_word"] == [1, 2]


def test_bruhat_order(a3):
    s1, s2 = a3.generator(1), a3.generator(2)
    assert a3.bruhat_leq(s1, a3.from_word([1, 2]))
    assert a3.bruhat_leq(s1, a3.from_word([2, 1]))
    assert not a3.bruhat_leq(s1, s2)
    assert a3.lower_ideal(a3.w0).sum() == 24
    assert len(a3.bruhat_lower(a3.from_word([1, 2, 1]))) == 6
    assert all(a3.bruhat_leq(0, x) and a3.bruhat_leq(x, a3.w0) for x in range(a3.order))


def test_parabolic_subsets(a3):
    J = a3.parabolic([1, 3])
    assert J.order_J == 4
    assert J.w0J == a3.from_word([1, 3])
    assert J.label() == "1,3"
    assert a3.parabolic([]).label() == "-"
    assert a3.hat_involution(a3.parabolic([1])).J == frozenset({3})
    with pytest.raises(ValueError):
        a3.parabolic([5])


@pytest.mark.parametrize("J, size", [((), 24), ((3,), 12), ((2,), 12), ((1, 3), 6), ((1, 2, 3), 1)])
def test_coset_representatives(a3, J, size):
    P = a3.parabolic(J)
    assert len(a3.x_lambda(P)) == size
    assert len(a3.x_mu(P)) == size
    assert all(a3.is_longest_rep(x, P) for x in a3.x_lambda(P))
    assert all(a3.is_shortest_rep(x, P) for x in a3.x_mu(P))


def test_zero_block_index(a3):
    everything = a3.parabolic([1, 2, 3])
    index = a3.coset_representatives(everything, a3.parabolic([1]), CosetFlavor.X_MU_LAMBDA)
    assert index == []


def test_weight_sequences(a3):
    J = a3.parabolic([3])
    assert a3.base_sequence(J) == (2, 1, 0, 0)
    assert a3.weight_sequence(a3.generator(3), J) == (2, 1, 0, 0)
    assert a3.weight_sequence(a3.from_word([1, 3]), J) == (1, 2, 0, 0)
    assert a3.parse_weight_sequence([0, 0, 1, 2], J) == a3.w0
    assert a3.parse_element("1200", J) == a3.from_word([1, 3])
    assert a3.base_sequence(a3.parabolic([1, 3])) == (1, 1, 0, 0)
    with pytest.raises(NotACosetRep):
        a3.weight_sequence(0, J)
    with pytest.raises(NotACosetRep):
        a3.parse_weight_sequence([3, 0, 0, 0], J)


def test_type_a_only_helpers():
    b2 = build_system("B", 2)
    with pytest.raises(NotTypeA):
        b2.one_line(0)
    with pytest.raises(NotTypeA):
        b2.base_sequence(b2.parabolic([1]))


def test_format_weight():
    assert format_weight((1, 2, 0, 0)) == "1200"
    assert format_weight((10, 0)) == "(10,0)"
