from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from plates.combinatorics import (
    CompositeSetPartition,
    OrderedSetPartition,
    dims,
    enumerate_osps,
    enumerate_standard_csps,
)
from plates.errors import DomainError, ResourceError
from plates.grammar import parse_csp, parse_osp
from plates.plate_algebra import (
    Basis,
    DirectedTree,
    PlateVector,
    Space,
    change_of_basis,
    change_of_basis_matrix,
    convolution_expand,
    kept_in,
    path_tree,
    project,
    straighten,
    straighten_hatP,
    straighten_theorem_form,
    theorem_terms,
    tree_expand,
    weyl_chamber_expansion,
)

from strategies import osps, standard_csps

O = OrderedSetPartition.of


def plates(n, *pairs):
    """PlateVector over the plate basis from ("label", coef) pairs."""
    return PlateVector(n, Basis.plate, [(parse_osp(s), c) for s, c in pairs])


def canon(n, *pairs):
    return PlateVector(n, Basis.canonical, [(parse_csp(s, n), c) for s, c in pairs])


MATRIX_N3 = [
    [1, 0, 0, 0, 0, 0, -1, -1, 0, -1, 0, 0, 1],
    [0, 1, 0, 0, 0, 0, 0, 0, -1, 1, 0, -1, -1],
    [0, 0, 1, 0, 0, 0, 0, 1, 0, 0, -1, 0, -1],
    [0, 0, 0, 1, 0, 0, 1, 0, -1, 0, -1, 0, -1],
    [0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 1],
    [0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, -1, -1],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
]


# -- vectors -------------------------------------------------------------------


def test_vector_arithmetic_and_zero_pruning():
    a = plates(2, ("1|2", 1), ("2|1", 2))
    b = plates(2, ("2|1", -2), ("1,2", Fraction(1, 3)))
    s = a + b
    assert len(s) == 2 and s[O(1, 2)] == 1 and s[O((1, 2))] == Fraction(1, 3)
    assert (a - a) == PlateVector.zero(2)
    assert 2 * a == a + a
    with pytest.raises(DomainError):
        a + canon(2, ("1|2", 1))


def test_vector_label_validation():
    with pytest.raises(DomainError):
        plates(3, ("1|2", 1))
    with pytest.raises(DomainError):
        PlateVector(2, Basis.canonical, {CompositeSetPartition.of([2, 1]): 1})


def test_vector_json_round_trip():
    v = canon(3, ("1|3", Fraction(-2, 3)), ("1,2|3", 1), ("1*2*3", 5))
    text = v.to_json()
    assert PlateVector.from_json(text) == v
    assert [t["label"] for t in v.to_dict()["terms"]] == ["1,2|3", "1|3", "1*2*3"]


def test_vector_lines_use_lex_order():
    v = plates(3, ("3|2|1", 1), ("1,2,3", -1))
    assert v.lines() == ["-1\t1,2,3", "1\t3|2|1"]


# -- convolution and trees -----------------------------------------------------


def test_convolution_figure_example():
    got = convolution_expand(parse_csp("1*2|3"))
    assert got == plates(3, ("1|2|3", 1), ("2|1|3", 1), ("2|3|1", 1), ("1,2|3", -1), ("2|1,3", -1))


def test_convolution_single_factor_and_all_singletons():
    assert convolution_expand(parse_csp("1|2|3")) == plates(3, ("1|2|3", 1))
    full = convolution_expand(parse_csp("1*2*3"))
    assert len(full) == 13
    assert all(c == (-1) ** (3 - len(pi)) for pi, c in full)


def test_tree_expansion_examples():
    assert tree_expand(DirectedTree.parse("1>2,1>3")) == plates(3, ("1|2|3", 1), ("1|3|2", 1), ("1|2,3", -1))
    assert tree_expand(DirectedTree.parse("1>2,2>3")) == plates(3, ("1|2|3", 1))


def test_tree_expansion_n4_example():
    expected = plates(
        4,
        ("1|2|3|4", 1), ("1|2|4|3", 1), ("1|4|2|3", 1), ("2|1|3|4", 1), ("2|1|4|3", 1),
        ("1,2|3|4", -1), ("1,2|4|3", -1), ("1|2,4|3", -1), ("1|2|3,4", -1), ("2|1|3,4", -1),
        ("1,2|3,4", 1),
    )
    t = DirectedTree.parse("1>3,2>3,1>4")
    assert tree_expand(t) == expected
    assert tree_expand(t, Space.P) == expected
    assert tree_expand(t, Space.P1) == plates(4, *[(s, 1) for s in ["1|2|3|4", "1|2|4|3", "1|4|2|3", "2|1|3|4", "2|1|4|3"]])


def test_seven_vertex_tree_counts():
    t = DirectedTree.parse("1>3,2>3,2>4,2>5,3>6,7>3")
    assert len(tree_expand(t, Space.hatP)) == 653
    assert len(tree_expand(t, Space.P1)) == 124


def test_block_tree_is_a_product_of_two_block_plates():
    # the block version with a single edge is the plate [[S, T]] itself
    t = DirectedTree((((1, 2), (3,)),))
    assert tree_expand(t) == plates(3, ("1,2|3", 1))


def test_tree_validation():
    with pytest.raises(DomainError):
        DirectedTree.from_pairs([(1, 2), (2, 1)])
    with pytest.raises(DomainError):
        DirectedTree.from_pairs([(1, 2), (3, 4)])
    with pytest.raises(DomainError):
        DirectedTree.from_pairs([(1, 2), (2, 3), (3, 1)])


@given(st.permutations(range(1, 7)))
def test_path_tree_is_its_permutation_in_P1(order):
    got = tree_expand(path_tree(order), Space.P1)
    assert got == PlateVector.unit(OrderedSetPartition.permutation(order))


def test_weyl_chamber_examples():
    w = weyl_chamber_expansion
    assert w((2, 1, 3)) == PlateVector(3, Basis.dual_face, {O(2, 1, 3): 1, O((1, 2), 3): -1})
    assert w((1, 2, 3)) == PlateVector(3, Basis.dual_face, {O(1, 2, 3): 1})
    assert w((3, 2, 1)) == PlateVector(
        3, Basis.dual_face, {O(3, 2, 1): 1, O((2, 3), 1): -1, O(3, (1, 2)): -1, O((1, 2, 3)): 1}
    )


# -- change of basis -----------------------------------------------------------


def test_matrix_n3_known_entries():
    assert change_of_basis_matrix(3) == MATRIX_N3
    assert change_of_basis_matrix(1) == [[1]]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_matrix_unitriangular(n):
    m = change_of_basis_matrix(n)
    size = len(m)
    assert size == dims(n).ordered_bell
    assert all(m[i][i] == 1 for i in range(size))
    assert all(m[i][j] == 0 for i in range(size) for j in range(i))


def test_matrix_inverse_n4():
    cb = change_of_basis(4)
    inv = cb.inverse_dense()
    m = cb.dense()
    size = len(m)
    for i in range(size):
        for j in range(size):
            assert sum(m[i][k] * inv[k][j] for k in range(size)) == (i == j)


def test_matrix_cap():
    with pytest.raises(ResourceError):
        change_of_basis_matrix(9)


# -- straightening -------------------------------------------------------------


def test_straighten_213_in_each_space():
    v = plates(3, ("2|1|3", 1))
    assert straighten(v, Space.P) == canon(3, ("1,2|3", 1), ("1|2,3", 1), ("1|2|3", -1), ("1|3|2", -1))
    assert straighten(v, Space.P1) == canon(3, ("1|2|3", -1), ("1|3|2", -1))
    assert straighten(v, Space.hatP1) == canon(3, ("1|2|3", -1), ("1|3|2", -1), ("2*1|3", 1))
    assert straighten(v, Space.hatP) == canon(
        3, ("1,2|3", 1), ("1|2,3", 1), ("1|2|3", -1), ("1|3|2", -1), ("2*1|3", 1)
    )


@pytest.mark.parametrize("space", list(Space))
def test_standard_plate_straightens_to_itself(space):
    v = plates(3, ("1|2|3", 1))
    assert straighten(v, space) == canon(3, ("1|2|3", 1))


def test_theorem_form_worked_example_terms():
    raw = theorem_terms(O(2, 1, 3), 2)
    got = {(s, tuple(str(f) for f in fs)) for s, fs in raw}
    assert got == {
        (1, ("1,2|3",)),
        (-1, ("1|2|3",)),
        (-1, ("1|3|2",)),
        (1, ("1|2,3",)),
        (1, ("1|3", "2")),
    }
    assert straighten_theorem_form(O(2, 1, 3), 2) == straighten_hatP(plates(3, ("2|1|3", 1)))
    assert straighten_theorem_form(O(1, 2, 3), 1) == canon(3, ("1|2|3", 1))


def test_theorem_form_first_group_32145():
    raw = theorem_terms(parse_osp("3|2|1|4|5"), 3)
    first = {(s, tuple(sorted(str(f) for f in fs))) for s, fs in raw if str(fs[0]) == "1|4|5"}
    assert first == {
        (1, ("1|4|5", "2,3")),
        (-1, ("1|4|5", "2|3")),
        (1, ("1|4|5", "2", "3")),
    }


def test_theorem_form_rejects_bad_pivot():
    with pytest.raises(DomainError):
        straighten_theorem_form(O(2, 1, 3), 4)
    with pytest.raises(DomainError):
        straighten_theorem_form(O(2, 1, 3), 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_back_substitution_round_trip(n):
    for osp in enumerate_osps(n):
        coords = straighten_hatP(PlateVector.unit(osp))
        total = PlateVector.zero(n)
        for csp, c in coords:
            total = total + c * convolution_expand(csp)
        assert total == PlateVector.unit(osp)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_theorem_form_agrees_with_back_substitution(n):
    for osp in enumerate_osps(n):
        target = straighten_hatP(PlateVector.unit(osp))
        for pivot in [None] + list(range(1, len(osp) + 1)):
            assert straighten_theorem_form(osp, pivot) == target


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("space", list(Space))
def test_closed_forms_agree_with_projection(n, space):
    for osp in enumerate_osps(n):
        v = PlateVector.unit(osp)
        assert straighten(v, space) == project(v, space)


@pytest.mark.parametrize("n", range(1, 7))
def test_surviving_basis_sizes(n):
    d = dims(n)
    csps = enumerate_standard_csps(n)
    assert sum(kept_in(Space.hatP, c) for c in csps) == d.ordered_bell
    assert sum(kept_in(Space.P, c) for c in csps) == d.cyclic_bell
    assert sum(kept_in(Space.hatP1, c) for c in csps) == d.hatP1_total
    assert sum(kept_in(Space.P1, c) for c in csps) == d.P1_dim


def test_P1_basis_is_permutations_starting_with_one():
    kept = [c for c in enumerate_standard_csps(4) if kept_in(Space.P1, c)]
    assert all(len(c) == 1 and c.factors[0].is_permutation and c.factors[0].blocks[0] == (1,) for c in kept)


def test_genericity_projections():
    v = plates(2, ("1|2", 1), ("2|1", 1))
    assert project(v, Space.P1) == PlateVector.zero(2, Basis.canonical)
    assert project(v, Space.hatP) == canon(2, ("1*2", 1), ("1,2", 1))
    assert project(PlateVector.zero(3), Space.P) == PlateVector.zero(3, Basis.canonical)


@given(osps(min_n=2, max_n=5))
def test_lumped_plates_vanish_in_hatP1(osp):
    if not osp.is_permutation:
        assert project(PlateVector.unit(osp), Space.hatP1) == PlateVector.zero(len(osp.ground), Basis.canonical)


@given(standard_csps(min_n=2, max_n=5))
def test_composites_vanish_in_P(csp):
    v = convolution_expand(csp)
    if len(csp) > 1:
        assert not project(v, Space.P)
    assert straighten_hatP(v) == PlateVector.unit(csp, Basis.canonical)


@given(st.lists(st.tuples(osps(min_n=4, max_n=4), st.fractions(max_denominator=5)), max_size=5),
       st.sampled_from(list(Space)))
def test_straighten_is_linear(pairs, space):
    total = PlateVector.zero(4)
    expected = PlateVector.zero(4, Basis.canonical)
    for osp, c in pairs:
        total = total + c * PlateVector.unit(osp)
        expected = expected + c * straighten(PlateVector.unit(osp), space)
    assert straighten(total, space) == expected
