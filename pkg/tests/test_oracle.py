from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from plates.combinatorics import OrderedSetPartition, enumerate_osps, enumerate_standard_csps
from plates.errors import DomainError, PoleError, SamplingError
from plates.grammar import parse_csp
from plates.plate_algebra import (
    DirectedTree,
    PlateVector,
    Space,
    convolution_expand,
    straighten,
    tree_expand,
    weyl_chamber_expansion,
)
from plates.analytic_oracle import (
    Composite,
    GenericityPolicy,
    Meet,
    Mode,
    Oracle,
    Plate,
    RationalPoint,
    WeylChamber,
    chamber_indicator,
    combination,
    dual_face_indicator,
    eval_hatP1,
    eval_P,
    eval_P1,
    eval_tree_rhs,
    evaluate,
    is_generic,
    minkowski_indicator,
    parse_side,
    plate_indicator,
    sample_generic_point,
    tree_cone_indicator,
    tree_dual_basis,
    verify_identity,
)

from strategies import standard_csps, sum_zero_points, trees

O = OrderedSetPartition.of
F = Fraction
SEVEN = "1>3,2>3,2>4,2>5,3>6,7>3"
EVERYWHERE = GenericityPolicy(lattice_fraction=1.0)


def add(*xs):
    return RationalPoint(tuple(F(x) for x in xs), Mode.additive)


def mul(*xs):
    return RationalPoint(tuple(F(x) for x in xs), Mode.multiplicative)


def free(*xs):
    return RationalPoint(tuple(F(x) for x in xs))


# -- indicators ----------------------------------------------------------------


def test_plate_indicator_examples():
    assert plate_indicator(O(1, 2), add(1, -1)) == 1
    assert plate_indicator(O(1, 2), add(-1, 1)) == 0
    assert plate_indicator(O((1, 2)), add(5, -5)) == 1
    assert plate_indicator(O(1, 2), add(0, 0)) == 1
    # support {1,2} inside n=3: the third coordinate must vanish
    assert plate_indicator(O(1, 2), add(1, -1, 0)) == 1
    assert plate_indicator(O(1, 2), add(1, 0, -1)) == 0


def test_minkowski_indicator_examples():
    c = parse_csp("1*2|3")
    assert minkowski_indicator(c, add(0, 1, -1)) == 1
    assert minkowski_indicator(c, add(1, -1, 0)) == 0
    assert minkowski_indicator(parse_csp("1|2*3"), add(2, -2, 0)) == 1


def test_dual_face_and_chamber_examples():
    assert dual_face_indicator(O(2, 1, 3), add(0, 1, -1)) == 1
    assert dual_face_indicator(O((1, 2), 3), add(1, 1, -2)) == 1
    assert dual_face_indicator(O((1, 2), 3), add(2, 0, -2)) == 0
    assert dual_face_indicator(O(1, 2), add(0, 0), strict=True) == 0
    assert chamber_indicator((2, 1, 3), add(1, 1, -2)) == 0
    assert chamber_indicator((1, 2, 3), add(1, 1, -2)) == 1
    with pytest.raises(DomainError):
        dual_face_indicator(O(1, 2, 3), add(1, 0, -1), strict=[True])


def test_indicators_need_additive_points():
    with pytest.raises(DomainError):
        plate_indicator(O(1, 2), free(1, 2))
    with pytest.raises(DomainError):
        RationalPoint((F(1), F(1)), Mode.additive)


def test_seven_tree_dual_basis():
    got = set(tree_dual_basis(DirectedTree.parse(SEVEN)))
    expected = {frozenset(s) for s in [{1}, {7}, {2, 4, 5}, {1, 2, 3, 4, 5, 7}, {1, 2, 3, 5, 6, 7}, {1, 2, 3, 4, 6, 7}]}
    assert got == expected


def _solve_edge_coefficients(n, edges, p):
    """Coordinates of p in the edge roots e_i - e_j, by exact Gaussian elimination."""
    rows = [[F(0)] * len(edges) + [F(p[i])] for i in range(n)]
    for col, (a, b) in enumerate(edges):
        rows[a - 1][col] = F(1)
        rows[b - 1][col] = F(-1)
    pivot_row = 0
    pivots = []
    for col in range(len(edges)):
        r = next(r for r in range(pivot_row, n) if rows[r][col] != 0)
        rows[pivot_row], rows[r] = rows[r], rows[pivot_row]
        lead = rows[pivot_row][col]
        rows[pivot_row] = [x / lead for x in rows[pivot_row]]
        for r in range(n):
            if r != pivot_row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[pivot_row])]
        pivots.append(pivot_row)
        pivot_row += 1
    return [rows[r][-1] for r in pivots]


@given(st.data())
def test_tree_cone_indicator_matches_linear_solve(data):
    n, edges = data.draw(trees(max_n=6))
    coords = data.draw(sum_zero_points(n))
    tree = DirectedTree.from_pairs(edges, n)
    coefs = _solve_edge_coefficients(n, edges, coords)
    assert tree_cone_indicator(tree, RationalPoint(coords, Mode.additive)) == int(all(c >= 0 for c in coefs))


# -- Laplace values ------------------------------------------------------------


def test_eval_examples():
    assert eval_P(O(1, 2), mul(2, F(1, 2))) == -1
    assert eval_hatP1(O(1, 2), free(4, 2)) == -1
    assert eval_P1(O(1, 2, 3), free(3, 1, -4)) == F(1, 10)
    assert eval_P1(O((1, 2), 3), free(3, 1, -4)) == 0
    assert eval_hatP1(O((1, 2), 3), free(3, 1, -4)) == 0
    assert eval_P(O((1, 2, 3)), mul(2, 3, F(1, 6))) == 1


def test_eval_errors():
    with pytest.raises(PoleError):
        eval_P(O(1, 2), mul(1, 1))
    with pytest.raises(PoleError):
        eval_P1(O(1, 2), free(2, 2))
    with pytest.raises(DomainError):
        eval_P(O(1, 2), free(2, 3))
    with pytest.raises(DomainError):
        eval_P1(O(1, 2), free(1, 2, 3))
    with pytest.raises(DomainError):
        eval_hatP1(O(1, 2), free(0, 3))


@given(st.integers(0, 100), st.sampled_from([(1, 2), (1, 3), (2, 4), (3, 4)]))
def test_two_term_relations(trial, pair):
    i, j = pair
    p = sample_generic_point(4, "P1", trial=trial)
    two = free(p[i], p[j])
    assert eval_P1(O(1, 2), two) + eval_P1(O(2, 1), two) == 0
    assert eval_hatP1(O(1, 2), two) + eval_hatP1(O(2, 1), two) == 1


def test_n4_tree_type_P_collapse():
    t = DirectedTree.parse("1>3,2>3,1>4")
    v = tree_expand(t, Space.P)
    for trial in range(10):
        p = sample_generic_point(4, "P", trial=trial)
        x1, x2, x3, x4 = p.coords
        middle = (1 - x1**2 * x2 * x3 * x4) / ((1 - x1) * (1 - x2) * (1 - x1 * x2 * x3) * (1 - x1 * x4))
        collapsed = 1 / ((1 - x2) * (1 - x1 * x2 * x3) * (1 - x1 * x4))
        assert evaluate(v, p, Oracle.P) == middle == collapsed == eval_tree_rhs(t, "P", p)


def test_n4_tree_type_P1_collapse():
    t = DirectedTree.parse("1>3,2>3,1>4")
    v = tree_expand(t, Space.P1)
    for trial in range(10):
        p = sample_generic_point(4, "P1", trial=trial)
        x1, x2, x3, x4 = p.coords
        assert evaluate(v, p, Oracle.P1) == 1 / ((x1 - x3) * (x2 - x3) * (x1 - x4))


def test_seven_tree_closed_forms():
    t = DirectedTree.parse(SEVEN)
    hat = tree_expand(t, Space.hatP)
    for trial in range(3):
        p = sample_generic_point(7, "P", trial=trial)
        x1, x2, x3, x4, x5, x6, x7 = p.coords
        before = (x1 * x2 * x3 * x4**2 * x5**2 * x6**2) / (
            (1 - x1) * (1 - x4) * (1 - x5) * (1 - x2 * x4 * x5) * (1 - x6) * (1 - x1 * x2 * x3 * x4 * x5 * x6)
        )
        assert evaluate(hat, p, Oracle.P) == before == eval_tree_rhs(t, "P", p)
        q = sample_generic_point(7, "hatP1", trial=trial)
        y1, y2, y3, y4, y5, y6, y7 = q.coords
        edges = (y1 - y3) * (y2 - y3) * (y2 - y4) * (y2 - y5) * (y3 - y6) * (y7 - y3)
        assert evaluate(hat, q, Oracle.hatP1) == y3**3 * y4 * y5 * y6 / edges == eval_tree_rhs(t, "hatP1", q)
        assert evaluate(tree_expand(t, Space.P1), q, Oracle.P1) == 1 / edges


@given(standard_csps(min_n=2, max_n=4), st.integers(0, 50))
def test_composite_values_match_plate_expansions(csp, trial):
    n = len(csp.ground)
    v = convolution_expand(csp)
    for oracle in (Oracle.P, Oracle.hatP1, Oracle.P1):
        p = sample_generic_point(n, oracle, trial=trial)
        try:
            lhs = evaluate(Composite(csp), p, oracle)
            rhs = evaluate(v, p, oracle)
        except PoleError:
            continue
        assert lhs == rhs


@pytest.mark.parametrize("space, oracle", [(Space.P, Oracle.P), (Space.hatP1, Oracle.hatP1), (Space.P1, Oracle.P1)])
def test_straightening_preserves_values(space, oracle):
    for osp in enumerate_osps(4):
        v = PlateVector.unit(osp)
        report = verify_identity(v, straighten(v, space), oracle, trials=5)
        assert report.ok, (osp, report)


# -- identities that hold everywhere --------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_weyl_chambers_decompose_into_dual_faces(n):
    for sigma in [o.blocks for o in enumerate_osps(n) if o.is_permutation]:
        order = tuple(b[0] for b in sigma)
        report = verify_identity(WeylChamber(order), weyl_chamber_expansion(order), policy=EVERYWHERE, trials=30)
        assert report.ok, order


@pytest.mark.parametrize("csp", enumerate_standard_csps(3) + enumerate_standard_csps(4, 2))
def test_convolution_expansion_holds_on_walls(csp):
    assert verify_identity(Composite(csp), convolution_expand(csp), policy=EVERYWHERE, trials=30).ok


def test_genericity_identity_with_meet():
    lhs = parse_side("[1|2] + [2|1]")
    rhs = combination(Meet((Plate(O(1, 2)), Plate(O(2, 1)))), Plate(O((1, 2))))
    assert verify_identity(lhs, rhs, policy=EVERYWHERE, trials=40).ok
    assert not verify_identity(lhs, Plate(O((1, 2))), policy=EVERYWHERE, trials=40).ok


def test_expression_parser():
    side = parse_side("2*[1|2,3] - 1/2 [1*2|3] + dual[2|1|3] + tree(1>2,1>3) - chamber(2,1,3) + 3")
    assert len(side.terms) == 6
    assert side.terms[1][0] == F(-1, 2)
    assert isinstance(side.terms[1][1], Composite)
    assert side.terms[5] == (F(1), F(3))
    with pytest.raises(DomainError):
        parse_side("chamber(1,3)")
    with pytest.raises(DomainError):
        parse_side("frob(1)")
    v = PlateVector.unit(O(2, 1))
    assert parse_side(v.to_json()) == v


# -- sampling ------------------------------------------------------------------


@pytest.mark.parametrize("oracle", list(Oracle))
@pytest.mark.parametrize("n", [2, 3, 5])
def test_sampled_points_are_generic_and_reproducible(oracle, n):
    pol = GenericityPolicy(seed=7)
    pts = [sample_generic_point(n, oracle, pol, t) for t in range(10)]
    assert all(is_generic(p, oracle) and p.mode is oracle.mode and len(p) == n for p in pts)
    sample_generic_point.cache_clear()
    assert pts == [sample_generic_point(n, oracle, pol, t) for t in range(10)]
    assert pts != [sample_generic_point(n, oracle, GenericityPolicy(seed=8), t) for t in range(10)]


def test_sampling_gives_up():
    tight = GenericityPolicy(numerator_bound=1, max_denominator=1, max_retries=20)
    with pytest.raises(SamplingError):
        sample_generic_point(3, "hatP1", tight)


def test_policy_validation():
    with pytest.raises(DomainError):
        GenericityPolicy(lattice_fraction=2.0)
    with pytest.raises(DomainError):
        GenericityPolicy(max_retries=0)


# -- reports -------------------------------------------------------------------


def test_report_for_true_and_false_identities():
    good = verify_identity(tree_expand(DirectedTree.parse("1>2,1>3")), DirectedTree.parse("1>2,1>3"), trials=25, policy=GenericityPolicy(seed=3))
    assert good.ok and good.trials == good.passed == 25 and good.failed_point is None
    assert str(good) == "PASS 25/25 oracle=indicator seed=3"
    bad = verify_identity(Plate(O(1, 2)), Plate(O(2, 1)), trials=20)
    assert not bad.ok and bad.passed < bad.trials == 20
    d = bad.to_dict()
    assert list(d)[:4] == ["trials", "passed", "oracle", "seed"]
    assert {"failed_point", "failed_lhs", "failed_rhs"} <= set(d)
    again = verify_identity(Plate(O(1, 2)), Plate(O(2, 1)), trials=20)
    assert again.to_json() == bad.to_json()


def test_verify_rejects_mismatched_sizes():
    with pytest.raises(DomainError):
        verify_identity(PlateVector.unit(O(1, 2)), PlateVector.unit(O(1, 2, 3)))
    with pytest.raises(DomainError):
        verify_identity(Plate(O(1, 2, 3)), Plate(O(1, 2, 3)), n=2)
    with pytest.raises(DomainError):
        verify_identity(WeylChamber((1, 2)), WeylChamber((1, 2)), oracle="P")


@given(st.integers(0, 200))
def test_trials_count_excludes_poles(seed):
    report = verify_identity(PlateVector.unit(O(1, 2, 3)), PlateVector.unit(O(1, 2, 3)), "P1", GenericityPolicy(seed=seed), trials=3)
    assert report.trials == report.passed == 3
