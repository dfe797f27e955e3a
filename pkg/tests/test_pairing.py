import pytest
from hypothesis import given, strategies as st

from uvtsw import pairing as pr, rmatrix_sw as rm
from uvtsw.pairing import E, Elem, F, K, Kp
from uvtsw.ratfield import VarSet
from uvtsw.uvt_rep import Weight

VS = VarSet.standard()
v, t = VS.var("v"), VS.var("t")


def test_generator_values():
    p = pr.pairing(3)
    assert p.pair_generators(F(1), E(1)) == 1 / (1 / v - v)
    assert p.pair_generators(F(1), E(2)).is_zero()
    assert p.pair_generators(Kp(1), K(2)) == 1 / (v * t)
    assert pr.pairing(2).pair_generators(Kp(1), K(1)) == v * v
    assert p.pair_generators(Kp(1), E(1)).is_zero()


def test_extended_torus():
    # index n stands for B_n / A_n
    p = pr.pairing(2)
    assert p.torus_value(2, 1, 2, 1) == VS.one()
    assert p.torus_value(1, 1, 2, 1) == 1 / (v * t)
    assert pr.group_like_pairing(Weight((0, 1)), Weight((0, 1)), 2) == VS.one()


def test_coproducts():
    assert pr.coproduct_power((E(1),), 1, "B") == [((E(1),), ()), ((K(1),), (E(1),))]
    assert pr.coproduct_power((K(1), E(2)), 1, "B") == [
        ((K(1), E(2)), (K(1),)), ((K(1), K(2)), (K(1), E(2))),
    ]
    assert pr.coproduct_power((Kp(1), F(2)), 1, "Bp") == [
        ((Kp(1), F(2)), (Kp(1),)), ((Kp(1), Kp(2)), (Kp(1), F(2))),
    ]
    assert pr.coproduct_power((F(1),), 2, "Bp_plain") == [
        ((), (), (F(1),)), ((), (F(1),), (Kp(1),)), ((F(1),), (Kp(1),), (Kp(1),)),
    ]


def test_gram_values():
    p = pr.pairing(2)
    assert p.pair_words((F(1), F(1)), (E(1), E(1))) == v * v * (v * v + 1) / (v * v - 1) ** 2
    p3 = pr.pairing(3)
    d = (v * v - 1) ** 2
    assert p3.pair_words((F(2), F(1)), (E(1), E(2))) == v * t / d
    assert p3.pair_words((F(1), F(2)), (E(2), E(1))) == v / (t * d)


letter = st.sampled_from([E(1), E(2), K(1), K(2)])
fletter = st.sampled_from([F(1), F(2), Kp(1), Kp(2)])


@given(st.lists(fletter, max_size=3), st.lists(letter, max_size=3))
def test_recursion_orders(x, y):
    x, y = tuple(x), tuple(y)
    vals = {pr.pair_words(x, y, 3, order) for order in pr.ORDERS}
    assert len(vals) == 1


@given(st.lists(st.sampled_from([F(1), F(2)]), max_size=3), st.lists(st.sampled_from([E(1), E(2)]), max_size=3))
def test_grading(x, y):
    if sorted(idx for _, idx, _ in x) != sorted(idx for _, idx, _ in y):
        assert pr.pair_words(tuple(x), tuple(y), 3).is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_relations_respected(n):
    assert all(c.passed for c in pr.verify_pairing_relations(n, 3))


def test_serre_element_pairs_to_zero():
    (name, s), *_ = pr.serre_elements(3)[0]
    p = pr.pairing(3)
    for w in pr.words_up_to([F(1), F(2)], 3):
        assert p.pair(Elem.word(*w), s).is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_antipode(n):
    assert pr.antipode_compatibility(n, 2, inverse_on_bp=False)[0]
    assert pr.antipode_adjointness(n, 2, inverse_on_bp=True)[0]
    assert not pr.antipode_compatibility(n, 2, inverse_on_bp=True)[0]


def test_dual_bases():
    c = pr.dual_basis(Weight((1, 0)), 2)
    assert c.dual[0].terms == {(F(1),): 1 / v - v}
    c = pr.dual_basis(Weight((0, 1, 0)), 3)
    assert c.dual[0].terms == {(F(2),): 1 / v - v}
    c = pr.dual_basis(Weight((1, 1, 0)), 3)
    assert c.words == [(1, 2), (2, 1)]
    assert [str(d) for d in c.dual] == [
        "(v^2-1)*F1*F2 + ((-v^2+1)/(v*t))*F2*F1",
        "((-v^2*t+t)/v)*F1*F2 + (v^2-1)*F2*F1",
    ]


@pytest.mark.parametrize("h", [1, 2, 3])
def test_dual_basis_property(h):
    p = pr.pairing(3)
    for xi in pr.weights_of_height(h, 3):
        c = pr.dual_basis(xi, 3)
        for a, va in enumerate(c.dual):
            for b, ub in enumerate(c.basis()):
                assert p.pair(va, ub) == (VS.one() if a == b else VS.zero())


def test_dimensions():
    dims = {str(xi): pr.dual_basis(xi, 3).dim for h in (1, 2, 3) for xi in pr.weights_of_height(h, 3)}
    assert dims == {"(1,0,0)": 1, "(0,1,0)": 1, "(2,0,0)": 1, "(1,1,0)": 2, "(0,2,0)": 1,
                    "(3,0,0)": 1, "(2,1,0)": 2, "(1,2,0)": 2, "(0,3,0)": 1}
    with pytest.raises(ValueError):
        pr.dual_basis(Weight((4, 0)), 2)


def test_f_factor():
    assert [pr.f_factor(i, i, 3) for i in (1, 2, 3)] == [VS.one()] * 3
    assert pr.rtilde_from_theta(2, 0) == pr.twisted_flip(2)
    assert pr.rtilde_from_theta(2, 0) != rm.rtilde(2)


def test_theta_n2():
    assert pr.rtilde_from_theta(2, 1) == rm.rtilde(2)
    assert pr.rtilde_from_theta(2, 2) == rm.rtilde(2)
    assert pr.rtilde_from_theta(2, 1, "printed") != rm.rtilde(2)


def test_theta_n3_height_two():
    m = pr.rtilde_from_theta(3, 2)
    printed = rm.rtilde(3)
    diffs = [(r, c) for r in range(9) for c in range(9) if m[r, c] != printed[r, c]]
    assert diffs == [(6, 6)]
    assert m[6, 6] == (1 - v * v) / t**2 and printed[6, 6] == (1 - v * v) / t
    info = pr.theta_height_report(3, 2)
    assert info["theta_nonzero_entries"] == 1
    assert info["contribution"] == [(6, 6, "(-v^2+1)/t^2")]


@pytest.mark.parametrize("n", [2, 3])
def test_double_cross_relation(n):
    for i in range(1, n):
        for j in range(1, n):
            assert pr.double_cross_relation(i, j, n)["match"]
            assert pr.torus_cross_relation(i, j, n)


def test_double_cross_relation_expected_terms():
    row = pr.double_cross_relation(1, 1, 2)
    assert row["expected"] == {"1 x K'1": "v/(v^2-1)", "E1 x F1": "1", "K1 x 1": "-v/(v^2-1)"}
    assert pr.double_cross_relation(1, 2, 3)["expected"] == {"E1 x F2": "1"}
    assert not pr.double_cross_relation(1, 1, 2, inverse_on_bp=True)["match"]


def test_pairing_table_json():
    assert '"F1|E1": "-v/(v^2-1)"' in pr.pairing_table_json(2, 1)
