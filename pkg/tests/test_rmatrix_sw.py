from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from uvtsw import hecke, rmatrix_sw as rm, suites
from uvtsw.combinatorics import Partition
from uvtsw.ratfield import VarSet

VS = VarSet.standard()
v, t = VS.var("v"), VS.var("t")


def test_r_matrix_n2_entries():
    assert rm.r_matrix(2).triplets() == [
        (0, 0, "t/v"), (1, 2, "1"), (2, 1, "t^2"), (2, 2, "(-v^2*t+t)/v"), (3, 3, "t/v"),
    ]


def test_rtilde_n2_entries():
    assert rm.rtilde(2).triplets() == [
        (0, 0, "1"), (1, 2, "v/t"), (2, 1, "v*t"), (2, 2, "(-v^2+1)/t"), (3, 3, "1"),
    ]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_r_braids(n):
    assert all(r.passed for r in rm.check_braid("R", n, 3))


def test_distant_commutation():
    res = rm.check_braid("R", 2, 4)
    assert {r.name for r in res} >= {"braid(1,2)", "braid(2,3)", "commute(1,3)"}
    assert all(r.passed for r in res)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_printed_rtilde_does_not_braid(n):
    bad = [r for r in rm.check_braid("Rtilde", n, 3) if not r.passed]
    assert bad


def test_rtilde_braid_failure_entry():
    (bad,) = [r for r in rm.check_braid("Rtilde", 2, 3) if not r.passed]
    assert bad.detail == "entry (4,4): (-v^4*t+v^4+v^2*t-2*v^2+1)/t^2 != (-v^2+1)/t"


@pytest.mark.parametrize("n", [2, 3])
def test_rescaled_r_is_rtilde_with_other_diagonal(n):
    fixed = rm._two_site(n, v * t, v / t, 1 - v * v, VS.one())
    assert fixed == rm.r_matrix(n).scale(v / t)
    assert all(r.passed for r in rm.check_braid(fixed, n, 3))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hecke_quadratic(n):
    assert rm.check_hecke_quadratic("R", n).passed
    res = rm.check_hecke_quadratic("Rtilde", n)
    assert not res.passed
    assert res.detail == "entry (0,0) = (v^2*t-v*t^2+v-t)/v"


def test_shuffled_control():
    assert not all(r.passed for r in rm.check_braid(rm.rtilde(2, shuffled=True), 2, 3))


words = st.lists(st.integers(1, 2), max_size=4)


@given(words, words)
def test_delta_is_multiplicative(a, b):
    ha, hb = hecke.word_element(a, 3), hecke.word_element(b, 3)
    assert rm.delta_n(hecke.multiply(ha, hb), 2) == rm.delta_n(ha, 2) @ rm.delta_n(hb, 2)


def test_delta_jm():
    r1 = rm.lift(1, rm.r_matrix(3), 3, 2)
    assert rm.delta_n(hecke.jm_element(2, 2), 3) == (r1 @ r1).scale(t**-2)


@pytest.mark.parametrize("n,k", [(2, 2), (2, 3), (3, 2)])
def test_r_is_not_an_intertwiner(n, k):
    assert not all(r.passed for r in rm.commutant_check(n, k))


@pytest.mark.parametrize("n,k", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_measured_intertwiner(n, k):
    m = rm.measured_intertwiner(n)
    assert all(r.passed for r in rm.commutant_check(n, k, operator=m))
    assert rm.hecke_quadratic_residual(m, n).is_zero()


def test_measured_intertwiner_n3_and_gauge():
    m = rm.measured_intertwiner(3)
    assert m[6, 2] == VS.one() and m[2, 6] == t * t and m[3, 1] == t
    d = rm.diagonal_gauge(rm.r_matrix(3), m)
    assert [str(x) for x in d.diagonal_entries()] == ["1", "t", "t^2", "1", "1", "t", "1", "1", "1"]
    assert d @ rm.r_matrix(3) @ d.diagonal_inverse() == m


def test_commutant_dimension():
    assert len(rm.commutant_basis(2)) == 2
    assert len(rm.commutant_basis(3)) == 2


def test_flat_swap_commutes_only_classically():
    swap = rm.flat_swap(2)
    assert not all(r.passed for r in rm.commutant_check(2, 2, operator=swap))
    from uvtsw.uvt_rep import tensor_rep
    one = {"v": Fraction(1), "t": Fraction(1)}
    assert all(rm.commutes_at(one, swap, m) for _, m in tensor_rep(2, 2).all_generators())


@pytest.mark.parametrize("n,k", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)])
def test_dimension_identity(n, k):
    d = rm.decompose(n, k)
    assert d.ok
    assert {str(lam): r for lam, _, r in d.components} == d.weyl


def test_decompose_json():
    assert rm.decompose(2, 3).to_json() == (
        '{"components": [{"dim": 4, "shape": "(3)", "syt": 1}, {"dim": 2, "shape": "(2,1)", "syt": 2}], '
        '"expected": 8, "k": 3, "n": 2, "total": 8}'
    )


@pytest.mark.parametrize("n", [2, 3])
def test_final_example_spans(n):
    ok, detail = suites.final_example_spans(n)
    assert ok, detail


def test_project_rejects_non_idempotent():
    with pytest.raises(rm.NotIdempotent):
        rm.project(hecke.generator(1, 2), 2)


def test_weyl_dimension():
    assert rm.weyl_dimension(Partition((2, 1)), 3) == 8
    assert rm.weyl_dimension(Partition((1, 1, 1)), 2) == 0
