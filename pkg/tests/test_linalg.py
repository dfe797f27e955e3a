from fractions import Fraction

from hypothesis import given, strategies as st

from uvtsw.linalg import SparseMatrix, determinant, inverse, nullspace, rank, rref
from uvtsw.ratfield import VarSet

VS = VarSet.standard()
v, t = VS.var("v"), VS.var("t")
POINT = {"v": Fraction(3, 2), "t": Fraction(5, 7)}


def fraction_det(m):
    """Plain Gaussian elimination over Q."""
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


entry = st.sampled_from([VS.zero(), VS.one(), v, t, v - t, 1 / v, v * t + 1, (1 - v**2) / t])


@st.composite
def matrices(draw, size=3):
    return SparseMatrix.from_dense([[draw(entry) for _ in range(size)] for _ in range(size)], VS)


@given(matrices())
def test_determinant_matches_specialized_oracle(m):
    assert determinant(m).eval_rational(POINT) == fraction_det(m.specialize(POINT))


@given(matrices())
def test_inverse(m):
    if determinant(m):
        assert m @ inverse(m) == SparseMatrix.identity(3, VS)
        assert rank(m) == 3
    else:
        assert rank(m) < 3


def test_rank_needs_symbolic_check():
    # singular exactly at v = t, which a careless specialization could hit
    m = SparseMatrix.from_dense([[v, t], [VS.one(), VS.one()]], VS)
    assert rank(m) == 2
    assert rank(SparseMatrix.from_dense([[v, t], [v * v, v * t]], VS)) == 1


def test_rref_and_nullspace():
    rows = [[v, t, VS.zero()], [v * v, v * t, VS.zero()]]
    assert rref(rows, VS) == [[VS.one(), t / v, VS.zero()]]
    ns = nullspace(rows, 3, VS)
    assert len(ns) == 2
    for vec in ns:
        assert sum((a * b for a, b in zip(rows[0], vec)), VS.zero()) == VS.zero()


def test_kron_and_matmul():
    a = SparseMatrix.from_dense([[v, VS.one()], [VS.zero(), t]], VS)
    b = SparseMatrix.identity(2, VS)
    k = a.kron(b)
    assert k.shape == (4, 4)
    assert k[0, 2] == VS.one() and k[3, 3] == t
    assert (a @ a)[0, 1] == v + t
