from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from uvtsw.ratfield import ParseError, PoleError, RatFunc, VarSet, VarSetMismatch, parse

VS = VarSet.standard()
v, t = VS.var("v"), VS.var("t")


@st.composite
def laurent(draw, max_terms=3):
    out = VS.zero()
    for _ in range(draw(st.integers(0, max_terms))):
        c = draw(st.integers(-4, 4))
        out = out + RatFunc.monomial(VS, {"v": draw(st.integers(-3, 3)), "t": draw(st.integers(-3, 3))}, c)
    return out


@st.composite
def ratfuncs(draw):
    num = draw(laurent())
    den = draw(laurent().filter(bool))
    return num / den


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == VS.zero()
    if a:
        assert a * a.inv() == VS.one()


@given(ratfuncs())
def test_str_parse_roundtrip(a):
    assert parse(str(a), VS) == a


@given(ratfuncs(), st.fractions(min_value=-3, max_value=3).filter(bool), st.fractions(min_value=-3, max_value=3).filter(bool))
def test_evaluation_is_a_homomorphism(a, x, y):
    point = {"v": x, "t": y}
    b = a * a + a
    try:
        assert b.eval_rational(point) == a.eval_rational(point) ** 2 + a.eval_rational(point)
    except PoleError:
        pass


def test_canonical_form():
    a = (v**2 - 1) / (v - 1)
    assert a == v + 1
    assert str(a) == "v+1"
    assert str((1 / v - v) / t) == "(-v^2+1)/(v*t)"


def test_laurent_monomial():
    assert (v**-2 * t**3).as_laurent_monomial() == (Fraction(1), {"v": -2, "t": 3})
    assert (v + t).as_laurent_monomial() is None


def test_substitute_and_pole():
    assert (1 / (v - t)).substitute("t", 2 * v) == -1 / v
    with pytest.raises(PoleError):
        (1 / (v - 1)).eval_rational({"v": 1, "t": 2})
    with pytest.raises(ZeroDivisionError):
        VS.zero().inv()


def test_parse_errors_and_varsets():
    with pytest.raises(ParseError):
        parse("v^", VS)
    with pytest.raises(ParseError):
        parse("x+1", VS)
    other = VarSet(("a",))
    with pytest.raises(VarSetMismatch):
        v + other.var("a")
    assert parse("u1*v", VarSet.standard(1)) == VarSet.standard(1).var("u1") * VarSet.standard(1).var("v")
