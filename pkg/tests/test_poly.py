from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sliceforge.poly import MPoly, PolyError


def P(s):
    return MPoly.parse(s)


def test_parse_and_str_roundtrip():
    f = P("3*x^2*y - 1/2*y + 7")
    assert str(f) == "3*x^2*y - 1/2*y + 7"
    assert MPoly.parse(str(f)) == f


def test_context_unification_by_name():
    f = P("x + y")
    g = MPoly.parse("y + z", ("y", "z"))
    h = f + g
    assert h.vars == ("x", "y", "z")
    assert h == P("x + 2*y + z")


def test_arith_identities():
    f = P("x^2 - y")
    zero = MPoly.zero(f.vars)
    assert f + zero == f
    assert f - f == zero
    assert f * MPoly.const(1, f.vars) == f
    assert (f ** 2) == f * f


def test_coeff_and_degree():
    f = P("2*x^3*y + x - 5")
    assert f.total_degree() == 4
    assert f.degree_in("x") == 3
    assert f.degree_in("y") == 1
    assert f.coeff((3, 1)) == 2


def test_subs_and_evaluate():
    f = P("x^2 + y")
    g = f.subs({"x": P("y - 1")})
    assert g == P("y^2 - y + 1")
    assert f.evaluate({"x": Fraction(2), "y": Fraction(-1)}) == 3


def test_diff_and_gradient():
    f = P("x^3 + x*y^2")
    assert f.diff("x") == P("3*x^2 + y^2")
    gx, gy = f.gradient()
    assert gy == P("2*x*y")


def test_homogeneous_part_and_weighted_degrees():
    f = P("x^2 + x*y + y^3")
    assert f.homogeneous_part(2) == P("x^2 + x*y")
    assert f.weighted_degrees({"x": 3, "y": 2}) == {5, 6}


def test_content_free_preserves_sign():
    f = P("4*x - 6")
    g = f.content_free()
    assert g == P("2*x - 3")
    assert (-f).content_free() == P("-2*x + 3")


def test_restricted_rejects_used_variable():
    f = P("x + y")
    with pytest.raises(PolyError):
        f.restricted(("x",))


def test_json_roundtrip():
    f = P("x^2 - 3/7*y*z + 1")
    assert MPoly.from_json(f.to_json()) == f


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(st.integers(0, 3), st.integers(0, 3))


@st.composite
def polys(draw):
    terms = draw(st.dictionaries(exps, coeffs, max_size=4))
    return MPoly(("x", "y"), {e: c for e, c in terms.items() if c != 0})


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_leibniz_rule(f, g):
    lhs = (f * g).diff("x")
    rhs = f.diff("x") * g + f * g.diff("x")
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(polys())
def test_identity_substitution(f):
    ident = {v: MPoly.var(v, f.vars) for v in f.vars}
    assert f.subs(ident) == f


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
