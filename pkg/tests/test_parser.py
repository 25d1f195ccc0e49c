import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tcbounds.errors import ExprSyntaxError, ParameterError
from tcbounds.expr import (
    CP, PPS, RP, DoldGrassmann, Gpps, Grassmann, Klein, Product, Sphere, SurfaceN, SurfaceO,
    Torus, Xg, Z2Product, render,
)
from tcbounds.parser import parse_space_expr


@pytest.mark.parametrize("text,expected", [
    ("S(3)", Sphere(3)),
    ("RP(2)", RP(2)),
    ("  CP( 4 ) ", CP(4)),
    ("T(2)", Torus(2)),
    ("Gr(2,5)", Grassmann(2, 5)),
    ("SigO(2)", SurfaceO(2)),
    ("SigN(3)", SurfaceN(3)),
    ("P(3,1)", PPS((1, 3))),
    ("K(4)", Klein(4)),
    ("Xg(1,3)", Xg(1, 3)),
    ("DG(2,4;[3,1])", DoldGrassmann(2, 4, (1, 3))),
    ("X(RP(1);(1,1),(1,1))", Gpps(RP(1), ((1, 1), (1, 1)))),
    ("S(1)*S(2)*S(3)", Product(Product(Sphere(1), Sphere(2)), Sphere(3))),
    ("S(1)*(S(2)*S(3))", Product(Sphere(1), Product(Sphere(2), Sphere(3)))),
    ("Z2[conj,antipodal]{CP(1)*S(3)}", Z2Product(Product(CP(1), Sphere(3)), ("conj", "antipodal"))),
    ("Z2[refl(2)]{S(3)}", Z2Product(Sphere(3), ("refl(2)",))),
])
def test_parse(text, expected):
    assert parse_space_expr(text) == expected


@pytest.mark.parametrize("text,pos", [
    ("K(", 2),
    ("S(3", 3),
    ("Q(3)", 0),
    ("S(3) S(2)", 5),
    ("Z2[conj]{CP(1)", 14),
    ("Z2[flip]{S(1)}", 3),
    ("", 0),
])
def test_syntax_errors_report_offset(text, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse_space_expr(text)
    assert info.value.position == pos
    assert info.value.expected


def test_k_open_paren_expects_integer():
    with pytest.raises(ExprSyntaxError) as info:
        parse_space_expr("K(")
    assert tuple(info.value.expected) == ("integer",)


@pytest.mark.parametrize("text", ["K(1)", "Gr(3,3)", "S(0)", "X(RP(2);(1,2))",
                                  "Z2[conj]{S(2)}", "Z2[refl(4)]{S(3)}", "Z2[conj,conj]{CP(1)}"])
def test_parameter_errors(text):
    with pytest.raises(ParameterError):
        parse_space_expr(text)


def test_z2_only_at_top_level():
    with pytest.raises(ParameterError):
        Product(Z2Product(Sphere(1), ("conj",)), Sphere(1))


atoms = st.one_of(
    st.integers(1, 6).map(Sphere),
    st.integers(1, 6).map(RP),
    st.integers(1, 4).map(CP),
    st.integers(1, 4).map(Torus),
    st.tuples(st.integers(1, 3), st.integers(1, 3)).map(lambda t: Grassmann(t[0], t[0] + t[1])),
    st.integers(2, 7).map(Klein),
    st.tuples(st.integers(0, 3), st.integers(2, 6)).map(lambda t: Xg(*t)),
    st.lists(st.integers(1, 5), min_size=1, max_size=3).map(lambda ns: PPS(tuple(ns))),
    st.tuples(st.integers(1, 3), st.lists(st.integers(1, 4), min_size=1, max_size=2))
      .map(lambda t: DoldGrassmann(t[0], t[0] + 2, tuple(t[1]))),
)
exprs = st.recursive(
    atoms,
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(lambda t: Product(*t)),
        st.tuples(inner, st.lists(st.tuples(st.integers(1, 4), st.integers(0, 4)), min_size=1, max_size=2))
          .map(lambda t: Gpps(t[0], tuple((n, min(p, n)) for n, p in t[1]))),
    ),
    max_leaves=5,
)


@settings(max_examples=300, deadline=None)
@given(exprs)
def test_render_round_trip(e):
    assert parse_space_expr(render(e)) == e
