from fractions import Fraction

import pytest

from tcbounds import rings
from tcbounds.algebra import (
    GeneratorSpec,
    Presentation,
    adjoin_root,
    attach_steenrod,
    build_algebra,
    multiplication_kernel,
    multiply,
    steenrod_apply,
    tensor,
    unit_algebra,
)
from tcbounds.errors import (
    FieldMismatch,
    InfiniteDimensional,
    MixedAmbient,
    NonHomogeneousRelation,
    NoSteenrodData,
    PresentationError,
)
from tcbounds.linalg import FieldTag


def names(A):
    return [A.parse_monomial_name(m) for m in A.basis]


def test_truncated_polynomial_basis():
    A = build_algebra(Presentation("GF2", [GeneratorSpec("a", 1)], [[(1, (4,))]]))
    assert names(A) == ["1", "a", "a^2", "a^3"]


def test_series_inversion_relation_gives_cp1():
    # h_2 = c1^2 for Gr_1(C^2)
    A = build_algebra(Presentation("GF2", [GeneratorSpec("c1", 2)], [[(1, (2,))]]))
    assert names(A) == ["1", "c1"]


def test_rational_odd_generator_squares_to_zero():
    A = build_algebra(Presentation("Q", [GeneratorSpec("x", 3)]))
    assert names(A) == ["1", "x"]
    x = A.gen("x")
    assert not x * x


def test_koszul_sign_for_odd_generators():
    A = build_algebra(Presentation("Q", [GeneratorSpec("a", 1), GeneratorSpec("b", 1)]))
    a, b = A.gen("a"), A.gen("b")
    assert not (a * b + b * a)
    assert a * b


def test_multiply_truncates_in_rp3():
    A = rings.real_projective(3)
    a = A.gen("a")
    assert not multiply(A, a, a ** 3)


def test_klein_square_rule():
    K = rings.klein(2)
    a, b = K.gen("a"), K.gen("b1")
    assert b * b == a * b


def test_mixed_ambient_rejected():
    with pytest.raises(MixedAmbient):
        rings.sphere(1).gen(0) * rings.sphere(2).gen(0)


def test_non_homogeneous_relation_rejected():
    p = Presentation("GF2", [GeneratorSpec("a", 1), GeneratorSpec("c", 2)], [[(1, (2, 0)), (1, (0, 2))]])
    with pytest.raises(NonHomogeneousRelation):
        build_algebra(p)


def test_infinite_dimensional_detected():
    with pytest.raises(InfiniteDimensional):
        build_algebra(Presentation("GF2", [GeneratorSpec("a", 1)]), degree_cap=12)


def test_presentation_validation_and_json_round_trip():
    with pytest.raises(PresentationError):
        Presentation("GF2", [GeneratorSpec("a", 1), GeneratorSpec("a", 2)])
    p = Presentation("Q", [GeneratorSpec("c", 2)], [[(Fraction(1, 2), (3,))]])
    q = Presentation.from_json(p.to_json())
    assert q.to_json() == p.to_json()
    with pytest.raises(PresentationError):
        Presentation.from_json('{"field": "GF2"}')


def test_tensor_of_circles_is_torus():
    S = rings.sphere(1)
    T = tensor(S, S)
    assert T.dim == 4 and T.poincare() == rings.torus(2).poincare()


def test_tensor_poincare_multiplies():
    T = tensor(rings.real_projective(1), rings.complex_projective(1))
    assert T.poincare() == [1, 1, 1, 1]


def test_tensor_with_unit_is_identity():
    A = rings.grassmann(2, 4)
    T = tensor(unit_algebra(A.field), A)
    assert T.poincare() == A.poincare()
    c1 = T.gen(0)
    assert c1 ** 4 and not c1 ** 5


def test_tensor_field_mismatch():
    with pytest.raises(FieldMismatch):
        tensor(rings.sphere(2, "GF2"), rings.sphere(2, "Q"))


def test_kernel_dimension_and_membership():
    A = rings.complex_projective(2, "Q")
    K = multiplication_kernel(A)
    assert K.dimension == A.dim ** 2 - A.dim
    AA = A.square
    c = A.gen(0)
    z = AA.gen(0) - AA.gen(1)
    assert z.vec in K


def test_steenrod_on_rp3():
    A = rings.real_projective(3)
    a = A.gen("a")
    assert steenrod_apply(A, a * a) == a * a
    assert steenrod_apply(A, A.one) == A.one


def test_steenrod_on_klein_matches_square():
    K = rings.klein(2)
    a, b = K.gen("a"), K.gen("b1")
    sq = steenrod_apply(K, b)
    assert sq.component(2) == b * b == a * b


def test_no_steenrod_data():
    with pytest.raises(NoSteenrodData):
        steenrod_apply(rings.grassmann(2, 4, "GF2"), rings.grassmann(2, 4, "GF2").gen(0))


def test_attach_steenrod_rejects_unstable_data():
    A = build_algebra(Presentation("GF2", [GeneratorSpec("a", 1)], [[(1, (3,))]]))
    with pytest.raises(AssertionError):
        attach_steenrod(A, {"a": [(1, (1,))]})  # Sq^1 a must equal a^2


def test_adjoin_root_square_rule():
    A = rings.real_projective(3)
    a = A.gen("a")
    E = adjoin_root(A, "b", 2, a ** 2)
    b = E.gen("b")
    assert b * b == E.gen("a") ** 2 * b
    assert E.poincare() == [1, 1, 2, 2, 1, 1]


def test_element_arithmetic_and_repr():
    K = rings.klein(2)
    a, b = K.gen("a"), K.gen("b1")
    x = a * b + b
    assert repr(x) == "b1 + a*b1"
    assert not x.is_homogeneous() and x.degrees() == {1, 2}
    assert x - x == K.zero
    assert 3 * b == b and 2 * b == K.zero
