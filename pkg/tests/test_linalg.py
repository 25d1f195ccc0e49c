from fractions import Fraction
from itertools import product

import pytest

from tcbounds.linalg import Echelon, FieldTag, Subspace, axpy, from_bits, nullspace, rank, to_bits


def brute_rank_gf2(rows, dim):
    """Rank by counting the distinct vectors in the span."""
    span = {0}
    for r in rows:
        bits = to_bits(r)
        span |= {s ^ bits for s in span}
    return len(span).bit_length() - 1


def test_field_parse_and_scalars():
    assert FieldTag.parse("gf2") is FieldTag.GF2
    assert FieldTag.parse("q") is FieldTag.Q
    assert FieldTag.GF2.scalar(3) == 1
    assert FieldTag.GF2.scalar(Fraction(3, 5)) == 1
    with pytest.raises(ZeroDivisionError):
        FieldTag.GF2.scalar(Fraction(1, 2))
    assert FieldTag.Q.sign(True) == -1
    with pytest.raises(ValueError):
        FieldTag.parse("F3")


def test_bits_round_trip():
    v = {0: 1, 5: 1, 63: 1, 200: 1}
    assert from_bits(to_bits(v)) == v


def test_axpy_cancels_over_both_fields():
    y = {0: 1, 2: 1}
    axpy(FieldTag.GF2, y, 1, {0: 1})
    assert y == {2: 1}
    yq = {0: Fraction(2)}
    axpy(FieldTag.Q, yq, Fraction(-2), {0: Fraction(1), 1: Fraction(1)})
    assert yq == {1: Fraction(-2)}


@pytest.mark.parametrize("seed", range(20))
def test_gf2_rank_matches_span_count(seed):
    import random

    rng = random.Random(seed)
    dim = 6
    rows = [{i: 1 for i in range(dim) if rng.random() < 0.4} for _ in range(rng.randint(1, 7))]
    assert rank(FieldTag.GF2, rows, dim) == brute_rank_gf2(rows, dim)


def test_echelon_insert_reports_growth():
    e = Echelon(FieldTag.Q, 3)
    assert e.insert({0: Fraction(1), 1: Fraction(2)})
    assert e.insert({1: Fraction(1)})
    assert not e.insert({0: Fraction(3)})
    assert e.contains({0: Fraction(1)})
    assert len(e) == 2


def test_subspace_is_canonical():
    a = Subspace(FieldTag.GF2, 4, [{0: 1, 1: 1}, {1: 1, 2: 1}])
    b = Subspace(FieldTag.GF2, 4, [{0: 1, 2: 1}, {0: 1, 1: 1}])
    assert a == b and hash(a) == hash(b)
    assert {0: 1, 2: 1} in a
    with pytest.raises(IndexError):
        Subspace(FieldTag.GF2, 2, [{3: 1}])


def test_nullspace_over_q_against_direct_check():
    # columns of a 2x4 matrix
    cols = [{0: Fraction(1)}, {1: Fraction(1)}, {0: Fraction(1), 1: Fraction(1)}, {0: Fraction(2)}]
    ker = nullspace(FieldTag.Q, cols, 2)
    assert ker.dimension == 2
    for v in ker:
        image = [sum(c * cols[j].get(i, 0) for j, c in v.items()) for i in range(2)]
        assert image == [0, 0]


def test_nullspace_gf2_exhaustive():
    cols = [{0: 1}, {0: 1, 1: 1}, {1: 1}, {}]
    ker = nullspace(FieldTag.GF2, cols, 2)
    brute = 0
    for bits in product((0, 1), repeat=4):
        img = [sum(b * cols[j].get(i, 0) for j, b in enumerate(bits)) % 2 for i in range(2)]
        brute += img == [0, 0]
    assert 2 ** ker.dimension == brute
