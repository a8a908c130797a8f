import random
from fractions import Fraction

import pytest

from stabcodes.exceptions import DocumentError, IllDefined, ZeroDeterminant
from stabcodes.services.ring import (
    Domain,
    LaurentPoly,
    PolyMatrix,
    regular_representation,
    torus_to_vector,
    vector_to_torus,
)


def _random_poly(rng, dimension, terms=3, spread=2, bound=4):
    return LaurentPoly(
        {tuple(rng.randint(-spread, spread) for _ in range(dimension)): rng.randint(-bound, bound)
         for _ in range(terms)},
        dimension,
    )


def _random_matrix(rng, n, dimension):
    return PolyMatrix([[_random_poly(rng, dimension) for _ in range(n)] for _ in range(n)], dimension)


def test_parse_and_print():
    p = LaurentPoly.parse("1 + x1 - 3*x2^-1", 2)
    assert p.terms == {(0, 0): 1, (1, 0): 1, (0, -1): -3}
    assert LaurentPoly.parse(str(p), 2) == p
    q = LaurentPoly.parse("1/2 x1 x1", 1)
    assert q.domain is Domain.RATIONAL
    assert q.terms == {(2,): Fraction(1, 2)}


def test_parse_reports_position():
    with pytest.raises(DocumentError) as info:
        LaurentPoly.parse("1 + x3", 2, line=4, column=10)
    assert info.value.line == 4
    assert info.value.column == 14


def test_involution_reverses_products():
    rng = random.Random(11)
    for _ in range(10):
        a, b = _random_poly(rng, 2), _random_poly(rng, 2)
        assert (a * b).involution() == a.involution() * b.involution()
        assert a.involution().involution() == a


def test_trace_of_conjugate_product():
    p = LaurentPoly.parse("2 + x1 - x1 x2", 2)
    assert (p * p.involution()).trace() == 6


def test_unit_inverse():
    u = LaurentPoly.parse("-x1^2 x2^-1", 2)
    assert u * u ** -1 == 1
    with pytest.raises(ValueError):
        LaurentPoly.parse("1 + x1", 2) ** -1


def test_constants_hash_like_numbers():
    two = LaurentPoly.constant(2, 1)
    assert two == 2
    assert hash(two) == hash(2)
    assert len({two, 2, Fraction(2)}) == 1
    assert {2: "two"}[two] == "two"
    assert hash(LaurentPoly.zero(2)) == hash(0)
    half = LaurentPoly.constant(Fraction(1, 2), 1)
    assert half == Fraction(1, 2) and hash(half) == hash(Fraction(1, 2))
    assert LaurentPoly.parse("2 x1", 1) != 2


def test_mod_one_arithmetic():
    half = LaurentPoly.parse("1/2 x1", 1).mod_one()
    assert (half + half).is_zero()
    assert (half * LaurentPoly.parse("x1^-1", 1)).terms == {(0,): Fraction(1, 2)}
    with pytest.raises(IllDefined):
        half * LaurentPoly.parse("1/3", 1)


def test_determinant_is_multiplicative():
    rng = random.Random(5)
    for _ in range(4):
        a, b = _random_matrix(rng, 3, 2), _random_matrix(rng, 3, 2)
        assert (a @ b).determinant == a.determinant * b.determinant


def test_adjugate_identity():
    rng = random.Random(3)
    a = _random_matrix(rng, 3, 1)
    assert a @ a.adjugate == PolyMatrix.identity(3, 1).scale(a.determinant)


def test_constant_determinant_uses_exact_elimination():
    a = PolyMatrix.from_values([[2, 1, 0], [1, 2, 1], [0, 1, 2]], 1)
    assert a.determinant == 4


def test_inverse_of_monomial_determinant():
    a = PolyMatrix.from_values([["x1", "1"], ["0", "2"]], 1)
    inverse = a.inverse()
    assert a @ inverse == PolyMatrix.identity(2, 1)
    with pytest.raises(ZeroDeterminant):
        PolyMatrix.from_values([["1 + x1"]], 1).inverse()


def test_torus_reduction_and_regular_matrix():
    p = LaurentPoly.parse("1 + x1^-1", 1)
    reduced = p.reduce_mod_torus(3)
    assert reduced.base.terms == {(0,): 1, (2,): 1}
    q = LaurentPoly.parse("x1^4", 1).reduce_mod_torus(3)
    assert (reduced * q).base == (p * LaurentPoly.parse("x1", 1)).reduce_mod_torus(3).base
    matrix = reduced.regular_matrix()
    assert [list(row) for row in matrix] == [[1, 1, 0], [0, 1, 1], [1, 0, 1]]


def test_regular_representation_is_a_homomorphism():
    rng = random.Random(19)
    a, b = _random_matrix(rng, 2, 2), _random_matrix(rng, 2, 2)
    product = regular_representation(a, 2) @ regular_representation(b, 2)
    assert (product == regular_representation(a @ b, 2)).all()


def test_torus_coordinates():
    vector = [LaurentPoly.parse("1 + 2 x1", 1), LaurentPoly.parse("x1^2", 1)]
    coordinates = vector_to_torus(vector, 3)
    assert coordinates == [1, 2, 0, 0, 0, 1]
    assert torus_to_vector(coordinates, 2, 1, 3) == vector
