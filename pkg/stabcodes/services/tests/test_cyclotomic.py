from fractions import Fraction

from utils.cyclotomic import (
    CyclotomicInteger,
    gauss_sum,
    has_magnitude,
    is_square,
    signature_mod_8,
)


def test_roots_reduce():
    assert CyclotomicInteger.root(4, 2) == CyclotomicInteger.constant(-1)
    assert CyclotomicInteger.root(8, 2) == CyclotomicInteger.root(4, 1)
    i = CyclotomicInteger.root(4, 1)
    assert i * i.conjugate() == CyclotomicInteger.constant(1)


def test_cube_roots_sum_to_zero():
    total = gauss_sum([Fraction(0), Fraction(1, 3), Fraction(2, 3)])
    assert total == CyclotomicInteger.constant(0)


def test_semion_signature():
    total = gauss_sum([Fraction(0), Fraction(1, 4)])
    assert has_magnitude(total, 2)
    assert signature_mod_8(total, 2) == 1


def test_z3_signature():
    total = gauss_sum(Fraction(x * x, 3) for x in range(3))
    assert has_magnitude(total, 3)
    assert signature_mod_8(total, 3) == 2


def test_hyperbolic_signature():
    # xy/2 on (Z/2)^2
    total = gauss_sum(Fraction(x * y, 2) for x in range(2) for y in range(2))
    assert signature_mod_8(total, 4) == 0


def test_wrong_magnitude_has_no_signature():
    total = gauss_sum([Fraction(0), Fraction(0)])
    assert not has_magnitude(total, 2)
    assert signature_mod_8(total, 2) is None


def test_is_square():
    assert is_square(0) and is_square(16)
    assert not is_square(8)
    assert not is_square(-4)
