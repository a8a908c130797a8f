import random
from fractions import Fraction

import pytest

from stabcodes.exceptions import (
    DimensionMismatch,
    NonUnitMonomialFactor,
    OwnerMismatch,
    ResourceLimitExceeded,
    ZeroDeterminant,
)
from stabcodes.services.modules import (
    DualElement,
    compactify,
    compactify_element,
    count_elements,
    direct_sum,
    dual_pairing,
    elements_equal,
    empty_presentation,
    ext_charges_d0,
    presentation_from_rows,
    s_dual,
)
from stabcodes.services.ring import LaurentPoly

COUNTING_CORPUS = [
    ([["2"]], 1, 2),
    ([["3"]], 2, 3),
    ([["2", "1 + x1"], ["0", "2"]], 1, 4),
    ([["6 x1 x2^-1"]], 2, 6),
    ([["2", "x1"], ["0", "3"]], 1, 6),
    ([["1 + x1", "1"], ["x1", "1"]], 1, 1),
    ([["x1 + 1", "2"], ["x1 - 1", "2"]], 1, 4),
    ([["2", "0"], ["0", "2"]], 2, 4),
    ([["1 + x1 + x2", "x1"], ["1 + x2", "x1"]], 2, 1),
    ([["3", "x1 - 1"], ["0", "-x2"]], 2, 3),
    ([["2", "1 + x1 + x2", "0"], ["0", "1", "0"], ["0", "x2", "2"]], 2, 4),
]


@pytest.mark.parametrize("rows,dimension,k0", COUNTING_CORPUS)
def test_count_matches_k0_power(rows, dimension, k0):
    p = presentation_from_rows(rows, dimension)
    assert p.k0 == k0
    for ell in (1, 2, 3):
        order, ok = count_elements(p, ell)
        assert ok
        assert order == k0 ** (ell ** dimension)


def test_unit_is_a_signed_monomial():
    p = presentation_from_rows([["3", "x1 - 1"], ["0", "-x2"]], 2)
    assert p.unit == LaurentPoly.parse("-x2", 2)


def test_validation_errors():
    with pytest.raises(ZeroDeterminant):
        presentation_from_rows([["1", "1"], ["1", "1"]], 1)
    with pytest.raises(NonUnitMonomialFactor):
        presentation_from_rows([["1 + x1"]], 1)
    with pytest.raises(DimensionMismatch):
        presentation_from_rows([["1/2"]], 1)


def test_empty_presentation_is_trivial():
    p = empty_presentation(2)
    assert p.n == 0 and p.k0 == 1
    assert compactify(p, 3).order == 1


def test_elements_modulo_the_image():
    p = presentation_from_rows([["2", "1 + x1"], ["0", "2"]], 1)
    assert elements_equal(p.element(["1 + x1", "2"]), p.zero())
    assert elements_equal(p.element(["2 x1^3", "0"]), p.zero())
    assert not elements_equal(p.element([1, 0]), p.zero())


def test_dual_pairing_values():
    p = presentation_from_rows([["2"]], 1)
    dual = s_dual(p)
    x = p.element([1])
    assert dual_pairing(dual.element([1]), x).terms == {(0,): Fraction(1, 2)}
    assert dual_pairing(dual.element(["x1"]), x).terms == {(-1,): Fraction(1, 2)}
    assert dual_pairing(dual.element([1]), p.element([2])).is_zero()


def test_dual_pairing_is_r_linear_in_the_module_argument():
    p = presentation_from_rows([["2", "1 + x1"], ["0", "2"]], 1)
    dual = s_dual(p)
    rng = random.Random(2)
    x1 = LaurentPoly.parse("x1", 1)
    for _ in range(5):
        f = dual.element([rng.randint(-3, 3), rng.randint(-3, 3)])
        x = p.element([rng.randint(-3, 3), rng.randint(-3, 3)])
        assert dual_pairing(f, x.act(x1)) == (x1 * dual_pairing(f, x)).mod_one()
        assert dual_pairing(f.act(x1), x) == (x1.involution() * dual_pairing(f, x)).mod_one()


def test_s_dual_builds_dual_elements():
    p = presentation_from_rows([["2", "1 + x1"], ["0", "2"]], 1)
    dual = s_dual(p)
    assert all(isinstance(f, DualElement) for f in dual.generators())
    assert isinstance(dual.element([1, 0]).act(LaurentPoly.parse("x1", 1)), DualElement)
    assert not isinstance(p.element([1, 0]), DualElement)
    assert not isinstance(s_dual(dual).element([1, 0]), DualElement)


def test_dual_pairing_requires_the_s_dual():
    p = presentation_from_rows([["2", "1 + x1"], ["0", "2"]], 1)
    with pytest.raises(TypeError):
        dual_pairing(p.element([1, 0]), p.element([1, 0]))
    other = s_dual(presentation_from_rows([["3", "0"], ["0", "3"]], 1))
    with pytest.raises(OwnerMismatch):
        dual_pairing(other.element([1, 0]), p.element([1, 0]))


def test_direct_sum_multiplies_counts():
    p = presentation_from_rows([["2"]], 1)
    q = presentation_from_rows([["3"]], 1)
    total = direct_sum(p, q)
    assert total.k0 == 6
    assert compactify(total, 2).invariants == (6, 6)


def test_compactified_element_coordinates():
    p = presentation_from_rows([["4"]], 1)
    group = compactify(p, 2)
    assert group.invariants == (4, 4)
    x = p.element(["1 + x1"])
    assert group.element_order(compactify_element(x, 2)) == 4
    assert compactify_element(x.act(LaurentPoly.constant(4, 1)), 2) == group.zero()


def test_compactify_respects_the_cap():
    p = presentation_from_rows([["2"]], 2)
    with pytest.raises(ResourceLimitExceeded):
        compactify(p, 5, cap=10)


def test_ext_charges_over_point_vanish():
    p = presentation_from_rows([["2", "1"], ["0", "2"]], 0)
    group = compactify(p, 1)
    assert group.invariants == (4,)
    assert ext_charges_d0(group, 4).vanish
    assert ext_charges_d0(compactify(presentation_from_rows([["2", "0"], ["0", "4"]], 0), 1), 4).vanish
    with pytest.raises(ValueError):
        ext_charges_d0(group, 2)
