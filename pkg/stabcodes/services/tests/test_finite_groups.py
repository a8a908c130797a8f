from fractions import Fraction

import pytest

from stabcodes.exceptions import ResourceLimitExceeded
from stabcodes.services.finite_groups import (
    AbelianGroup,
    FiniteGroupPresentation,
    search_subgroup,
)
from utils.smith import integer_matrix


def test_group_basics():
    g = AbelianGroup((2, 4))
    assert g.order == 8
    assert g.exponent == 4
    assert g.element_order((1, 1)) == 4
    assert g.element_order((1, 2)) == 2
    assert len(g.span([(1, 0)])) == 2
    assert len(list(g.elements())) == 8


def test_subgroup_orders_from_lattices():
    g = AbelianGroup((2, 4))
    assert g.subgroup_order([(0, 2)]) == 2
    assert g.subgroup_order([(1, 1)]) == 4
    assert g.subgroup_order([(1, 1), (1, 0)]) == 8
    assert g.subgroup_order([]) == 1


def test_subgroup_structure_matches_span():
    g = AbelianGroup((2, 4))
    structure = g.subgroup_structure([(1, 1), (0, 2)])
    orders = sorted(m for _, m in structure)
    assert orders == [4]
    assert g.same_subgroup([h for h, _ in structure], [(1, 1)])


def test_membership_and_intersection():
    g = AbelianGroup((2, 4))
    assert g.contains([(1, 1)], (0, 2))
    assert not g.contains([(1, 1)], (1, 0))
    meet = g.intersection([(1, 1)], [(0, 1)])
    assert g.span(meet) == frozenset({(0, 0), (0, 2)})


def test_annihilator():
    g = AbelianGroup((4,))
    pairing = [[Fraction(1, 4)]]
    assert g.span(g.annihilator([(2,)], pairing)) == frozenset({(0,), (2,)})
    assert g.span(g.annihilator([(1,)], pairing)) == frozenset({(0,)})
    assert g.span(g.annihilator([], pairing)) == frozenset(g.elements())


def test_subquotient_maps():
    g = AbelianGroup((4,))
    sq = g.subquotient([(1,)], [(2,)])
    assert sq.quotient.invariants == (2,)
    assert sq.to_quotient((3,)) == (1,)
    assert sq.to_quotient((2,)) == (0,)
    image = sq.from_quotient((1,))
    assert image in {(1,), (3,)}


def test_subquotient_rejects_non_nested():
    g = AbelianGroup((2, 2))
    with pytest.raises(ValueError):
        g.subquotient([(1, 0)], [(0, 1)])


def test_presented_group_coordinates():
    group = FiniteGroupPresentation(integer_matrix([[2, 1], [0, 2]]))
    assert group.invariants == (4,)
    generator = group.coordinates([0, 1])
    assert group.element_order(generator) == 4
    assert group.coordinates([1, 0]) == group.scale(generator, 2) or \
        group.coordinates([1, 0]) == group.scale(generator, -2)
    assert group.coordinates(group.lift(generator)) == generator


def test_presented_group_must_be_finite():
    with pytest.raises(ValueError):
        FiniteGroupPresentation(integer_matrix([[2, 0], [0, 0]]))


def test_search_finds_isotropic_subgroup():
    g = AbelianGroup((2, 2))

    def q(x):
        return Fraction(x[0] * x[1], 2) % 1

    def b(x, y):
        return Fraction(x[0] * y[1] + x[1] * y[0], 2) % 1

    found = search_subgroup(g, 2, lambda e: q(e) == 0, lambda e, h: b(e, h) == 0)
    assert found is not None
    assert g.subgroup_order(found) == 2
    assert all(q(e) == 0 for e in g.span(found))
    assert search_subgroup(g, 4, lambda e: q(e) == 0, lambda e, h: b(e, h) == 0) is None


def test_search_respects_the_cap():
    g = AbelianGroup((8, 8))
    with pytest.raises(ResourceLimitExceeded):
        search_subgroup(g, 8, lambda e: True, lambda e, h: True, cap=10)
