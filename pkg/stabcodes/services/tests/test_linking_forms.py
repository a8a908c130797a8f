from fractions import Fraction

import pytest

from stabcodes.constants import CERTIFIED_D0, FALSIFIED_AT, PASSED_FINITE_CHECKS
from stabcodes.exceptions import DimensionMismatch, IllDefined, NotHermitian, OwnerMismatch
from stabcodes.services.linking_forms import (
    commutator_phase,
    compactify_form,
    find_hyperbolic_splitting,
    is_even,
    nonsingular_check,
    orthogonal_sum,
    standard_form,
    validate_form,
)
from stabcodes.services.modules import presentation_from_rows
from stabcodes.services.ring import PolyMatrix


def _z2(dimension=1):
    return presentation_from_rows([["2"]], dimension)


def test_standard_form_pairs_m_with_its_dual():
    form = standard_form(_z2(), 1)
    x, y = form.generators()
    assert commutator_phase(form, x, y) == Fraction(1, 2)
    assert commutator_phase(form, y, x) == Fraction(1, 2)
    assert commutator_phase(form, x, x) == 0
    assert commutator_phase(form, x.act(x.rep[0] * 2), y) == 0


def test_gram_must_descend():
    with pytest.raises(IllDefined):
        validate_form(_z2(), PolyMatrix.from_values([["1/4"]], 1), 1)


def test_gram_must_be_hermitian():
    carrier = presentation_from_rows([["4"]], 1)
    with pytest.raises(NotHermitian):
        validate_form(carrier, PolyMatrix.from_values([["1/4"]], 1), -1)
    with pytest.raises(ValueError):
        validate_form(carrier, PolyMatrix.from_values([["1/4"]], 1), 0)


def test_pairing_rejects_foreign_elements():
    form = standard_form(_z2(), 1)
    other = presentation_from_rows([["3"]], 1)
    with pytest.raises(OwnerMismatch):
        commutator_phase(form, other.element([1]), other.element([1]))


def test_evenness():
    point = _z2(0)
    assert is_even(standard_form(point, -1))
    odd = validate_form(point, PolyMatrix.from_values([["1/2"]], 0), -1)
    assert not is_even(odd)
    symmetric = validate_form(point, PolyMatrix.from_values([["1/2"]], 0), 1)
    assert is_even(symmetric)


def test_orthogonal_sum_requires_same_symmetry():
    with pytest.raises(DimensionMismatch):
        orthogonal_sum(standard_form(_z2(), 1), standard_form(_z2(), -1))
    total = orthogonal_sum(standard_form(_z2(), 1), standard_form(_z2(), 1))
    assert total.n == 4


def test_compactified_standard_form_is_nondegenerate():
    compact = compactify_form(standard_form(_z2(), 1), 2)
    assert compact.group.order == 16
    assert compact.radical() == []
    for a in compact.group.basis():
        for b in compact.group.basis():
            assert compact.pairing(a, b) in (0, Fraction(1, 2))


def test_coordinates_of_lifted_elements():
    compact = compactify_form(standard_form(_z2(), 1), 2)
    for basis_element in compact.group.basis():
        element = compact.element_from_coordinates(basis_element)
        assert compact.coordinates_of(element.rep) == basis_element


def test_submodule_generators_cover_translates():
    form = standard_form(_z2(), 1)
    compact = compactify_form(form, 2)
    generators = compact.submodule_generators([form.generators()[0].rep])
    assert compact.group.subgroup_order(generators) == 4
    annihilator = compact.annihilator(generators)
    assert compact.group.same_subgroup(annihilator, generators)


def test_nonsingular_verdicts():
    assert nonsingular_check(standard_form(_z2(), 1)).status == PASSED_FINITE_CHECKS
    assert nonsingular_check(standard_form(_z2(0), 1)).status == CERTIFIED_D0
    degenerate = validate_form(_z2(0), PolyMatrix.from_values([["0"]], 0), -1)
    verdict = nonsingular_check(degenerate)
    assert verdict.status == FALSIFIED_AT
    assert verdict.ell == 1
    assert verdict.witness == (1,)
    assert str(verdict) == "FalsifiedAt(1)"


def test_hyperbolic_splitting_at_a_point():
    form = standard_form(_z2(0), 1)
    splitting = find_hyperbolic_splitting(form)
    assert splitting is not None
    group = splitting.group
    assert group.subgroup_order(splitting.lagrangian) == 2
    assert group.subgroup_order(splitting.lagrangian + splitting.complement) == 4

    semion = validate_form(_z2(0), PolyMatrix.from_values([["1/2"]], 0), 1)
    assert find_hyperbolic_splitting(semion) is None
    with pytest.raises(ValueError):
        find_hyperbolic_splitting(standard_form(_z2(), 1))
