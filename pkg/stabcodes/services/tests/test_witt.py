from fractions import Fraction

import pytest

from stabcodes.constants import WITT_EQUIVALENT, WITT_INEQUIVALENT
from stabcodes.exceptions import DegenerateForm, IllDefined, ResourceLimitExceeded
from stabcodes.services.witt import (
    anti_semion,
    copies,
    cyclic_form,
    e_d_table,
    find_lagrangian,
    gauss_milgram,
    hyperbolic,
    l_group,
    orthogonal_sum,
    reference_forms,
    semion,
    three_fermion,
    witt_equivalence,
    witt_invariants,
)

EXPECTED_SIGNATURES = {
    "semion": 1,
    "anti-semion": 7,
    "hyperbolic-z2": 0,
    "three-fermion": 4,
    "z3": 2,
    "z3-bar": 6,
    "z5": 0,
    "z5-bar": 4,
    "z7": 2,
    "z4-1": 1,
    "z4-3": 3,
    "z4-5": 5,
    "z4-7": 7,
}


def test_reference_signatures():
    forms = reference_forms()
    assert set(forms) == set(EXPECTED_SIGNATURES)
    for name, q in forms.items():
        assert q.is_nondegenerate(), name
        assert gauss_milgram(q).sigma == EXPECTED_SIGNATURES[name], name


def test_signature_is_additive():
    total = orthogonal_sum(semion(), cyclic_form(3, Fraction(1, 3), "z3"))
    assert gauss_milgram(total).sigma == 3


def test_per_prime_invariants():
    assert witt_invariants(semion()).per_prime == {2: (1, 1)}
    assert witt_invariants(hyperbolic()).per_prime == {2: (0, 0)}
    z15 = cyclic_form(15, Fraction(1, 15))
    invariants = witt_invariants(z15)
    assert set(invariants.per_prime) == {3, 5}
    assert invariants.per_prime[3][0] == 1 and invariants.per_prime[5][0] == 1


def test_invalid_and_degenerate_forms():
    with pytest.raises(IllDefined):
        cyclic_form(2, Fraction(1, 3))
    trivial = cyclic_form(2, 0)
    assert not trivial.is_nondegenerate()
    with pytest.raises(DegenerateForm):
        gauss_milgram(trivial)


def test_lagrangians_of_copies():
    z3 = cyclic_form(3, Fraction(1, 3), "z3")
    assert find_lagrangian(z3) is None
    assert find_lagrangian(copies(z3, 2)) is None
    found = find_lagrangian(copies(z3, 4))
    assert found is not None
    assert copies(z3, 4).group.subgroup_order(found) == 9

    for count in (1, 2, 4):
        assert find_lagrangian(copies(semion(), count)) is None
    eight = copies(semion(), 8)
    assert witt_invariants(eight).is_trivial()
    found = find_lagrangian(eight)
    assert found is not None
    assert all(eight.q(x) == 0 for x in eight.group.span(found))


def test_lagrangian_search_cap():
    with pytest.raises(ResourceLimitExceeded):
        find_lagrangian(copies(hyperbolic(), 2), cap=8)


def test_non_square_order_has_no_lagrangian_before_any_search():
    z3 = cyclic_form(3, Fraction(1, 3), "z3")
    assert find_lagrangian(copies(z3, 3), cap=1) is None
    with pytest.raises(ResourceLimitExceeded):
        find_lagrangian(copies(z3, 4), cap=1)


def test_witt_equivalence():
    assert witt_equivalence(semion(), semion()) == WITT_EQUIVALENT
    assert witt_equivalence(semion(), anti_semion()) == WITT_INEQUIVALENT
    assert witt_equivalence(semion(), cyclic_form(4, Fraction(1, 8))) == WITT_INEQUIVALENT
    assert witt_equivalence(hyperbolic(), copies(three_fermion(), 2)) == WITT_EQUIVALENT


def test_answer_tables():
    assert e_d_table(3).group == "W^pt"
    assert e_d_table(7).components["p = 2"] == "Z/8 ⊕ Z/2"
    assert e_d_table(4).group == "Z/2"
    assert e_d_table(2).group == "0"
    assert e_d_table(-1).group == "0"
    assert str(e_d_table(5)) == "E_5 = 0"

    assert l_group(2, "q").group == "Z/2"
    assert l_group(1, "s").group == "Z/2"
    assert l_group(-2, "s").group == "0"
    assert l_group(-4, "s").group == "Z"
    assert l_group(4, "Q").components["p ≡ 3 mod 4"] == "Z/4"
    with pytest.raises(ValueError):
        l_group(0, "x")
