import pytest

from stabcodes.constants import (
    CERTIFIED_INVERTIBLE,
    CONDENSE_CONTAINED,
    CONDENSE_TRANSVERSAL,
    FALSIFIED,
    PASSED_FINITE_CHECKS,
)
from stabcodes.exceptions import (
    InconsistentCertificate,
    LagrangianMismatch,
    NotIsotropic,
    NotLagrangian,
    NotSublagrangian,
    SideConditionFailed,
)
from stabcodes.services import formations
from stabcodes.services.corpus import load_document
from stabcodes.services.documents import build_formation
from stabcodes.services.formations import (
    Formation,
    Submodule,
    annihilator_finite,
    condense,
    degeneracy,
    empty_formation,
    formation_invariants,
    invertibility_check,
    stack,
    swap_compose,
)
from stabcodes.services.linking_forms import compactify_form
from stabcodes.services.modules import compactify, presentation_from_rows


def _formation(corpus, name):
    _, doc = load_document(corpus)
    return build_formation(doc, name)


def test_toric_degeneracy():
    toric = _formation("toric", "toric")
    assert degeneracy(toric, 2) == 4
    compact = compactify_form(toric.form, 2)
    assert compact.group.order == 2 ** 16
    f_order = compact.group.subgroup_order(compact.submodule_generators(toric.f.columns()))
    assert f_order == 2 ** 6


def test_toric_degeneracy_is_four_on_every_torus():
    toric = _formation("toric", "toric")
    assert degeneracy(toric, 1) == 4
    assert degeneracy(toric, 3) == 4


def test_trivial_codes_have_no_degeneracy():
    for corpus, name in (("product", "product"), ("product", "swap"), ("cluster-like", "cluster")):
        fm = _formation(corpus, name)
        for ell in (1, 2, 3):
            assert degeneracy(fm, ell) == 1, (name, ell)


def test_annihilator_of_toric_stabilizers():
    toric = _formation("toric", "toric")
    perp = annihilator_finite(toric.form, toric.f, 2)
    assert perp.order == 2 ** 10
    with pytest.raises(ValueError):
        annihilator_finite(toric.form, toric.f, 2, n=3)


def test_toric_is_not_invertible():
    verdict = invertibility_check(_formation("toric", "toric"), ells=(2,))
    assert verdict.status == FALSIFIED
    assert verdict.witness["ell"] == 2
    assert len(verdict.witness["representative"]) == 4
    assert any(e.get("index") == 16 for e in verdict.evidence)


def test_cluster_passes_finite_checks():
    verdict = invertibility_check(_formation("cluster-like", "cluster"))
    assert verdict.status == PASSED_FINITE_CHECKS
    assert verdict.witness is None
    assert [e["ell"] for e in verdict.evidence if e["check"] == "annihilator"] == [1, 2, 3]


def test_point_formation_with_certificates_is_certified():
    verdict = invertibility_check(_formation("hyperbolic-z4", "condensable"))
    assert verdict.status == CERTIFIED_INVERTIBLE
    checks = {e["check"] for e in verdict.evidence}
    assert {"isotropy", "annihilator", "ext", "certificate"} <= checks


def test_wrong_certificate_is_reported():
    swap = _formation("hyperbolic-z4", "swap")
    carrier = swap.form.carrier
    f = Submodule.from_columns(
        carrier, [[0, 1]],
        square_presentation=presentation_from_rows([["2"]], 0),
        quotient_presentation=presentation_from_rows([["4"]], 0),
    )
    with pytest.raises(InconsistentCertificate):
        invertibility_check(Formation(swap.form, swap.m, f))


def test_build_formation_validates_submodules():
    swap = _formation("hyperbolic-z4", "swap")
    carrier = swap.form.carrier
    with pytest.raises(NotIsotropic):
        formations.build_formation(swap.form, swap.m, Submodule.from_columns(carrier, [[1, 0], [0, 1]]))
    with pytest.raises(NotLagrangian):
        formations.build_formation(swap.form, Submodule.from_columns(carrier, [[2, 0]]), swap.f)


def test_stack_adds_carriers():
    product = _formation("product", "product")
    swap = _formation("product", "swap")
    stacked = stack(product, swap)
    assert stacked.form.n == 4
    assert stacked.history == ("product", "swap")
    assert degeneracy(stacked, 2) == 1


def test_empty_formation():
    empty = empty_formation(1)
    assert empty.form.n == 0
    assert degeneracy(empty, 3) == 1


def test_swap_compose():
    product = _formation("product", "product")
    swap = _formation("product", "swap")
    composed = swap_compose(product, swap)
    assert composed.f.generators == swap.f.generators
    assert composed.history[-1] == "swap"
    with pytest.raises(LagrangianMismatch):
        swap_compose(swap, swap)


def test_condense_contained():
    fm = _formation("hyperbolic-z4", "condensable")
    k = Submodule.from_columns(fm.form.carrier, [[2, 0]])
    reduced = condense(fm, k)
    assert reduced.history[-1] == f"condense:{CONDENSE_CONTAINED}"
    assert compactify(reduced.form.carrier, 1).invariants == (2, 2)
    assert degeneracy(reduced, 1) == 1
    assert invertibility_check(reduced).status == CERTIFIED_INVERTIBLE


def test_condense_side_conditions():
    fm = _formation("hyperbolic-z4", "condensable")
    carrier = fm.form.carrier
    with pytest.raises(SideConditionFailed) as info:
        condense(fm, Submodule.from_columns(carrier, [[2, 0]]), variant=CONDENSE_TRANSVERSAL)
    assert "M ∩ K ≠ 0" in info.value.conditions
    with pytest.raises(NotSublagrangian):
        condense(fm, Submodule.from_columns(carrier, [[0, 2]]))
    with pytest.raises(ValueError):
        condense(_formation("toric", "toric"), Submodule.from_columns(
            _formation("toric", "toric").form.carrier, [[0, 0, 0, 0]]))


def test_formation_invariants_are_trivial_for_lagrangian_pairs():
    for name in ("condensable", "swap"):
        result = formation_invariants(_formation("hyperbolic-z4", name))
        assert not result.degenerate
        assert result.invariants.is_trivial()
    assert formation_invariants(_formation("hyperbolic-z4", "condensable")).reduced_order == 4


def _planar_product(toric):
    """X on both qubits of a site: transversal to M, so no degeneracy."""
    carrier = toric.form.carrier
    f = Submodule.from_columns(carrier, [[0, 0, 1, 0], [0, 0, 0, 1]])
    return formations.build_formation(toric.form, toric.m, f, history=("planar-product",))


def test_degeneracy_multiplies_under_stack():
    toric = _formation("toric", "toric")
    product = _planar_product(toric)
    assert degeneracy(product, 2) == 1
    assert degeneracy(stack(toric, product), 2) == degeneracy(toric, 2) * degeneracy(product, 2) == 4
    assert degeneracy(stack(toric, toric), 2) == 16


def test_stack_of_invertible_codes_passes_finite_checks():
    stacked = stack(_formation("cluster-like", "cluster"), _formation("product", "product"))
    verdict = invertibility_check(stacked)
    assert verdict.status == PASSED_FINITE_CHECKS
    assert verdict.witness is None


def test_stack_and_swap_compose_have_equal_invariants():
    swap = _formation("hyperbolic-z4", "swap")
    carrier = swap.form.carrier
    onward = formations.build_formation(
        swap.form, swap.f, Submodule.from_columns(carrier, [[1, 2]]), history=("onward",))
    stacked = formation_invariants(stack(swap, onward))
    composed = formation_invariants(swap_compose(swap, onward))
    assert not stacked.degenerate and not composed.degenerate
    assert stacked.reduced_order == 256
    assert composed.reduced_order == 4
    assert (stacked.invariants.sigma, stacked.invariants.per_prime) == (
        composed.invariants.sigma, composed.invariants.per_prime)


def test_swap_compose_accepts_a_rewritten_middle_lagrangian():
    product = _formation("product", "product")
    swap = _formation("product", "swap")
    carrier = product.form.carrier
    rewritten = Submodule.from_columns(carrier, [["x1", 0]])
    assert rewritten.generators != product.f.generators
    composed = swap_compose(product, Formation(product.form, rewritten, swap.f))
    assert composed.m.generators == product.m.generators
    assert composed.f.generators == swap.f.generators
    shifted = Submodule.from_columns(carrier, [[0, "x1^-1"]])
    with pytest.raises(LagrangianMismatch):
        swap_compose(product, Formation(product.form, shifted, swap.f))
