# stabcodes/services/linking_forms.py
"""
ε-hermitian linking forms stored as rational Gram matrices.

λ̂(x, y) = conj(x)^T · gram · y mod R on representative vectors. The
compactified form on the finite group P_ℓ uses the ℓ-torus trace, lifted
to rationals on the Smith generators of P_ℓ.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Sequence

from django.conf import settings

from stabcodes.constants import CERTIFIED_D0, FALSIFIED_AT, PASSED_FINITE_CHECKS
from stabcodes.exceptions import (
    DimensionMismatch,
    IllDefined,
    NotHermitian,
    OwnerMismatch,
    ResourceLimitExceeded,
)
from stabcodes.services.finite_groups import Element, FiniteGroupPresentation, search_subgroup
from stabcodes.services.modules import (
    ModuleElement,
    Presentation,
    compactify,
    direct_sum,
    s_dual,
)
from stabcodes.services.ring import (
    Domain,
    LaurentPoly,
    PolyMatrix,
    regular_representation,
    torus_monomials,
    torus_to_vector,
    vector_to_torus,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LinkingForm:
    carrier: Presentation
    gram: PolyMatrix
    epsilon: int

    @property
    def dimension(self) -> int:
        return self.carrier.dimension

    @property
    def n(self) -> int:
        return self.carrier.n

    def generators(self) -> List[ModuleElement]:
        return self.carrier.generators()

    def same_as(self, other: "LinkingForm") -> bool:
        return (self.epsilon == other.epsilon and self.carrier.same_as(other.carrier)
                and self.gram == other.gram)


def _rational(matrix: PolyMatrix) -> PolyMatrix:
    return matrix.map(lambda e: e.to_domain(Domain.RATIONAL))


def validate_form(carrier: Presentation, gram: PolyMatrix, epsilon: int) -> LinkingForm:
    if epsilon not in (1, -1):
        raise ValueError(f"epsilon must be +1 or -1, got {epsilon}")
    if not gram.is_square() or gram.rows != carrier.n:
        raise DimensionMismatch(f"Gram matrix must be {carrier.n}x{carrier.n}")
    if gram.dimension != carrier.dimension:
        raise DimensionMismatch("Gram matrix and carrier live in different dimensions")
    gram = _rational(gram)
    boundary = carrier.boundary
    if not (gram @ boundary).is_integral() or not (boundary.conjugate_transpose() @ gram).is_integral():
        raise IllDefined(f"Gram matrix {gram} does not descend to coker ∂")
    defect = gram.conjugate_transpose() - gram.scale(epsilon)
    if not defect.is_integral():
        raise NotHermitian(f"Gram matrix {gram} is not {'+' if epsilon > 0 else '-'}hermitian mod R")
    return LinkingForm(carrier=carrier, gram=gram, epsilon=epsilon)


def _check_carrier(form: LinkingForm, *elements: ModuleElement):
    for x in elements:
        if not x.owner.same_as(form.carrier):
            raise OwnerMismatch("Element does not live on the form's carrier")


def eval_pairing(form: LinkingForm, x: ModuleElement, y: ModuleElement) -> LaurentPoly:
    _check_carrier(form, x, y)
    gy = form.gram.apply(y.rep)
    total = LaurentPoly.zero(form.dimension, Domain.RATIONAL)
    for xi, v in zip(x.rep, gy):
        total = total + xi.involution() * v
    return total.mod_one()


def commutator_phase(form: LinkingForm, x: ModuleElement, y: ModuleElement) -> Fraction:
    """tr λ̂(x, y) in Q/Z; the operators commute up to e^{2πi·value}."""
    return Fraction(eval_pairing(form, x, y).trace()) % 1


def standard_form(m: Presentation, epsilon: int) -> LinkingForm:
    """
    H^ε(M) on M ⊕ M^∨ with gram [[0, (∂*)⁻¹], [ε∂⁻¹, 0]].

    The lower-left block is the evaluation pairing of dual_pairing.
    """
    carrier = direct_sum(m, s_dual(m))
    n = m.n
    d = m.dimension
    upper = m.boundary.conjugate_transpose().inverse() if n else PolyMatrix([], d, 0)
    lower = m.boundary.inverse().scale(epsilon) if n else PolyMatrix([], d, 0)
    zero = LaurentPoly.zero(d, Domain.RATIONAL)
    entries = []
    for i in range(n):
        entries.append([zero] * n + [upper[i, j] for j in range(n)])
    for i in range(n):
        entries.append([lower[i, j] for j in range(n)] + [zero] * n)
    gram = PolyMatrix(entries, d, 2 * n)
    return validate_form(carrier, gram, epsilon)


def orthogonal_sum(f: LinkingForm, g: LinkingForm) -> LinkingForm:
    if f.dimension != g.dimension:
        raise DimensionMismatch(f"Dimensions {f.dimension} and {g.dimension} differ")
    if f.epsilon != g.epsilon:
        raise DimensionMismatch("Forms of different symmetry cannot be summed")
    return LinkingForm(
        carrier=direct_sum(f.carrier, g.carrier),
        gram=PolyMatrix.block_diagonal(f.gram, g.gram),
        epsilon=f.epsilon,
    )


# ============================================================
# EVENNESS
# ============================================================

def _in_q_epsilon(value: LaurentPoly, epsilon: int) -> bool:
    """
    b ∈ Q^ε: b - ε·conj(b) = a - ε·conj(a) for some a ∈ R.

    For ε = -1 that is b_0 ∈ Z and b_m + b_-m ∈ Z; for ε = +1 it is
    b_m - b_-m ∈ Z for m ≠ 0.
    """
    terms = value.terms
    zero = (0,) * value.dimension
    for m, c in terms.items():
        mirror = Fraction(terms.get(tuple(-e for e in m), 0))
        if m == zero:
            if epsilon == -1 and Fraction(c).denominator != 1:
                return False
            continue
        combined = Fraction(c) + mirror if epsilon == -1 else Fraction(c) - mirror
        if combined.denominator != 1:
            return False
    return True


def is_even(form: LinkingForm, generators: Optional[Sequence[ModuleElement]] = None) -> bool:
    generators = list(generators) if generators is not None else form.generators()
    _check_carrier(form, *generators)
    candidates = list(generators)
    for i, g in enumerate(generators):
        for h in generators[i + 1:]:
            candidates.append(g + h)
    for x in candidates:
        value = eval_pairing(form, x, x).to_domain(Domain.RATIONAL)
        if not _in_q_epsilon(value, form.epsilon):
            logger.debug("λ̂(x,x) = %s for x = %s is not in Q^ε", value, x)
            return False
    return True


# ============================================================
# COMPACTIFIED FORMS
# ============================================================

@dataclass(frozen=True, eq=False)
class CompactifiedForm:
    """The finite group P_ℓ with the rational lift of tr∘λ̂ on its Smith generators."""
    form: LinkingForm
    ell: int
    group: FiniteGroupPresentation
    lift: list

    def lifted_pairing(self, a: Element, b: Element) -> Fraction:
        total = Fraction(0)
        for i, ai in enumerate(a):
            if ai:
                row = self.lift[i]
                total += ai * sum((row[j] * bj for j, bj in enumerate(b) if bj), Fraction(0))
        return total

    def pairing(self, a: Element, b: Element) -> Fraction:
        return self.lifted_pairing(a, b) % 1

    def coordinates_of(self, rep: Sequence[LaurentPoly]) -> Element:
        return self.group.coordinates(vector_to_torus(list(rep), self.ell))

    def translates_of(self, rep: Sequence[LaurentPoly]) -> List[Element]:
        out = []
        for shift in torus_monomials(self.form.dimension, self.ell):
            out.append(self.coordinates_of([entry.shift(shift) for entry in rep]))
        return out

    def submodule_generators(self, columns: Sequence[Sequence[LaurentPoly]]) -> List[Element]:
        out = []
        for column in columns:
            out.extend(t for t in self.translates_of(column) if any(t))
        return out

    def annihilator(self, generators: Sequence[Element]) -> List[Element]:
        return self.group.annihilator(generators, self.lift)

    def radical(self) -> List[Element]:
        return self.annihilator(self.group.basis())

    def element_from_coordinates(self, element: Element) -> ModuleElement:
        raw = self.group.lift(element)
        rep = torus_to_vector(raw, self.form.n, self.form.dimension, self.ell)
        return self.form.carrier.element(rep)


def compactify_form(form: LinkingForm, ell: int, cap: Optional[int] = None) -> CompactifiedForm:
    group = compactify(form.carrier, ell, cap)
    raw = regular_representation(form.gram, ell)
    lifts = group.lift_matrix()
    if group.rank:
        lifted = lifts.T @ raw @ lifts
        lift = [[Fraction(v) for v in row] for row in lifted.tolist()]
    else:
        lift = []
    return CompactifiedForm(form=form, ell=ell, group=group, lift=lift)


# ============================================================
# NONSINGULARITY
# ============================================================

@dataclass(frozen=True)
class NonsingularVerdict:
    status: str
    ell: Optional[int] = None
    witness: Optional[Element] = None
    checked: tuple = ()

    def __str__(self) -> str:
        if self.status == FALSIFIED_AT:
            return f"{self.status}({self.ell})"
        return self.status


def nonsingular_check(form: LinkingForm, ells: Sequence[int] = (1, 2, 3),
                      cap: Optional[int] = None) -> NonsingularVerdict:
    """
    Exact at d = 0 (bijectivity onto the character group is triviality of
    the radical). At d >= 1 every ℓ is a finite necessary check only.
    """
    if form.dimension == 0:
        ells = (1,)
    checked = []
    for ell in ells:
        compact = compactify_form(form, ell, cap)
        radical = compact.radical()
        if radical:
            logger.info("Radical of %s at ℓ=%s is nontrivial", form.carrier, ell)
            return NonsingularVerdict(FALSIFIED_AT, ell=ell, witness=radical[0], checked=tuple(checked))
        checked.append(ell)
    status = CERTIFIED_D0 if form.dimension == 0 else PASSED_FINITE_CHECKS
    return NonsingularVerdict(status, checked=tuple(checked))


# ============================================================
# HYPERBOLIC SPLITTING (d = 0)
# ============================================================

@dataclass(frozen=True)
class HyperbolicSplitting:
    group: FiniteGroupPresentation
    lagrangian: List[Element]
    complement: List[Element]


def find_hyperbolic_splitting(form: LinkingForm, cap: Optional[int] = None) -> Optional[HyperbolicSplitting]:
    """
    Transversal lagrangians L, L' of a d = 0 form; P = L ⊕ L' and λ̂
    identifies L' with the dual of L, which exhibits P ≅ H^ε(L).
    """
    if form.dimension != 0:
        raise ValueError("Hyperbolic splittings are only searched at d = 0")
    cap = cap or settings.STABCODES_MAX_GROUP_ORDER
    compact = compactify_form(form, 1)
    group = compact.group
    if group.order > cap:
        logger.warning("Splitting search over a group of order %s exceeds cap %s", group.order, cap)
        raise ResourceLimitExceeded("lagrangian search group", group.order, cap)
    half = isqrt(group.order)
    if half * half != group.order:
        return None

    def element_ok(x):
        return compact.pairing(x, x) == 0

    def pair_ok(x, y):
        return compact.pairing(x, y) == 0

    lagrangian = search_subgroup(group, half, element_ok, pair_ok, cap)
    if lagrangian is None:
        return None
    span = group.span(lagrangian)

    complement = search_subgroup(
        group, half, element_ok, pair_ok, cap,
        closure_ok=lambda closure: len(closure & span) == 1,
    )
    if complement is None:
        return None
    logger.info("Hyperbolic splitting of order %s found", half)
    return HyperbolicSplitting(group=group, lagrangian=lagrangian, complement=complement)
