# stabcodes/services/formations.py
"""
Linking formations (P, λ; M, F): a form, a reference lagrangian M and a
stabilizer module F, both given by generator columns over R.

Everything at d >= 1 is checked on the finite compactifications P_ℓ;
d = 0 formations are decided exactly on P itself.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Sequence

from django.conf import settings

from stabcodes.constants import (
    CERTIFIED_INVERTIBLE,
    CONDENSE_AUTO,
    CONDENSE_CONTAINED,
    CONDENSE_TRANSVERSAL,
    FALSIFIED,
    PASSED_FINITE_CHECKS,
)
from stabcodes.exceptions import (
    DegenerateForm,
    InconsistentCertificate,
    LagrangianMismatch,
    NotIsotropic,
    NotLagrangian,
    NotPerfectSquare,
    NotSublagrangian,
    OwnerMismatch,
    SideConditionFailed,
)
from stabcodes.services.finite_groups import AbelianGroup, Element, FiniteGroupPresentation
from stabcodes.services.linking_forms import (
    CompactifiedForm,
    LinkingForm,
    compactify_form,
    eval_pairing,
    orthogonal_sum,
    validate_form,
)
from stabcodes.services.modules import (
    Presentation,
    compactify,
    direct_sum,
    empty_presentation,
    ext_charges_d0,
    presentation_from_rows,
)
from stabcodes.services.ring import Domain, LaurentPoly, PolyMatrix
from stabcodes.services.witt import FiniteQuadraticForm, WittInvariants, witt_invariants
from utils.smith import columns_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Submodule:
    ambient: Presentation
    generators: PolyMatrix
    square_presentation: Optional[Presentation] = None
    quotient_presentation: Optional[Presentation] = None

    def __post_init__(self):
        if self.generators.rows != self.ambient.n:
            raise OwnerMismatch(
                f"Generators have {self.generators.rows} rows, ambient has {self.ambient.n}"
            )

    def columns(self) -> List[List[LaurentPoly]]:
        return self.generators.columns()

    def elements(self):
        return [self.ambient.element(column) for column in self.columns()]

    @classmethod
    def from_columns(cls, ambient: Presentation, columns: Sequence[Sequence], **certificates) -> "Submodule":
        vectors = [ambient.element(column).rep for column in columns]
        matrix = PolyMatrix.from_columns(vectors, ambient.n, ambient.dimension)
        return cls(ambient, matrix, **certificates)


@dataclass(frozen=True, eq=False)
class Formation:
    form: LinkingForm
    m: Submodule
    f: Submodule
    history: tuple = ()

    @property
    def dimension(self) -> int:
        return self.form.dimension


@dataclass(frozen=True)
class FiniteSubgroup:
    group: AbelianGroup
    generators: List[Element]

    @property
    def order(self) -> int:
        return self.group.subgroup_order(self.generators)


@dataclass
class InvertibilityVerdict:
    status: str
    evidence: List[dict] = field(default_factory=list)
    witness: Optional[dict] = None

    def as_dict(self) -> dict:
        return {"status": self.status, "evidence": self.evidence, "witness": self.witness}


def _default_ells(dimension: int) -> tuple:
    return (1,) if dimension == 0 else tuple(settings.STABCODES_DEFAULT_ELLS)


def _checked_ells(dimension: int) -> tuple:
    return (1,) if dimension == 0 else tuple(settings.STABCODES_LAGRANGIAN_CHECK_ELLS)


# ============================================================
# ISOTROPY / ANNIHILATORS
# ============================================================

def is_isotropic(form: LinkingForm, s: Submodule) -> bool:
    if not s.ambient.same_as(form.carrier):
        raise OwnerMismatch("Submodule does not live on the form's carrier")
    elements = s.elements()
    for i, x in enumerate(elements):
        for y in elements[i:]:
            if not eval_pairing(form, x, y).is_zero():
                logger.debug("λ̂(%s, %s) ≠ 0", x, y)
                return False
    return True


def _compact_submodule(compact: CompactifiedForm, s: Submodule) -> List[Element]:
    return compact.submodule_generators(s.columns())


def annihilator_finite(form: LinkingForm, s: Submodule, ell: int, n: Optional[int] = None,
                       cap: Optional[int] = None) -> FiniteSubgroup:
    """s_ℓ^⊥ inside P_ℓ."""
    if not s.ambient.same_as(form.carrier):
        raise OwnerMismatch("Submodule does not live on the form's carrier")
    compact = compactify_form(form, ell, cap)
    if n is not None and n % compact.group.exponent:
        raise ValueError(f"{n} does not annihilate P_{ell} = {compact.group.invariants}")
    generators = _compact_submodule(compact, s)
    return FiniteSubgroup(compact.group, compact.annihilator(generators))


def _lagrangian_at(compact: CompactifiedForm, generators: List[Element]) -> bool:
    group = compact.group
    perp = compact.annihilator(generators)
    return group.same_subgroup(perp, generators)


def _isotropic_at(compact: CompactifiedForm, generators: List[Element]) -> bool:
    perp = compact.annihilator(generators)
    return compact.group.is_subgroup_of(generators, perp)


def build_formation(form: LinkingForm, m: Submodule, f: Submodule, ells: Optional[Sequence[int]] = None,
                    cap: Optional[int] = None, history: tuple = ()) -> Formation:
    """Validate and assemble (P, λ; M, F)."""
    if not is_isotropic(form, m):
        raise NotLagrangian("Reference module M is not isotropic")
    if not is_isotropic(form, f):
        raise NotIsotropic("Stabilizer module F is not isotropic")
    if ells is None:
        ells = _checked_ells(form.dimension)
    for ell in ells:
        compact = compactify_form(form, ell, cap)
        if not _lagrangian_at(compact, _compact_submodule(compact, m)):
            raise NotLagrangian(f"M is not lagrangian at ℓ={ell}")
    return Formation(form=form, m=m, f=f, history=history)


# ============================================================
# DIAGNOSTICS
# ============================================================

def degeneracy(fm: Formation, ell: int, cap: Optional[int] = None) -> int:
    """sqrt |F_ℓ^⊥ / F_ℓ|."""
    compact = compactify_form(fm.form, ell, cap)
    generators = _compact_submodule(compact, fm.f)
    perp = compact.annihilator(generators)
    group = compact.group
    if not group.is_subgroup_of(generators, perp):
        raise NotIsotropic(f"F_{ell} is not isotropic")
    index = group.subgroup_order(perp) // group.subgroup_order(generators)
    root = isqrt(index)
    if root * root != index:
        raise NotPerfectSquare(f"|F^⊥/F| = {index} at ℓ={ell}")
    logger.info("Degeneracy at ℓ=%s: |F^⊥/F| = %s", ell, index)
    return root


def _normal_invariants(orders: Sequence[int]) -> tuple:
    if not orders:
        return ()
    relations = columns_matrix([[m if i == j else 0 for i in range(len(orders))]
                                for j, m in enumerate(orders)], len(orders))
    return FiniteGroupPresentation(relations).invariants


def _submodule_invariants(group: AbelianGroup, generators: List[Element]) -> tuple:
    return _normal_invariants([m for _, m in group.subgroup_structure(generators)])


def _witness(compact: CompactifiedForm, element: Element) -> dict:
    representative = compact.element_from_coordinates(element)
    return {
        "ell": compact.ell,
        "coordinates": list(element),
        "representative": [str(entry) for entry in representative.rep],
    }


def invertibility_check(fm: Formation, ells: Optional[Sequence[int]] = None, n: Optional[int] = None,
                        cap: Optional[int] = None) -> InvertibilityVerdict:
    ells = tuple(ells) if ells else _default_ells(fm.dimension)
    if fm.dimension == 0:
        ells = (1,)
    verdict = InvertibilityVerdict(status=PASSED_FINITE_CHECKS)

    isotropic = is_isotropic(fm.form, fm.f)
    verdict.evidence.append({"check": "isotropy", "ok": isotropic})
    if not isotropic:
        verdict.status = FALSIFIED
        verdict.witness = {"reason": "F is not isotropic"}
        return verdict

    for ell in ells:
        compact = compactify_form(fm.form, ell, cap)
        group = compact.group
        generators = _compact_submodule(compact, fm.f)
        perp = compact.annihilator(generators)
        outside = [x for x in perp if not group.contains(generators, x)]
        index = group.subgroup_order(perp) // group.subgroup_order(generators)
        verdict.evidence.append({"check": "annihilator", "ell": ell, "index": index, "ok": not outside})
        if outside:
            verdict.status = FALSIFIED
            verdict.witness = _witness(compact, outside[0])
            logger.info("Invertibility falsified at ℓ=%s", ell)
            return verdict

        if fm.dimension == 0:
            exponent = n or group.exponent
            f_group = AbelianGroup(_submodule_invariants(group, generators))
            quotient = group.subquotient(group.basis(), generators).quotient
            for label, target in (("F", f_group), ("P/F", quotient)):
                charges = ext_charges_d0(target, exponent)
                verdict.evidence.append({
                    "check": "ext", "module": label, "n": exponent,
                    "groups": {str(i): list(g) for i, g in charges.groups.items()},
                    "ok": charges.vanish,
                })
                if not charges.vanish:
                    verdict.status = FALSIFIED
                    verdict.witness = {"reason": f"Ext of {label} does not vanish", "n": exponent}
                    return verdict

        _check_certificates(fm, compact, generators, verdict)

    verdict.status = CERTIFIED_INVERTIBLE if fm.dimension == 0 else PASSED_FINITE_CHECKS
    return verdict


def _check_certificates(fm: Formation, compact: CompactifiedForm, generators: List[Element],
                        verdict: InvertibilityVerdict):
    square = fm.f.square_presentation
    quotient = fm.f.quotient_presentation
    if square is None or quotient is None:
        return
    ell = compact.ell
    group = compact.group
    expected_f = _submodule_invariants(group, generators)
    expected_q = group.subquotient(group.basis(), generators).quotient.invariants
    got_f = compactify(square, ell).invariants
    got_q = compactify(quotient, ell).invariants
    if got_f != expected_f or got_q != expected_q:
        raise InconsistentCertificate(
            f"At ℓ={ell}: certificate presents {got_f} and {got_q}, "
            f"formation has {expected_f} and {expected_q}"
        )
    verdict.evidence.append({"check": "certificate", "ell": ell, "ok": True})


# ============================================================
# WITT RELATIONS
# ============================================================

def _pad(s: Submodule, before: int, after: int, ambient: Presentation) -> List[List[LaurentPoly]]:
    zero = LaurentPoly.zero(ambient.dimension)
    return [[zero] * before + column + [zero] * after for column in s.columns()]


def stack(fm1: Formation, fm2: Formation) -> Formation:
    form = orthogonal_sum(fm1.form, fm2.form)
    carrier = form.carrier
    n1, n2 = fm1.form.n, fm2.form.n

    def combine(a: Submodule, b: Submodule) -> Submodule:
        columns = _pad(a, 0, n2, carrier) + _pad(b, n1, 0, carrier)
        certificates = {}
        if a.square_presentation and b.square_presentation:
            certificates["square_presentation"] = direct_sum(a.square_presentation, b.square_presentation)
        if a.quotient_presentation and b.quotient_presentation:
            certificates["quotient_presentation"] = direct_sum(a.quotient_presentation, b.quotient_presentation)
        return Submodule(carrier, PolyMatrix.from_columns(columns, carrier.n, carrier.dimension), **certificates)

    return Formation(form=form, m=combine(fm1.m, fm2.m), f=combine(fm1.f, fm2.f),
                     history=fm1.history + fm2.history)


def empty_formation(dimension: int, epsilon: int = -1) -> Formation:
    carrier = empty_presentation(dimension)
    form = validate_form(carrier, PolyMatrix([], dimension, 0), epsilon)
    empty = Submodule(carrier, PolyMatrix([], dimension, 0))
    return Formation(form=form, m=empty, f=empty)


def _same_submodule(form: LinkingForm, a: Submodule, b: Submodule, cap: Optional[int] = None) -> bool:
    """Equal generators, or equal compactified spans on every checked torus."""
    if a.generators == b.generators:
        return True
    for ell in _checked_ells(form.dimension):
        compact = compactify_form(form, ell, cap)
        if not compact.group.same_subgroup(_compact_submodule(compact, a), _compact_submodule(compact, b)):
            return False
    return True


def swap_compose(a: Formation, b: Formation) -> Formation:
    """(P; M, F) and (P; F, G) give (P; M, G); the dropped (P; F, F) is a product code."""
    if not a.form.same_as(b.form):
        raise LagrangianMismatch("The two formations live on different forms")
    if not _same_submodule(a.form, a.f, b.m):
        raise LagrangianMismatch("The middle lagrangians differ")
    return Formation(form=a.form, m=a.m, f=b.f, history=a.history + ("swap",))


def _quotient_formation(form: LinkingForm, compact: CompactifiedForm, numerator: List[Element],
                        denominator: List[Element], m_gens: List[Element], f_gens: List[Element],
                        history: tuple) -> Formation:
    """(numerator/denominator, induced λ̂; images of M and F) as a d = 0 formation."""
    group = compact.group
    sub = group.subquotient(numerator, denominator)
    quotient = sub.quotient
    lifts = [sub.from_quotient(e) for e in quotient.basis()]
    k = quotient.rank
    gram_rows = [[compact.lifted_pairing(lifts[i], lifts[j]) for j in range(k)] for i in range(k)]
    carrier = presentation_from_rows(
        [[d if i == j else 0 for j in range(k)] for i, d in enumerate(quotient.invariants)], 0
    ) if k else empty_presentation(0)
    gram = PolyMatrix.from_values(gram_rows, 0, cols=k).map(lambda e: e.to_domain(Domain.RATIONAL))
    reduced = validate_form(carrier, gram, form.epsilon)

    def image(gens: List[Element]) -> Submodule:
        columns = [list(sub.to_quotient(g)) for g in gens]
        columns = [c for c in columns if any(c)]
        return Submodule.from_columns(carrier, columns)

    return build_formation(reduced, image(m_gens), image(f_gens), ells=(1,), history=history)


def condense(fm: Formation, k: Submodule, variant: str = CONDENSE_AUTO, cap: Optional[int] = None) -> Formation:
    """
    Reduce (P; M, F) by a sublagrangian K ⊆ F to (K^⊥/K; (M ∩ K^⊥)/K, F/K).

    transversal requires M ∩ K = 0 and P = K^⊥ + M; contained requires K ⊆ M.
    """
    if fm.dimension != 0:
        raise ValueError("Condensation is only computed at d = 0")
    compact = compactify_form(fm.form, 1, cap)
    group = compact.group
    k_gens = _compact_submodule(compact, k)
    m_gens = _compact_submodule(compact, fm.m)
    f_gens = _compact_submodule(compact, fm.f)

    if not _isotropic_at(compact, k_gens):
        raise NotSublagrangian("K is not isotropic")
    if not group.is_subgroup_of(k_gens, f_gens):
        raise NotSublagrangian("K is not contained in F")
    perp = compact.annihilator(k_gens)

    failures = []
    chosen = None
    if variant in (CONDENSE_TRANSVERSAL, CONDENSE_AUTO):
        meets = group.subgroup_order(group.intersection(m_gens, k_gens)) != 1
        spans = group.subgroup_order(perp + m_gens) == group.order
        if meets:
            failures.append("M ∩ K ≠ 0")
        if not spans:
            failures.append("K^⊥ + M ≠ P")
        if not meets and spans:
            chosen = CONDENSE_TRANSVERSAL
    if chosen is None and variant in (CONDENSE_CONTAINED, CONDENSE_AUTO):
        if group.is_subgroup_of(k_gens, m_gens):
            chosen = CONDENSE_CONTAINED
        else:
            failures.append("K ⊄ M")
    if chosen is None:
        raise SideConditionFailed(failures)

    m_image = group.intersection(m_gens, perp)
    logger.info("Condensing by K of order %s (%s)", group.subgroup_order(k_gens), chosen)
    return _quotient_formation(fm.form, compact, perp, k_gens, m_image, f_gens,
                               fm.history + (f"condense:{chosen}",))


@dataclass(frozen=True)
class FormationInvariants:
    invariants: Optional[WittInvariants]
    reduced_order: int
    degenerate: bool

    def as_dict(self) -> dict:
        return {
            "invariants": self.invariants.as_dict() if self.invariants else None,
            "reduced_order": self.reduced_order,
            "degenerate": self.degenerate,
        }


def formation_invariants(fm: Formation, cap: Optional[int] = None) -> FormationInvariants:
    """
    Witt invariants of the hyperbolic refinement q(m + f) = tr λ̂(m, f)
    on (M ∩ K^⊥)/K ⊕ F/K, K = M ∩ F.

    q vanishes on both summands, so each is a lagrangian for q and the
    invariants are trivial whenever the refinement is nondegenerate. What the
    result carries is reduced_order and the degenerate flag.
    """
    if fm.dimension != 0:
        raise ValueError("Formation invariants are only computed at d = 0")
    compact = compactify_form(fm.form, 1, cap)
    group = compact.group
    m_gens = _compact_submodule(compact, fm.m)
    f_gens = _compact_submodule(compact, fm.f)
    k_gens = group.intersection(m_gens, f_gens)
    perp = compact.annihilator(k_gens)
    sub = group.subquotient(perp, k_gens)

    def structure(gens):
        images = [sub.to_quotient(g) for g in gens if group.contains(perp, g)]
        return [(sub.from_quotient(h), m) for h, m in sub.quotient.subgroup_structure(images)]

    m_part = structure(m_gens)
    f_part = structure(f_gens)
    basis = m_part + f_part
    size = len(basis)
    b = [[Fraction(0)] * size for _ in range(size)]
    for i, (h, _) in enumerate(m_part):
        for j, (g, _) in enumerate(f_part, start=len(m_part)):
            value = compact.pairing(h, g)
            b[i][j] = value
            b[j][i] = value
    q = FiniteQuadraticForm([m for _, m in basis], [0] * size, b, "formation")
    try:
        invariants = witt_invariants(q, cap)
    except DegenerateForm:
        return FormationInvariants(None, sub.quotient.order, True)
    return FormationInvariants(invariants, sub.quotient.order, False)
