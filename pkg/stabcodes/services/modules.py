# stabcodes/services/modules.py
"""
(R,S)-modules presented as cokernels of square Laurent matrices.

A Presentation stores ∂ together with det ∂ = unit · k0, where unit is
±(monomial) and k0 a positive integer. Elements are column vectors over R
taken modulo the image of ∂.
"""
import hashlib
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import List, Optional, Sequence

from django.conf import settings
from django.core.cache import cache

from stabcodes.constants import COMPACTIFY_CACHE_KEY_PATTERN
from stabcodes.exceptions import (
    CountMismatch,
    DimensionMismatch,
    NonUnitMonomialFactor,
    OwnerMismatch,
    ResourceLimitExceeded,
    ZeroDeterminant,
)
from stabcodes.services.finite_groups import Element, FiniteGroupPresentation
from stabcodes.services.ring import (
    Domain,
    LaurentPoly,
    PolyMatrix,
    regular_representation,
    vector_to_torus,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Presentation:
    boundary: PolyMatrix
    dimension: int
    k0: int
    unit: LaurentPoly
    dual: bool = False

    @property
    def n(self) -> int:
        return self.boundary.rows

    @cached_property
    def adjugate(self) -> PolyMatrix:
        return self.boundary.adjugate

    @cached_property
    def unit_inverse(self) -> LaurentPoly:
        return self.unit ** -1

    def solve(self, vector: Sequence[LaurentPoly]) -> Optional[List[LaurentPoly]]:
        """The unique v over R with ∂v = vector, or None when vector ∉ im ∂."""
        candidate = [self.unit_inverse * y for y in self.adjugate.apply(vector)]
        out = []
        for entry in candidate:
            if any(c % self.k0 for c in entry.terms.values()):
                return None
            out.append(LaurentPoly({m: c // self.k0 for m, c in entry.terms.items()}, self.dimension))
        return out

    def element(self, rep: Sequence) -> "ModuleElement":
        cls = DualElement if self.dual else ModuleElement
        return cls(self, _as_vector(rep, self))

    def zero(self) -> "ModuleElement":
        return self.element([0] * self.n)

    def generators(self) -> List["ModuleElement"]:
        return [self.element([int(i == j) for i in range(self.n)]) for j in range(self.n)]

    def same_as(self, other: "Presentation") -> bool:
        return self.dimension == other.dimension and self.boundary == other.boundary

    def __eq__(self, other) -> bool:
        return isinstance(other, Presentation) and self.same_as(other)

    def __hash__(self):
        return hash((self.dimension, self.boundary))

    def __str__(self) -> str:
        return f"coker {self.boundary} (d={self.dimension}, k0={self.k0})"


def _as_vector(rep: Sequence, owner: Presentation) -> List[LaurentPoly]:
    if len(rep) != owner.n:
        raise DimensionMismatch(f"Expected {owner.n} entries, got {len(rep)}")
    out = []
    for value in rep:
        if isinstance(value, LaurentPoly):
            if value.dimension != owner.dimension:
                raise DimensionMismatch(f"{value} is not in {owner.dimension} variables")
            out.append(value)
        elif isinstance(value, str):
            out.append(LaurentPoly.parse(value, owner.dimension, Domain.INTEGER))
        else:
            out.append(LaurentPoly.constant(value, owner.dimension, Domain.INTEGER))
    return out


@dataclass(frozen=True, eq=False)
class ModuleElement:
    owner: Presentation
    rep: List[LaurentPoly] = field(default_factory=list)

    def _check(self, other: "ModuleElement"):
        if not self.owner.same_as(other.owner):
            raise OwnerMismatch("Elements belong to different presentations")

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._check(other)
        return type(self)(self.owner, [a + b for a, b in zip(self.rep, other.rep)])

    def __neg__(self) -> "ModuleElement":
        return type(self)(self.owner, [-a for a in self.rep])

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + (-other)

    def act(self, r: LaurentPoly) -> "ModuleElement":
        """r·x."""
        return type(self)(self.owner, [r * a for a in self.rep])

    def __str__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.rep) + ")"


class DualElement(ModuleElement):
    """An element of N₁* whose owner is the S-dual presentation."""


# ============================================================
# VALIDATION / DUALITY
# ============================================================

def validate_presentation(boundary: PolyMatrix) -> Presentation:
    if not boundary.is_square():
        raise DimensionMismatch(f"Boundary must be square, got {boundary.rows}x{boundary.cols}")
    if not boundary.is_integral():
        raise DimensionMismatch("Boundary entries must have integer coefficients")
    boundary = boundary.map(lambda e: e.to_domain(Domain.INTEGER))
    det = boundary.determinant
    if det.is_zero():
        raise ZeroDeterminant(f"det {boundary} = 0")
    unit = det.unit_factor()
    if unit is None:
        raise NonUnitMonomialFactor(f"det = {det} is not a monomial times an integer")
    coefficient, exponents = unit
    k0 = abs(int(coefficient))
    sign = 1 if coefficient > 0 else -1
    logger.debug("Validated presentation %s with k0=%s", boundary, k0)
    return Presentation(
        boundary=boundary,
        dimension=boundary.dimension,
        k0=k0,
        unit=LaurentPoly.monomial(exponents, sign),
    )


def presentation_from_rows(rows, dimension: int) -> Presentation:
    return validate_presentation(PolyMatrix.from_values(rows, dimension, cols=len(rows)))


def elements_equal(x: ModuleElement, y: ModuleElement) -> bool:
    x._check(y)
    return x.owner.solve((x - y).rep) is not None


def s_dual(p: Presentation) -> Presentation:
    return Presentation(
        boundary=p.boundary.conjugate_transpose(),
        dimension=p.dimension,
        k0=p.k0,
        unit=p.unit.involution(),
        dual=not p.dual,
    )


def dual_pairing(f: "DualElement", x: ModuleElement) -> LaurentPoly:
    """
    Σ_i conj(f_i)·y_i / k0 mod R with y = unit⁻¹·adj(∂)·x, so that k0·x = ∂y.

    R-linear in x and conjugate-linear in f; f's owner must be the S-dual.
    """
    if not isinstance(f, DualElement):
        raise TypeError(f"Expected an element of an S-dual presentation, got {type(f).__name__}")
    p = x.owner
    if not f.owner.same_as(s_dual(p)):
        raise OwnerMismatch("The functional does not live on the S-dual presentation")
    y = [p.unit_inverse * v for v in p.adjugate.apply(x.rep)]
    total = LaurentPoly.zero(p.dimension)
    for fi, yi in zip(f.rep, y):
        total = total + fi.involution() * yi
    return (total * Fraction(1, p.k0)).mod_one()


def direct_sum(p: Presentation, q: Presentation) -> Presentation:
    if p.dimension != q.dimension:
        raise DimensionMismatch(f"Dimensions {p.dimension} and {q.dimension} differ")
    return Presentation(
        boundary=PolyMatrix.block_diagonal(p.boundary, q.boundary),
        dimension=p.dimension,
        k0=p.k0 * q.k0,
        unit=p.unit * q.unit,
    )


def empty_presentation(dimension: int) -> Presentation:
    return validate_presentation(PolyMatrix([], dimension, 0))


# ============================================================
# COMPACTIFICATION
# ============================================================

def _cache_key(p: Presentation, ell: int) -> str:
    digest = hashlib.sha256(f"{p.dimension}|{p.boundary}|{ell}".encode()).hexdigest()
    return COMPACTIFY_CACHE_KEY_PATTERN.format(digest=digest)


def compactify(p: Presentation, ell: int, cap: Optional[int] = None) -> FiniteGroupPresentation:
    """M_ℓ = coker of the ℓ-torus block matrix of ∂, in Smith form."""
    if ell <= 0:
        raise ValueError(f"Torus size must be positive, got {ell}")
    cap = cap or settings.STABCODES_MAX_COMPACT_DIM
    size = p.n * ell ** p.dimension
    if size > cap:
        logger.warning("Compactification of size %s exceeds cap %s", size, cap)
        raise ResourceLimitExceeded("compactified matrix", size, cap)

    key = _cache_key(p, ell)
    group = cache.get(key)
    if group is None:
        group = FiniteGroupPresentation(regular_representation(p.boundary, ell))
        cache.set(key, group)
        logger.info("Compactified %s at ℓ=%s: invariants %s", p, ell, group.invariants)
    return group


def compactify_element(x: ModuleElement, ell: int, cap: Optional[int] = None) -> Element:
    group = compactify(x.owner, ell, cap)
    return group.coordinates(vector_to_torus(x.rep, ell))


def count_elements(p: Presentation, ell: int, cap: Optional[int] = None) -> tuple:
    """(|M_ℓ|, True); the order must equal k0^(ℓ^d)."""
    order = compactify(p, ell, cap).order
    expected = p.k0 ** (ell ** p.dimension)
    if order != expected:
        raise CountMismatch(f"|M_{ell}| = {order} but k0^(ℓ^d) = {expected}")
    return order, True


# ============================================================
# EXT OVER Z/n (d = 0)
# ============================================================

@dataclass(frozen=True)
class ExtCharges:
    n: int
    groups: dict
    vanish: bool


def _cyclic_quotient_order(kernel_factor: int, image_factor: int, n: int) -> int:
    """|ker(×kernel_factor) / im(×image_factor)| on Z/n."""
    return gcd(kernel_factor, n) // (n // gcd(image_factor, n))


def ext_charges_d0(group: FiniteGroupPresentation, n: int) -> ExtCharges:
    """
    Ext^i_{Z/n}(M, Z/n) for i = 1, 2 from the periodic resolution of each
    cyclic factor Z/m: ... → Z/n →(×n/m) Z/n →(×m) Z/n → Z/m.
    """
    if n <= 0 or any(n % m for m in group.invariants):
        raise ValueError(f"{n} does not annihilate {group.invariants}")
    groups = {}
    for i in (1, 2):
        orders = []
        for m in group.invariants:
            # Hom(-, Z/n) gives Z/n →(×m) Z/n →(×n/m) Z/n →(×m) ...
            if i % 2:
                order = _cyclic_quotient_order(n // m, m, n)
            else:
                order = _cyclic_quotient_order(m, n // m, n)
            if order > 1:
                orders.append(order)
        groups[i] = tuple(sorted(orders))
    vanish = all(not g for g in groups.values())
    logger.debug("Ext over Z/%s of %s: %s", n, group.invariants, groups)
    return ExtCharges(n=n, groups=groups, vanish=vanish)
