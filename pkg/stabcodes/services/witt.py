# stabcodes/services/witt.py
"""
Quadratic forms on finite abelian groups and their Witt invariants.

A form is given on Z/d_1 ⊕ ... ⊕ Z/d_k by q on the basis vectors and the
associated bilinear form b, both rational mod 1:

    q(x) = Σ x_i² q_i + Σ_{i<j} x_i x_j b_ij,   b(x, y) = Σ x_i y_j b_ij.

Gauss sums are evaluated exactly in cyclotomic integers.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Dict, List, Optional, Sequence

from django.conf import settings

from stabcodes.constants import WITT_EQUIVALENT, WITT_INEQUIVALENT, WITT_UNDECIDED
from stabcodes.exceptions import DegenerateForm, IllDefined, ResourceLimitExceeded
from stabcodes.services.finite_groups import AbelianGroup, Element, search_subgroup
from utils.cyclotomic import gauss_sum, has_magnitude, is_square, signature_mod_8

logger = logging.getLogger(__name__)


def _prime_factors(n: int) -> List[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class FiniteQuadraticForm:
    def __init__(self, invariants: Sequence[int], q_values: Sequence, b: Sequence[Sequence],
                 name: str = ""):
        self.group = AbelianGroup(invariants)
        k = self.group.rank
        self.q_values = [Fraction(v) % 1 for v in q_values]
        self.b = [[Fraction(v) % 1 for v in row] for row in b]
        self.name = name
        if len(self.q_values) != k or len(self.b) != k or any(len(row) != k for row in self.b):
            raise IllDefined(f"Form data does not match {k} generators")
        self._validate()

    def _validate(self):
        d = self.group.invariants
        k = self.group.rank
        for i in range(k):
            if (d[i] ** 2 * self.q_values[i]).denominator != 1:
                raise IllDefined(f"q(d_{i + 1}·e_{i + 1}) is not 0 mod 1")
            if (self.b[i][i] - 2 * self.q_values[i]) % 1:
                raise IllDefined(f"b_{i + 1}{i + 1} is not 2·q_{i + 1}")
            for j in range(k):
                if self.b[i][j] != self.b[j][i]:
                    raise IllDefined("b is not symmetric")
                if (d[i] * self.b[i][j]).denominator != 1:
                    raise IllDefined(f"b_{i + 1}{j + 1} does not descend to Z/{d[i]}")

    @property
    def invariants(self) -> tuple:
        return self.group.invariants

    @property
    def order(self) -> int:
        return self.group.order

    def q(self, x: Element) -> Fraction:
        total = Fraction(0)
        k = self.group.rank
        for i in range(k):
            if x[i]:
                total += x[i] * x[i] * self.q_values[i]
                for j in range(i + 1, k):
                    if x[j]:
                        total += x[i] * x[j] * self.b[i][j]
        return total % 1

    def bilinear(self, x: Element, y: Element) -> Fraction:
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        total += xi * yj * self.b[i][j]
        return total % 1

    def is_nondegenerate(self) -> bool:
        return not self.group.annihilator(self.group.basis(), self.b)

    def __repr__(self) -> str:
        return f"FiniteQuadraticForm({self.name or self.invariants})"


def orthogonal_sum(q1: FiniteQuadraticForm, q2: FiniteQuadraticForm) -> FiniteQuadraticForm:
    k1, k2 = q1.group.rank, q2.group.rank
    b = [row + [0] * k2 for row in q1.b] + [[0] * k1 + row for row in q2.b]
    name = f"{q1.name}+{q2.name}" if q1.name and q2.name else ""
    return FiniteQuadraticForm(q1.invariants + q2.invariants, q1.q_values + q2.q_values, b, name)


def negate(q: FiniteQuadraticForm) -> FiniteQuadraticForm:
    return FiniteQuadraticForm(
        q.invariants, [-v for v in q.q_values], [[-v for v in row] for row in q.b],
        f"-{q.name}" if q.name else "",
    )


def copies(q: FiniteQuadraticForm, count: int) -> FiniteQuadraticForm:
    out = FiniteQuadraticForm((), [], [], "")
    for _ in range(count):
        out = orthogonal_sum(out, q)
    out.name = f"{q.name}^{count}" if q.name else ""
    return out


def primary_part(q: FiniteQuadraticForm, p: int) -> FiniteQuadraticForm:
    """Restriction to the p-primary subgroup generated by r_i·e_i, r_i the p'-part of d_i."""
    keep, factors, invariants = [], [], []
    for i, d in enumerate(q.invariants):
        v = _valuation(d, p)
        if v:
            keep.append(i)
            factors.append(d // p ** v)
            invariants.append(p ** v)
    q_values = [r * r * q.q_values[i] for i, r in zip(keep, factors)]
    b = [[ri * rj * q.b[i][j] for j, rj in zip(keep, factors)] for i, ri in zip(keep, factors)]
    return FiniteQuadraticForm(invariants, q_values, b, f"{q.name}_{p}" if q.name else "")


# ============================================================
# GAUSS–MILGRAM
# ============================================================

@dataclass(frozen=True)
class GaussMilgram:
    sigma: int
    magnitude_ok: bool


def gauss_milgram(q: FiniteQuadraticForm, cap: Optional[int] = None) -> GaussMilgram:
    cap = cap or settings.STABCODES_MAX_GAUSS_ORDER
    if q.order > cap:
        logger.warning("Gauss sum over a group of order %s exceeds cap %s", q.order, cap)
        raise ResourceLimitExceeded("Gauss sum group", q.order, cap)
    total = gauss_sum(q.q(x) for x in q.group.elements())
    if not has_magnitude(total, q.order):
        raise DegenerateForm(f"|Gauss sum|² ≠ {q.order} for {q!r}")
    sigma = signature_mod_8(total, q.order)
    if sigma is None:
        raise DegenerateForm(f"Gauss sum of {q!r} is not an 8th root of unity times sqrt|D|")
    logger.debug("Gauss–Milgram signature of %r is %s", q, sigma)
    return GaussMilgram(sigma=sigma, magnitude_ok=True)


def find_lagrangian(q: FiniteQuadraticForm, cap: Optional[int] = None) -> Optional[List[Element]]:
    """Generators of a subgroup of order sqrt|D| on which q vanishes, or None."""
    cap = cap or settings.STABCODES_MAX_GROUP_ORDER
    if not is_square(q.order):
        return None
    half = isqrt(q.order)
    if q.order > cap:
        logger.warning("Lagrangian search over a group of order %s exceeds cap %s", q.order, cap)
        raise ResourceLimitExceeded("lagrangian search group", q.order, cap)
    found = search_subgroup(
        q.group, half,
        element_ok=lambda x: q.q(x) == 0,
        pair_ok=lambda x, y: q.bilinear(x, y) == 0,
        cap=cap,
    )
    logger.info("Lagrangian search on %r: %s", q, "found" if found is not None else "none")
    return found


# ============================================================
# WITT INVARIANTS
# ============================================================

@dataclass(frozen=True)
class WittInvariants:
    sigma: int
    per_prime: Dict[int, tuple] = field(default_factory=dict)
    group_order: int = 1

    def is_trivial(self) -> bool:
        return self.sigma == 0 and all(v == (0, 0) for v in self.per_prime.values())

    def as_dict(self) -> dict:
        return {
            "sigma": self.sigma,
            "group_order": self.group_order,
            "per_prime": {str(p): list(v) for p, v in sorted(self.per_prime.items())},
        }


def witt_invariants(q: FiniteQuadraticForm, cap: Optional[int] = None) -> WittInvariants:
    """
    σ plus, per prime p, (log_p |D_p| mod 2, σ of the p-primary part).
    """
    sigma = gauss_milgram(q, cap).sigma
    per_prime = {}
    for p in _prime_factors(q.order):
        part = primary_part(q, p)
        per_prime[p] = (_valuation(part.order, p) % 2, gauss_milgram(part, cap).sigma)
    return WittInvariants(sigma=sigma, per_prime=per_prime, group_order=q.order)


def hyperbolic(n: int = 2) -> FiniteQuadraticForm:
    half = Fraction(1, n)
    return FiniteQuadraticForm((n, n), [0, 0], [[0, half], [half, 0]], f"hyperbolic-z{n}")


def witt_equivalence(q1: FiniteQuadraticForm, q2: FiniteQuadraticForm,
                     cap: Optional[int] = None) -> str:
    """
    equivalent when q1 ⊕ (−q2), stabilized by up to two hyperbolic planes,
    has a lagrangian; inequivalent when the invariants differ; else undecided.
    """
    difference = orthogonal_sum(q1, negate(q2))
    if not witt_invariants(difference, cap).is_trivial():
        return WITT_INEQUIVALENT
    candidate = difference
    for _ in range(3):
        try:
            if find_lagrangian(candidate, cap) is not None:
                return WITT_EQUIVALENT
        except ResourceLimitExceeded:
            break
        candidate = orthogonal_sum(candidate, hyperbolic())
    return WITT_UNDECIDED


# ============================================================
# REFERENCE FORMS
# ============================================================

def cyclic_form(n: int, q_value, name: str = "") -> FiniteQuadraticForm:
    q_value = Fraction(q_value)
    return FiniteQuadraticForm((n,), [q_value], [[2 * q_value]], name)


def semion() -> FiniteQuadraticForm:
    return cyclic_form(2, Fraction(1, 4), "semion")


def anti_semion() -> FiniteQuadraticForm:
    return cyclic_form(2, Fraction(3, 4), "anti-semion")


def three_fermion() -> FiniteQuadraticForm:
    half = Fraction(1, 2)
    return FiniteQuadraticForm((2, 2), [half, half], [[0, half], [half, 0]], "three-fermion")


def reference_forms() -> Dict[str, FiniteQuadraticForm]:
    """Named corpus of nondegenerate forms used by the witt command and tests."""
    forms = [
        semion(),
        anti_semion(),
        hyperbolic(2),
        three_fermion(),
        cyclic_form(3, Fraction(1, 3), "z3"),
        cyclic_form(3, Fraction(2, 3), "z3-bar"),
        cyclic_form(5, Fraction(1, 5), "z5"),
        cyclic_form(5, Fraction(2, 5), "z5-bar"),
        cyclic_form(7, Fraction(1, 7), "z7"),
    ]
    forms += [cyclic_form(4, Fraction(k, 8), f"z4-{k}") for k in (1, 3, 5, 7)]
    return {q.name: q for q in forms}


# ============================================================
# ANSWER TABLES
# ============================================================

W_PT_DESCRIPTION = "W^pt = ⊕_p W^pt_p"


def w_pt_component(p: int) -> str:
    if p == 2:
        return "Z/8 ⊕ Z/2"
    return "Z/2 ⊕ Z/2" if p % 4 == 1 else "Z/4"


def w_sym_component(p: int) -> str:
    if p == 2:
        return "Z/2"
    return "Z/2 ⊕ Z/2" if p % 4 == 1 else "Z/4"


@dataclass(frozen=True)
class TableEntry:
    degree: int
    group: str
    components: dict

    def __str__(self) -> str:
        if not self.components:
            return f"E_{self.degree} = {self.group}"
        parts = ", ".join(f"{k}: {v}" for k, v in self.components.items())
        return f"E_{self.degree} = {self.group} ({parts})"


def e_d_table(d: int) -> TableEntry:
    if d > 0 and d % 4 == 3:
        return TableEntry(d, "W^pt", {
            "p = 2": w_pt_component(2),
            "p ≡ 1 mod 4": w_pt_component(5),
            "p ≡ 3 mod 4": w_pt_component(3),
        })
    if d > 0 and d % 4 == 0:
        return TableEntry(d, "Z/2", {})
    return TableEntry(d, "0", {})


def l_group(n: int, kind: str) -> TableEntry:
    """
    L-groups: "q" quadratic of Z, "s" symmetric of Z, "Q" symmetric of Q.
    """
    if kind == "q":
        return TableEntry(n, ("Z", "0", "Z/2", "0")[n % 4], {})
    if kind == "s":
        if n >= 0:
            return TableEntry(n, ("Z", "Z/2", "0", "0")[n % 4], {})
        if n in (-1, -2):
            return TableEntry(n, "0", {})
        return l_group(n, "q")
    if kind == "Q":
        if n % 4:
            return TableEntry(n, "0", {})
        return TableEntry(n, "Z ⊕ W^sym", {
            "p = 2": w_sym_component(2),
            "p ≡ 1 mod 4": w_sym_component(5),
            "p ≡ 3 mod 4": w_sym_component(3),
        })
    raise ValueError(f"Unknown L-group kind {kind!r}; expected 'q', 's' or 'Q'")
