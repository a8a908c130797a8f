# stabcodes/services/weyl.py
"""
Twisted quasi-Pauli (Weyl) operators on a compactified carrier P_ℓ.

Symbolic layer: W(p)·W(q) = e^{πi β(p,q)} W(p+q), with β the upper
triangular lift of 2·tr λ̂ on the Smith generators of P_ℓ. β is a
bicharacter mod 2 whose antisymmetrization is 2·tr λ̂, so commutators are
e^{2πi tr λ̂} exactly.

Matrix layer: the representation induced from a lagrangian M on the
basis P/M. Elements of M act diagonally.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from django.conf import settings

from stabcodes.exceptions import (
    IllDefined,
    NonCommutingTerms,
    NotLagrangian,
    NumericalFailure,
    OwnerMismatch,
    ResourceLimitExceeded,
)
from stabcodes.services.finite_groups import Element, Subquotient
from stabcodes.services.formations import Formation
from stabcodes.services.linking_forms import CompactifiedForm, compactify_form

logger = logging.getLogger(__name__)

# Distinct joint eigenvalues of finite-order unitaries are far further apart.
SPECTRUM_RESOLUTION = 1e-6


@dataclass(frozen=True)
class WeylElement:
    """e^{πi·phase} W(p), phase in [0, 2)."""
    phase: Fraction
    p: Element

    def __post_init__(self):
        object.__setattr__(self, "phase", Fraction(self.phase) % 2)


class WeylAlgebra:
    def __init__(self, compact: CompactifiedForm):
        self.compact = compact
        self.group = compact.group
        k = self.group.rank
        for i in range(k):
            if compact.lift[i][i] % 1:
                raise IllDefined("The compactified pairing is not alternating")
            for j in range(i + 1, k):
                if (compact.lift[i][j] + compact.lift[j][i]) % 1:
                    raise IllDefined("The compactified pairing is not antisymmetric")
        self._upper = [[2 * (compact.lift[i][j] % 1) if i < j else Fraction(0) for j in range(k)]
                       for i in range(k)]

    def beta(self, p: Element, q: Element) -> Fraction:
        total = Fraction(0)
        for i, pi in enumerate(p):
            if pi:
                row = self._upper[i]
                for j in range(i + 1, len(q)):
                    if q[j]:
                        total += pi * q[j] * row[j]
        return total % 2

    def element(self, p: Sequence[int], phase=0) -> WeylElement:
        return WeylElement(Fraction(phase), self.group.normalize(p))

    def identity(self) -> WeylElement:
        return WeylElement(Fraction(0), self.group.zero())

    def mul(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return WeylElement(a.phase + b.phase + self.beta(a.p, b.p), self.group.add(a.p, b.p))

    def inverse(self, a: WeylElement) -> WeylElement:
        minus = self.group.negate(a.p)
        return WeylElement(-a.phase - self.beta(a.p, minus), minus)

    def power(self, a: WeylElement, k: int) -> WeylElement:
        out = self.identity()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def commutator_phase(self, p: Element, q: Element) -> Fraction:
        """W(p)W(q) = e^{2πi·value} W(q)W(p)."""
        return ((self.beta(p, q) - self.beta(q, p)) / 2) % 1


def weyl_mul(algebra: WeylAlgebra, a: WeylElement, b: WeylElement) -> WeylElement:
    """e^{πi(s+t+β(p,q))} W(p+q) for a = e^{πis}W(p), b = e^{πit}W(q)."""
    return algebra.mul(a, b)


def character_table(algebra: WeylAlgebra, generators: Sequence[Element]) -> Dict[Element, Fraction]:
    """
    ξ on an isotropic subgroup with e^{-πiξ(x)} W(x) a genuine representation.

    On independent generators h_k of order m_k, ξ(h_k) = c_k / m_k where
    W(h_k)^{m_k} = e^{πi c_k}; other values come from ordered products.
    """
    group = algebra.group
    structure = group.subgroup_structure(list(generators))
    z = []
    for h, m in structure:
        c = algebra.power(algebra.element(h), m).phase
        z.append(c / m)
    table = {group.zero(): Fraction(0)}
    frontier = [(algebra.identity(), Fraction(0))]
    for (h, m), zk in zip(structure, z):
        step = algebra.element(h)
        extended = []
        for product, weight in frontier:
            current, current_weight = product, weight
            for _ in range(m):
                extended.append((current, current_weight))
                table[current.p] = (current_weight - current.phase) % 2
                current = weyl_mul(algebra, current, step)
                current_weight += zk
        frontier = extended
    return table


# ============================================================
# SCHRÖDINGER REPRESENTATION
# ============================================================

Section = Union[str, Callable[[Element], Element]]


@dataclass
class SchrodingerRep:
    algebra: WeylAlgebra
    lagrangian: List[Element]
    quotient: Subquotient
    basis: List[Element]
    section: Dict[Element, Element]
    xi: Dict[Element, Fraction]
    _index: Dict[Element, int] = field(default_factory=dict)
    _cache: Dict[Element, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        self._index = {q: i for i, q in enumerate(self.basis)}

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def group(self):
        return self.algebra.group

    def action(self, p: Element) -> Tuple[List[int], List[Fraction]]:
        """W(p)|q> = e^{πi·phases[q]} |targets[q]>, exactly."""
        algebra = self.algebra
        group = self.group
        targets, phases = [], []
        for q in self.basis:
            s_q = self.section[q]
            t = group.add(p, s_q)
            q2 = self.quotient.to_quotient(t)
            s_q2 = self.section[q2]
            w = group.add(t, group.negate(s_q2))
            phase = algebra.beta(p, s_q) - algebra.beta(s_q2, w) + self.xi[w]
            targets.append(self._index[q2])
            phases.append(phase % 2)
        return targets, phases

    def matrix(self, element: Union[WeylElement, Element]) -> np.ndarray:
        if isinstance(element, WeylElement):
            base = self.matrix(element.p)
            return np.exp(1j * np.pi * float(element.phase)) * base
        p = self.group.normalize(element)
        if p not in self._cache:
            targets, phases = self.action(p)
            out = np.zeros((self.dimension, self.dimension), dtype=complex)
            for source, (target, phase) in enumerate(zip(targets, phases)):
                out[target, source] = np.exp(1j * np.pi * float(phase))
            self._cache[p] = out
        return self._cache[p]


def _auto_section(sub: Subquotient) -> Callable[[Element], Element]:
    return sub.from_quotient


def _minimal_section(sub: Subquotient, lagrangian_elements) -> Callable[[Element], Element]:
    group = sub.ambient

    def section(q: Element) -> Element:
        base = sub.from_quotient(q)
        return min(group.add(base, m) for m in lagrangian_elements)

    return section


def build_rep(compact: CompactifiedForm, lagrangian: Sequence[Element], section: Section = "auto",
              cap: Optional[int] = None) -> SchrodingerRep:
    """Representation of the Weyl operators of P_ℓ induced from the lagrangian."""
    cap = cap or settings.STABCODES_MAX_HILBERT_DIM
    group = compact.group
    lagrangian = list(lagrangian)
    perp = compact.annihilator(lagrangian)
    if not group.same_subgroup(perp, lagrangian):
        raise NotLagrangian("M is not a lagrangian of the compactified carrier")
    dimension = group.order // group.subgroup_order(lagrangian)
    if dimension > cap:
        logger.warning("Hilbert space of dimension %s exceeds cap %s", dimension, cap)
        raise ResourceLimitExceeded("Hilbert space", dimension, cap)

    algebra = WeylAlgebra(compact)
    sub = group.subquotient(group.basis(), lagrangian)
    basis = list(sub.quotient.elements())
    xi = character_table(algebra, lagrangian)
    if section == "auto":
        chooser = _auto_section(sub)
    elif section == "minimal":
        chooser = _minimal_section(sub, list(xi))
    elif callable(section):
        chooser = section
    else:
        raise ValueError(f"Unknown section {section!r}; expected 'auto', 'minimal' or a callable")
    lifts = {}
    for q in basis:
        s_q = group.normalize(chooser(q))
        if sub.to_quotient(s_q) != q:
            raise ValueError(f"Section value {s_q} does not project to {q}")
        lifts[q] = s_q
    logger.info("Built representation of dimension %s at ℓ=%s", dimension, compact.ell)
    return SchrodingerRep(algebra=algebra, lagrangian=lagrangian, quotient=sub, basis=basis,
                          section=lifts, xi=xi)


def section_change_phases(rep: SchrodingerRep, other: SchrodingerRep) -> List[Fraction]:
    """
    T_q with |q>_other = e^{πi T_q} |q>_rep, so that
    other.matrix(p) = D⁻¹ · rep.matrix(p) · D for D = diag(e^{πi T_q}).
    """
    if rep.basis != other.basis or rep.group != other.group:
        raise OwnerMismatch("Representations are built on different carriers")
    algebra = rep.algebra
    group = rep.group
    out = []
    for q in rep.basis:
        s_q = rep.section[q]
        v = group.add(other.section[q], group.negate(s_q))
        out.append((-algebra.beta(s_q, v) + rep.xi[v]) % 2)
    return out


# ============================================================
# LOCALLY FLIPPABLE SEPARATORS
# ============================================================

@dataclass
class SeparatorReport:
    separators: List[Element]
    flippers: List[Element]
    commuting: bool
    joint_spectrum_distinct: bool
    flip_relations_ok: bool
    unitary_ok: bool
    details: List[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "separators": [list(s) for s in self.separators],
            "flippers": [list(f) for f in self.flippers],
            "commuting": self.commuting,
            "joint_spectrum_distinct": self.joint_spectrum_distinct,
            "flip_relations_ok": self.flip_relations_ok,
            "unitary_ok": self.unitary_ok,
            "details": self.details,
        }


def clock_generators(rep: SchrodingerRep) -> Tuple[List[Element], List[Element]]:
    """
    Independent generators h_i of M with partners g_i, where g_i pairs
    nontrivially with h_i and trivially with every other h_k.
    """
    compact = rep.algebra.compact
    separators = [h for h, _ in rep.group.subgroup_structure(rep.lagrangian)]
    flippers = []
    for i, h in enumerate(separators):
        others = separators[:i] + separators[i + 1:]
        candidates = compact.annihilator(others) if others else rep.group.basis()
        partner = next((g for g in candidates if compact.pairing(h, g)), None)
        if partner is None:
            raise NotLagrangian(f"No element of P pairs nontrivially with {h}")
        flippers.append(partner)
    return separators, flippers


def _is_scalar(matrix: np.ndarray, tol: float) -> Optional[complex]:
    value = matrix[0, 0]
    if np.allclose(matrix, value * np.eye(matrix.shape[0]), atol=tol):
        return complex(value)
    return None


def verify_lfs(rep: SchrodingerRep, separator_gens: Sequence[Element], flipper_gens: Sequence[Element],
               tol: Optional[float] = None, seed: int = 0) -> SeparatorReport:
    tol = tol or settings.STABCODES_EIGEN_TOL
    separators = [rep.group.normalize(s) for s in separator_gens]
    flippers = [rep.group.normalize(f) for f in flipper_gens]
    s_mats = [rep.matrix(s) for s in separators]
    f_mats = [rep.matrix(f) for f in flippers]
    details = []
    dim = rep.dimension
    identity = np.eye(dim)

    unitary_ok = all(np.allclose(u @ u.conj().T, identity, atol=settings.STABCODES_UNITARY_TOL)
                     for u in s_mats + f_mats)

    commuting = True
    for i, a in enumerate(s_mats):
        for j in range(i + 1, len(s_mats)):
            if not np.allclose(a @ s_mats[j], s_mats[j] @ a, atol=tol):
                commuting = False
                details.append(f"separators {i} and {j} do not commute")

    distinct = False
    if commuting:
        rng = np.random.default_rng(seed)
        mixed = np.zeros((dim, dim), dtype=complex)
        for a in s_mats:
            x, y = rng.normal(size=2)
            mixed += x * (a + a.conj().T) + 1j * y * (a - a.conj().T)
        _, vectors = np.linalg.eigh(mixed)
        tuples = []
        for k in range(dim):
            v = vectors[:, k]
            values = tuple(complex(v.conj() @ a @ v) for a in s_mats)
            tuples.append(values)
        distinct = True
        for i in range(dim):
            for j in range(i + 1, dim):
                if all(abs(a - b) < SPECTRUM_RESOLUTION for a, b in zip(tuples[i], tuples[j])):
                    distinct = False
        if not distinct:
            details.append("joint spectrum is degenerate")

    flips_ok = len(separators) == len(flippers)
    if not flips_ok:
        details.append("separator and flipper counts differ")
    for i, a in enumerate(s_mats):
        for j, b in enumerate(f_mats):
            group_commutator = a @ b @ a.conj().T @ b.conj().T
            scalar = _is_scalar(group_commutator, tol)
            if scalar is None:
                flips_ok = False
                details.append(f"separator {i} and flipper {j} have a non-scalar commutator")
            elif (i == j) == (abs(scalar - 1) < tol):
                flips_ok = False
                details.append(f"separator {i} and flipper {j}: commutator {scalar:.6f}")

    return SeparatorReport(separators, flippers, commuting, distinct, flips_ok, unitary_ok, details)


# ============================================================
# STABILIZER HAMILTONIANS
# ============================================================

@dataclass
class Hamiltonian:
    matrix: np.ndarray
    terms: List[Element]
    decorations: List[Fraction]
    rep: SchrodingerRep

    @property
    def energy_floor(self) -> float:
        return -2.0 * len(self.terms)


@dataclass
class GroundSpace:
    dimension: int
    energy: float
    vectors: np.ndarray


def build_hamiltonian(fm: Formation, ell: int, section: Section = "auto", cap: Optional[int] = None,
                      group_cap: Optional[int] = None) -> Hamiltonian:
    """H = -Σ_f (V(f) + V(f)*), V(f) = e^{-πiξ_F(f)} W(f) over all translates f of F's generators."""
    compact = compactify_form(fm.form, ell, group_cap)
    lagrangian = compact.submodule_generators(fm.m.columns())
    terms = compact.submodule_generators(fm.f.columns())
    for i, f in enumerate(terms):
        for g in terms[i + 1:]:
            phase = compact.pairing(f, g)
            if phase:
                raise NonCommutingTerms(f, g, phase)
    rep = build_rep(compact, lagrangian, section, cap)
    xi_f = character_table(rep.algebra, terms)
    dim = rep.dimension
    matrix = np.zeros((dim, dim), dtype=complex)
    decorations = []
    for f in terms:
        decoration = xi_f[f]
        decorations.append(decoration)
        unitary = rep.matrix(WeylElement(-decoration, f))
        matrix -= unitary + unitary.conj().T
    logger.info("Assembled Hamiltonian with %s terms on dimension %s", len(terms), dim)
    return Hamiltonian(matrix=matrix, terms=terms, decorations=decorations, rep=rep)


def ground_space(h: Hamiltonian, tol: Optional[float] = None) -> GroundSpace:
    tol = tol or settings.STABCODES_EIGEN_TOL
    values, vectors = np.linalg.eigh(h.matrix)
    lowest = values[0]
    count = int(np.sum(values <= lowest + tol * max(1.0, abs(lowest))))
    return GroundSpace(dimension=count, energy=float(lowest), vectors=vectors[:, :count])


def ground_space_dim(h: Hamiltonian, tol: Optional[float] = None) -> int:
    return ground_space(h, tol).dimension


def projector_rank(h: Hamiltonian) -> int:
    """
    Rank of the product of the +1 eigenprojectors of the terms.

    Each term V generates a cyclic group of order k, so its projector is
    (I + V + ... + V^(k-1)) / k.
    """
    dim = h.rep.dimension
    group = h.rep.group
    product = np.eye(dim, dtype=complex)
    for f, decoration in zip(h.terms, h.decorations):
        unitary = h.rep.matrix(WeylElement(-decoration, f))
        order = group.element_order(f)
        projector = np.zeros((dim, dim), dtype=complex)
        power = np.eye(dim, dtype=complex)
        for _ in range(order):
            projector += power
            power = unitary @ power
        product = product @ (projector / order)
    return int(round(np.trace(product).real))


def dump_spectrum(h: Hamiltonian) -> str:
    """Eigenvalue multiplicity table, one 'value multiplicity' line per cluster."""
    values = np.linalg.eigvalsh(h.matrix)
    lines = []
    current, count = None, 0
    for v in values:
        if current is not None and abs(v - current) < SPECTRUM_RESOLUTION:
            count += 1
            continue
        if current is not None:
            lines.append(f"{current:.10f} {count}")
        current, count = v, 1
    if current is not None:
        lines.append(f"{current:.10f} {count}")
    return "\n".join(lines) + "\n"


def checked_ground_dim(h: Hamiltonian, tol: Optional[float] = None) -> int:
    """Ground-space dimension, with diagonalization and projector rank required to agree."""
    tol = tol or settings.STABCODES_EIGEN_TOL
    space = ground_space(h, tol)
    rank = projector_rank(h)
    if space.dimension != rank:
        raise NumericalFailure(f"Diagonalization gives {space.dimension}, projectors give {rank}")
    if rank and abs(space.energy - h.energy_floor) > tol * max(1.0, abs(h.energy_floor)):
        raise NumericalFailure(f"Ground energy {space.energy} is not the frustration-free {h.energy_floor}")
    return rank
