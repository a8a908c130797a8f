# stabcodes/services/finite_groups.py
"""
Finite abelian groups in Smith coordinates.

Elements are tuples of residues modulo the invariant factors. Subgroups
are handled as lattices between d·Z^k and Z^k, so their orders,
structure, intersections and annihilators come from integer linear
algebra instead of enumeration.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from stabcodes.exceptions import DimensionMismatch, ResourceLimitExceeded
from utils.smith import (
    columns_matrix,
    cokernel_order,
    integer_kernel,
    lattice_basis,
    rational_inverse,
    smith_decomposition,
    solve_integral,
)

logger = logging.getLogger(__name__)

Element = Tuple[int, ...]


class AbelianGroup:
    """Z/d_1 ⊕ ... ⊕ Z/d_k with d_i >= 1."""

    def __init__(self, invariants: Sequence[int]):
        invariants = tuple(int(d) for d in invariants)
        if any(d < 1 for d in invariants):
            raise ValueError(f"Invariant factors must be positive: {invariants}")
        self.invariants = invariants

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def order(self) -> int:
        return prod(self.invariants)

    @property
    def exponent(self) -> int:
        return lcm(*self.invariants) if self.invariants else 1

    # ── elements ─────────────────────────────────────────────────────────────

    def normalize(self, vector: Sequence) -> Element:
        if len(vector) != self.rank:
            raise DimensionMismatch(f"Expected {self.rank} coordinates, got {len(vector)}")
        return tuple(int(v) % d for v, d in zip(vector, self.invariants))

    def zero(self) -> Element:
        return (0,) * self.rank

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariants))

    def negate(self, a: Element) -> Element:
        return tuple((-x) % d for x, d in zip(a, self.invariants))

    def scale(self, a: Element, k: int) -> Element:
        return tuple((x * k) % d for x, d in zip(a, self.invariants))

    def element_order(self, a: Element) -> int:
        return lcm(*(d // gcd(x, d) for x, d in zip(a, self.invariants))) if a else 1

    def basis(self) -> List[Element]:
        out = []
        for i in range(self.rank):
            e = [0] * self.rank
            e[i] = 1
            out.append(self.normalize(e))
        return out

    def elements(self, cap: Optional[int] = None) -> Iterator[Element]:
        if cap is not None and self.order > cap:
            logger.warning("Refusing to enumerate a group of order %s (cap %s)", self.order, cap)
            raise ResourceLimitExceeded("finite group enumeration", self.order, cap)
        return itertools.product(*(range(d) for d in self.invariants))

    def index(self, a: Element) -> int:
        out = 0
        for x, d in zip(a, self.invariants):
            out = out * d + x
        return out

    def span(self, generators: Sequence[Element]) -> frozenset:
        """All elements of the subgroup; only for small subgroups."""
        closure = {self.zero()}
        for g in generators:
            closure = _extend_closure(self, closure, g)
        return frozenset(closure)

    # ── lattices ─────────────────────────────────────────────────────────────

    def _relations(self) -> np.ndarray:
        return columns_matrix([[d if i == j else 0 for i in range(self.rank)]
                               for j, d in enumerate(self.invariants)], self.rank)

    def _lattice(self, generators: Sequence[Element]) -> np.ndarray:
        """Basis (columns, k x k) of the preimage of <generators> in Z^k."""
        gens = columns_matrix(list(generators), self.rank)
        return lattice_basis(np.hstack([gens, self._relations()]))

    def subgroup_order(self, generators: Sequence[Element]) -> int:
        if self.rank == 0:
            return 1
        gens = columns_matrix(list(generators), self.rank)
        index = cokernel_order(np.hstack([gens, self._relations()]))
        return self.order // index

    def subgroup_structure(self, generators: Sequence[Element]) -> List[Tuple[Element, int]]:
        """Independent generators (h_i, m_i) with <generators> = ⊕ <h_i>, ord(h_i) = m_i > 1."""
        if self.rank == 0:
            return []
        basis = self._lattice(generators)
        inverse = rational_inverse(basis.tolist())
        relation_columns = []
        for column in self._relations().T:
            coordinates = solve_integral(inverse, column)
            if coordinates is None:
                raise ArithmeticError("Relation lattice is not contained in the subgroup lattice")
            relation_columns.append(coordinates)
        decomposition = smith_decomposition(columns_matrix(relation_columns, self.rank))
        out = []
        for k, m in enumerate(decomposition.diagonal):
            if m > 1:
                h = basis @ decomposition.left_inverse[:, k]
                out.append((self.normalize(h), int(m)))
        return out

    def contains(self, generators: Sequence[Element], element: Sequence[int]) -> bool:
        if self.rank == 0:
            return True
        basis = self._lattice(generators)
        return solve_integral(rational_inverse(basis.tolist()), element) is not None

    def is_subgroup_of(self, small: Sequence[Element], big: Sequence[Element]) -> bool:
        return all(self.contains(big, g) for g in small)

    def same_subgroup(self, a: Sequence[Element], b: Sequence[Element]) -> bool:
        return self.is_subgroup_of(a, b) and self.is_subgroup_of(b, a)

    def intersection(self, a: Sequence[Element], b: Sequence[Element]) -> List[Element]:
        if self.rank == 0:
            return []
        la = self._lattice(a)
        lb = self._lattice(b)
        kernel = integer_kernel(np.hstack([la, -lb]))
        out = []
        for column in kernel.T:
            x = self.normalize(la @ column[: self.rank])
            if any(x):
                out.append(x)
        return out

    def annihilator(self, generators: Sequence[Element], pairing: Sequence[Sequence[Fraction]]) -> List[Element]:
        """
        {x : x^T B h ∈ Z for every generator h}, for a rational lift B of the pairing.

        B must descend to the group (d_i B_ij ∈ Z), which makes d·Z^k part of the answer.
        """
        if self.rank == 0:
            return []
        columns = []
        for h in generators:
            columns.append([sum((Fraction(pairing[i][j]) * h[j] for j in range(self.rank)), Fraction(0))
                            for i in range(self.rank)])
        columns = [c for c in columns if any(v.denominator != 1 for v in c)]
        if not columns:
            return self.basis()
        scale = lcm(*(v.denominator for c in columns for v in c))
        scaled = [[int(v * scale) for v in c] for c in columns]
        # A^T x ≡ 0 mod scale  <=>  [A^T | scale·I] (x, u) = 0
        m = len(scaled)
        a_t = np.array([[c[i] for i in range(self.rank)] for c in scaled], dtype=object).reshape(m, self.rank)
        stacked = np.hstack([a_t, columns_matrix([[scale if i == j else 0 for i in range(m)]
                                                   for j in range(m)], m)])
        kernel = integer_kernel(stacked)
        out = [self.normalize(column[: self.rank]) for column in kernel.T]
        return [x for x in out if any(x)]

    def subquotient(self, numerator: Sequence[Element], denominator: Sequence[Element]) -> "Subquotient":
        """N/K for subgroups K ⊆ N, with explicit maps in both directions."""
        ln = self._lattice(numerator)
        lk = self._lattice(denominator)
        inverse = rational_inverse(ln.tolist()) if self.rank else []
        relation_columns = []
        for column in lk.T:
            coordinates = solve_integral(inverse, column)
            if coordinates is None:
                raise ValueError("Denominator subgroup is not contained in the numerator")
            relation_columns.append(coordinates)
        quotient = FiniteGroupPresentation(columns_matrix(relation_columns, self.rank))
        return Subquotient(ambient=self, basis=ln, basis_inverse=inverse, quotient=quotient)

    def __eq__(self, other) -> bool:
        return isinstance(other, AbelianGroup) and self.invariants == other.invariants

    def __hash__(self):
        return hash(self.invariants)

    def __repr__(self) -> str:
        return f"{type(self).__name__}{self.invariants}"


def _extend_closure(group: AbelianGroup, closure, generator: Element) -> set:
    if generator in closure:
        return set(closure)
    out = set()
    multiple = group.zero()
    while True:
        for c in closure:
            out.add(group.add(c, multiple))
        multiple = group.add(multiple, generator)
        if multiple in closure:
            break
    return out


# ============================================================
# PRESENTED GROUPS
# ============================================================

class FiniteGroupPresentation(AbelianGroup):
    """
    Z^m / im(relations) in Smith coordinates.

    `coordinates` maps raw vectors of Z^m to group elements and `lift`
    maps group elements back to raw representatives.
    """

    def __init__(self, relations: np.ndarray):
        relations = np.asarray(relations, dtype=object)
        if relations.ndim != 2:
            raise ValueError("Relations must be a matrix")
        self.relations = relations
        m = relations.shape[0]
        decomposition = smith_decomposition(relations) if m else None
        if decomposition is not None and decomposition.rank < m:
            raise ValueError("Relations present an infinite group")
        factors = [] if decomposition is None else [
            (k, d) for k, d in enumerate(decomposition.diagonal) if d > 1
        ]
        self._kept = [k for k, _ in factors]
        self._to_coords = decomposition.left[self._kept, :] if decomposition is not None \
            else np.zeros((0, 0), dtype=object)
        self._from_coords = decomposition.left_inverse[:, self._kept] if decomposition is not None \
            else np.zeros((0, 0), dtype=object)
        self.raw_rank = m
        super().__init__([d for _, d in factors])

    @property
    def snf(self) -> tuple:
        return self.invariants

    def coordinates(self, raw: Sequence[int]) -> Element:
        if len(raw) != self.raw_rank:
            raise DimensionMismatch(f"Expected a vector of length {self.raw_rank}")
        if not self.rank:
            return ()
        vector = np.array([int(v) for v in raw], dtype=object)
        return self.normalize(self._to_coords @ vector)

    def lift(self, element: Sequence[int]) -> List[int]:
        if not self.rank:
            return [0] * self.raw_rank
        return [int(v) for v in self._from_coords @ np.array([int(v) for v in element], dtype=object)]

    def lift_matrix(self) -> np.ndarray:
        """Columns are the raw lifts of the Smith generators."""
        return self._from_coords


@dataclass
class Subquotient:
    ambient: AbelianGroup
    basis: np.ndarray
    basis_inverse: list
    quotient: FiniteGroupPresentation

    def to_quotient(self, element: Sequence[int]) -> Element:
        coordinates = solve_integral(self.basis_inverse, element) if self.ambient.rank else []
        if coordinates is None:
            raise ValueError(f"{tuple(element)} is not in the numerator subgroup")
        return self.quotient.coordinates(coordinates)

    def from_quotient(self, element: Sequence[int]) -> Element:
        if not self.ambient.rank:
            return ()
        raw = np.array(self.quotient.lift(element), dtype=object)
        return self.ambient.normalize(self.basis @ raw)


# ============================================================
# ISOTROPIC SUBGROUP SEARCH
# ============================================================

def search_subgroup(
    group: AbelianGroup,
    target_order: int,
    element_ok: Callable[[Element], bool],
    pair_ok: Callable[[Element, Element], bool],
    cap: Optional[int] = None,
    closure_ok: Optional[Callable[[frozenset], bool]] = None,
) -> Optional[List[Element]]:
    """
    Depth-first search for a subgroup of the given order whose generators
    each pass `element_ok` and pairwise pass `pair_ok`.

    A subgroup reached again from a later start index is never revisited;
    the earlier visit explored a superset of its extensions.
    """
    if target_order == 1:
        return []
    if group.order % target_order:
        return None
    candidates = [e for e in group.elements(cap) if any(e) and element_ok(e)]
    logger.debug("Subgroup search over %s candidates for order %s", len(candidates), target_order)
    seen = {}

    def explore(start: int, generators: List[Element], closure: frozenset):
        if len(closure) == target_order:
            return list(generators)
        for i in range(start, len(candidates)):
            e = candidates[i]
            if e in closure or not all(pair_ok(e, g) for g in generators):
                continue
            extended = frozenset(_extend_closure(group, closure, e))
            if target_order % len(extended):
                continue
            if closure_ok is not None and not closure_ok(extended):
                continue
            if seen.get(extended, len(candidates)) <= i:
                continue
            seen[extended] = i
            found = explore(i + 1, generators + [e], extended)
            if found is not None:
                return found
        return None

    return explore(0, [], frozenset([group.zero()]))
