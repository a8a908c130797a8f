"""
Exact integer linear algebra on numpy object arrays.

Smith normal form with both unimodular transforms, integer kernels,
lattice bases and a fraction-free determinant. Entries are Python ints
(dtype=object) so nothing ever overflows or rounds.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable, Optional, Sequence

import numpy as np

logger = logging.getLogger(__name__)


def integer_matrix(rows: Iterable[Iterable[int]], n_cols: Optional[int] = None) -> np.ndarray:
    """
    Build an object-dtype integer matrix.

    `n_cols` is only needed when `rows` is empty.
    """
    rows = [list(r) for r in rows]
    width = len(rows[0]) if rows else (n_cols or 0)
    out = np.zeros((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ValueError("Ragged integer matrix")
        for j, value in enumerate(row):
            out[i, j] = int(value)
    return out


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def columns_matrix(columns: Sequence[Sequence[int]], n_rows: int) -> np.ndarray:
    """Stack integer vectors as the columns of an n_rows x len(columns) matrix."""
    out = np.zeros((n_rows, len(columns)), dtype=object)
    for j, column in enumerate(columns):
        for i, value in enumerate(column):
            out[i, j] = int(value)
    return out


# ============================================================
# SMITH NORMAL FORM
# ============================================================

@dataclass(frozen=True)
class SmithDecomposition:
    """
    left @ matrix @ right == diag, with left/right unimodular.

    left_inverse is kept because it gives the lifts of the cokernel
    generators: coker(matrix) = Z^m / im(matrix) has generators
    left_inverse[:, k] of order diagonal[k].
    """
    left: np.ndarray
    left_inverse: np.ndarray
    right: np.ndarray
    diagonal: tuple
    rank: int


class _Reducer:
    """Row/column operations that keep track of the transforms."""

    def __init__(self, matrix: np.ndarray):
        self.a = matrix.copy().astype(object)
        m, n = self.a.shape
        self.u = identity(m)
        self.u_inv = identity(m)
        self.v = identity(n)

    def add_row(self, target: int, source: int, factor: int):
        if factor == 0:
            return
        self.a[target] += factor * self.a[source]
        self.u[target] += factor * self.u[source]
        self.u_inv[:, source] -= factor * self.u_inv[:, target]

    def swap_rows(self, i: int, j: int):
        if i == j:
            return
        self.a[[i, j]] = self.a[[j, i]]
        self.u[[i, j]] = self.u[[j, i]]
        self.u_inv[:, [i, j]] = self.u_inv[:, [j, i]]

    def negate_row(self, i: int):
        self.a[i] *= -1
        self.u[i] *= -1
        self.u_inv[:, i] *= -1

    def add_col(self, target: int, source: int, factor: int):
        if factor == 0:
            return
        self.a[:, target] += factor * self.a[:, source]
        self.v[:, target] += factor * self.v[:, source]

    def swap_cols(self, i: int, j: int):
        if i == j:
            return
        self.a[:, [i, j]] = self.a[:, [j, i]]
        self.v[:, [i, j]] = self.v[:, [j, i]]


def _smallest_nonzero(a: np.ndarray, t: int):
    best = None
    m, n = a.shape
    for i in range(t, m):
        for j in range(t, n):
            value = a[i, j]
            if value != 0 and (best is None or abs(value) < best[0]):
                best = (abs(value), i, j)
                if best[0] == 1:
                    return best[1], best[2]
    return None if best is None else (best[1], best[2])


def smith_decomposition(matrix: np.ndarray) -> SmithDecomposition:
    """
    Smith normal form with divisibility chain d_1 | d_2 | ... .

    Works for any rectangular integer matrix, including empty ones.
    """
    red = _Reducer(matrix)
    a = red.a
    m, n = a.shape
    t = 0
    while t < min(m, n):
        pivot = _smallest_nonzero(a, t)
        if pivot is None:
            break
        red.swap_rows(t, pivot[0])
        red.swap_cols(t, pivot[1])

        while True:
            clean = True
            for i in range(t + 1, m):
                if a[i, t] != 0:
                    red.add_row(i, t, -(a[i, t] // a[t, t]))
                    if a[i, t] != 0:
                        clean = False
            for j in range(t + 1, n):
                if a[t, j] != 0:
                    red.add_col(j, t, -(a[t, j] // a[t, t]))
                    if a[t, j] != 0:
                        clean = False

            if not clean:
                # a remainder is now smaller than the pivot
                best = (abs(a[t, t]), t, t)
                for i in range(t + 1, m):
                    if a[i, t] != 0 and abs(a[i, t]) < best[0]:
                        best = (abs(a[i, t]), i, t)
                for j in range(t + 1, n):
                    if a[t, j] != 0 and abs(a[t, j]) < best[0]:
                        best = (abs(a[t, j]), t, j)
                red.swap_rows(t, best[1])
                red.swap_cols(t, best[2])
                continue

            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i, j] % a[t, t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            red.add_row(t, offender, 1)

        if a[t, t] < 0:
            red.negate_row(t)
        t += 1

    diagonal = tuple(int(a[k, k]) for k in range(min(m, n)))
    rank = sum(1 for value in diagonal if value != 0)
    return SmithDecomposition(
        left=red.u,
        left_inverse=red.u_inv,
        right=red.v,
        diagonal=diagonal,
        rank=rank,
    )


def invariant_factors(matrix: np.ndarray) -> tuple:
    """Nonzero Smith diagonal entries, ones included."""
    return tuple(d for d in smith_decomposition(matrix).diagonal if d != 0)


def cokernel_order(matrix: np.ndarray) -> int:
    """|Z^m / im(matrix)|, or 0 when the cokernel is infinite."""
    decomposition = smith_decomposition(matrix)
    if decomposition.rank < matrix.shape[0]:
        return 0
    return prod(decomposition.diagonal[: decomposition.rank])


def integer_kernel(matrix: np.ndarray) -> np.ndarray:
    """Columns spanning {x in Z^n : matrix @ x = 0}."""
    decomposition = smith_decomposition(matrix)
    return decomposition.right[:, decomposition.rank:]


def lattice_basis(generators: np.ndarray) -> np.ndarray:
    """A basis (as columns) of the lattice spanned by the columns of `generators`."""
    decomposition = smith_decomposition(generators)
    rank = decomposition.rank
    basis = decomposition.left_inverse[:, :rank].copy()
    for k in range(rank):
        basis[:, k] *= decomposition.diagonal[k]
    return basis


# ============================================================
# DETERMINANTS AND RATIONAL SOLVES
# ============================================================

def bareiss_determinant(matrix) -> Fraction:
    """
    Fraction-free Bareiss elimination.

    Accepts ints or Fractions; every division is exact in the ring the
    entries generate.
    """
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    if n == 0:
        return Fraction(1)
    sign = 1
    previous = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / previous
        previous = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_inverse(matrix) -> list:
    """Gauss-Jordan inverse over Q. Raises ValueError when singular."""
    n = len(matrix)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("Matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def solve_integral(inverse: list, vector: Sequence[int]) -> Optional[list]:
    """inverse @ vector when integral, else None."""
    out = []
    for row in inverse:
        value = sum((c * int(v) for c, v in zip(row, vector)), Fraction(0))
        if value.denominator != 1:
            return None
        out.append(int(value))
    return out
