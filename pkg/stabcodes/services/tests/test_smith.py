import random
from fractions import Fraction

import numpy as np

from utils.smith import (
    bareiss_determinant,
    cokernel_order,
    identity,
    integer_kernel,
    integer_matrix,
    invariant_factors,
    lattice_basis,
    rational_inverse,
    smith_decomposition,
    solve_integral,
)


def _random_matrix(rng, rows, cols, bound=6):
    return integer_matrix([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)])


def test_invariant_factors_of_small_matrix():
    assert invariant_factors(integer_matrix([[2, 4], [6, 8]])) == (2, 4)
    assert invariant_factors(integer_matrix([[2, 0], [0, 3]])) == (1, 6)


def test_decomposition_diagonalizes_random_matrices():
    rng = random.Random(7)
    for _ in range(20):
        m = _random_matrix(rng, 3, 4)
        dec = smith_decomposition(m)
        diag = dec.left @ m @ dec.right
        for i in range(diag.shape[0]):
            for j in range(diag.shape[1]):
                expected = dec.diagonal[i] if i == j and i < len(dec.diagonal) else 0
                assert diag[i, j] == expected
        assert np.array_equal(dec.left @ dec.left_inverse, identity(3))
        nonzero = [d for d in dec.diagonal if d]
        for a, b in zip(nonzero, nonzero[1:]):
            assert b % a == 0


def test_cokernel_order():
    assert cokernel_order(integer_matrix([[2, 0], [0, 3]])) == 6
    assert cokernel_order(integer_matrix([[2, 4], [1, 2]])) == 0


def test_integer_kernel_spans_solutions():
    m = integer_matrix([[1, 2, 3]])
    kernel = integer_kernel(m)
    assert kernel.shape == (3, 2)
    assert not (m @ kernel).any()


def test_lattice_basis_has_right_index():
    basis = lattice_basis(integer_matrix([[2, 0, 1], [0, 2, 1]]))
    assert basis.shape[1] == 2
    assert abs(bareiss_determinant(basis.tolist())) == 2


def test_bareiss_matches_known_values():
    assert bareiss_determinant([[1, 2], [3, 4]]) == -2
    assert bareiss_determinant([[0, 1], [1, 0]]) == -1
    assert bareiss_determinant([[Fraction(1, 2), 1], [1, 4]]) == 1
    assert bareiss_determinant([[1, 2], [2, 4]]) == 0


def test_rational_inverse_and_integral_solve():
    inverse = rational_inverse([[2, 0], [0, 1]])
    assert inverse == [[Fraction(1, 2), 0], [0, 1]]
    assert solve_integral(inverse, [4, 3]) == [2, 3]
    assert solve_integral(inverse, [1, 3]) is None


def test_rational_inverse_rejects_singular():
    try:
        rational_inverse([[1, 2], [2, 4]])
    except ValueError:
        pass
    else:
        raise AssertionError("singular matrix was inverted")
