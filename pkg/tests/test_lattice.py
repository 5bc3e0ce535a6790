from math import prod

import numpy as np
import pytest
from sympy import Matrix

from levikit.utils.errors import InvalidInputError
from levikit.utils.lattice import (
    LatticeMap, cokernel, compose, identity, in_span, is_unimodular, matrix_rank, same_span, transpose,
    saturation, smith_normal_form, solve_integer, torsion_p_split, Lattice,
)

from oracles import (
    cokernel_order_by_det, invariant_order_counts, quotient_order_counts, random_unimodular,
    torsion_by_invariant_factors,
)


def _check_smith(rows):
    a = LatticeMap.from_rows(rows)
    U, D, V = smith_normal_form(a)
    assert is_unimodular(U) and is_unimodular(V)
    assert U * Matrix(rows) * V == D
    diagonal = [int(D[i, i]) for i in range(min(D.shape))]
    nonzero = [d for d in diagonal if d]
    assert all(d > 0 for d in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j:
                assert D[i, j] == 0
    return diagonal


@pytest.mark.parametrize("rows", [
    [[2]],
    [[2, 0], [0, 3]],
    [[4, 6], [6, 9]],
    [[1, 2, 3], [4, 5, 6], [7, 8, 10]],
    [[2, 4, 4], [-6, 6, 12], [10, -4, -16]],
    [[0, 0], [0, 0]],
    [[3, 1, 4], [1, 5, 9]],
])
def test_smith_normal_form_matches_invariant_factors(rows):
    diagonal = _check_smith(rows)
    assert sorted(d for d in diagonal if d > 1) == torsion_by_invariant_factors(rows)


def test_random_square_cokernels_have_det_order():
    rng = np.random.default_rng(2024)
    checked = 0
    while checked < 30:
        n = int(rng.integers(1, 4))
        rows = rng.integers(-6, 7, size=(n, n)).tolist()
        if Matrix(rows).det() == 0:
            continue
        _check_smith(rows)
        c = cokernel(LatticeMap.from_rows(rows))
        assert c.is_finite
        assert c.order() == cokernel_order_by_det(rows)
        checked += 1


def test_cokernel_free_part():
    c = cokernel(LatticeMap.from_rows([[2], [0]]))
    assert c.free_rank == 1
    assert c.torsion == (2,)
    assert not c.is_finite
    assert c.order() is None


def test_torsion_p_split():
    c = cokernel(LatticeMap.from_rows([[12, 0], [0, 2]]))
    p_part, p_prime = torsion_p_split(c, 2)
    assert sorted(p_part) == [2, 4]
    assert p_prime == [3]


def test_compose_and_identity():
    a = LatticeMap.from_rows([[1, 2], [0, 1]])
    b = LatticeMap.from_rows([[0, 1], [1, 0]])
    assert compose(a, identity(2)) == a
    assert compose(a, b).rows() == [[2, 1], [1, 0]]
    with pytest.raises(InvalidInputError):
        compose(a, LatticeMap.from_rows([[1, 2, 3]]))


def test_solve_integer_and_spans():
    a = LatticeMap.from_rows([[2, 0], [0, 3]])
    assert solve_integer(a, (4, 9)) == (2, 3)
    assert solve_integer(a, (1, 0)) is None
    assert in_span((2, 2), [(1, 1)], 2)
    assert not in_span((1, 0), [(2, 0)], 2)
    assert same_span([(1, 0), (0, 1)], [(1, 1), (0, 1)], 2)
    assert not same_span([(2, 0)], [(1, 0)], 2)


def test_saturation_recovers_primitive_vectors():
    basis = saturation([(2, 4)], Lattice(2))
    assert len(basis) == 1
    assert basis[0] in {(1, 2), (-1, -2)}


def test_matrix_rank_and_shape_errors():
    assert matrix_rank(LatticeMap.from_rows([[1, 2], [2, 4]])) == 1
    with pytest.raises(InvalidInputError):
        LatticeMap.from_rows([[1, 2]]).apply((1, 2, 3))


def _small_determinant_matrix(rng, n, bound=64):
    """U * diag(d) * V with prod(d) <= bound."""
    while True:
        d = [int(x) for x in rng.choice([1, 1, 1, 2, 2, 3, 4, 6], size=n)]
        if prod(d) <= bound:
            break
    M = random_unimodular(rng, n) * Matrix.diag(*d) * random_unimodular(rng, n)
    return M.tolist()


def test_smith_form_is_invariant_under_unimodular_scrambling():
    rng = np.random.default_rng(7)
    for _ in range(25):
        n, m = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        rows = rng.integers(-5, 6, size=(n, m)).tolist()
        scrambled = (random_unimodular(rng, n) * Matrix(rows) * random_unimodular(rng, m)).tolist()
        assert _check_smith(scrambled) == _check_smith(rows)


def test_transpose_has_the_same_torsion():
    rng = np.random.default_rng(31)
    for _ in range(25):
        n, m = int(rng.integers(1, 7)), int(rng.integers(1, 7))
        rows = rng.integers(-4, 5, size=(n, m)).tolist()
        a = LatticeMap.from_rows(rows)
        assert cokernel(transpose(a)).torsion == cokernel(a).torsion


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_cokernel_matches_the_brute_force_quotient(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(8):
        rows = _small_determinant_matrix(rng, n)
        a = LatticeMap.from_rows(rows)
        expected = quotient_order_counts(rows)
        assert invariant_order_counts(cokernel(a).torsion) == expected
        assert invariant_order_counts(cokernel(transpose(a)).torsion) == expected
        assert cokernel(a).order() == cokernel_order_by_det(rows)
