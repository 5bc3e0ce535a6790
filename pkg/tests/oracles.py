"""
Independent brute-force oracles used to cross-check the library.
"""

from collections import Counter
from fractions import Fraction
from itertools import product
from math import gcd, lcm, prod

import numpy as np
from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.domains import ZZ

from levikit.components.characters import ClassMatrices

DEGREES = {
    "A": lambda n: list(range(2, n + 2)),
    "B": lambda n: [2 * k for k in range(1, n + 1)],
    "C": lambda n: [2 * k for k in range(1, n + 1)],
    "D": lambda n: [2 * k for k in range(1, n)] + [n],
    "E": lambda n: {6: [2, 5, 6, 8, 9, 12], 7: [2, 6, 8, 10, 12, 14, 18],
                    8: [2, 8, 12, 14, 18, 20, 24, 30]}[n],
    "F": lambda n: [2, 6, 8, 12],
    "G": lambda n: [2, 6],
}


def weyl_order(family: str, rank: int) -> int:
    """|W| as the product of the fundamental degrees."""
    return prod(DEGREES[family](rank))


def torsion_by_invariant_factors(rows):
    factors = invariant_factors(Matrix(rows), domain=ZZ)
    return sorted(abs(int(d)) for d in factors if abs(int(d)) > 1)


def cokernel_order_by_det(rows) -> int:
    """|Z^n / A Z^n| for a square nonsingular A."""
    return abs(int(Matrix(rows).det()))


def in_box_span(vector, basis, box: int = 3) -> bool:
    """Is vector an integer combination of basis with coefficients in [-box, box]?"""
    if not basis:
        return not any(vector)
    for coeffs in product(range(-box, box + 1), repeat=len(basis)):
        if all(sum(c * b[i] for c, b in zip(coeffs, basis)) == vector[i] for i in range(len(vector))):
            return True
    return False


def _separating_eigenvectors(matrices, n: int, seed: int, attempts: int = 50, gap: float = 1e-6):
    """Eigenvectors of a random combination of the class matrices whose eigenvalues are pairwise distinct."""
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        combined = sum(rng.integers(1, 1000) * np.array(matrices[r], dtype=float) for r in range(n))
        values, vectors = np.linalg.eig(combined.T)
        spread = np.abs(values[:, None] - values[None, :]) + np.eye(n) * (gap + 1)
        if spread.min() > gap:
            return vectors
    raise ArithmeticError("no random combination of the class matrices separates the characters")


def burnside_table(G, seed: int = 7):
    """
    Character table from the common eigenvectors of the class matrices, in
    floating point. A combination with distinct eigenvalues has the class
    algebra's common eigenvectors as its eigenvectors. Rows are complex numpy arrays.
    """
    matrices = ClassMatrices(G)
    n = len(matrices)
    vectors = _separating_eigenvectors(matrices, n, seed)
    sizes = np.array(G.class_sizes, dtype=float)
    rows = []
    for k in range(n):
        v = vectors[:, k] / vectors[0, k]
        degree = np.sqrt(G.order / np.sum(sizes * np.abs(v) ** 2))
        rows.append(np.round(degree) * v)
    return rows


def same_tables(exact_rows, float_rows, tol: float = 1e-6) -> bool:
    remaining = list(float_rows)
    for row in exact_rows:
        values = np.array([complex(v) for v in row], dtype=complex)
        for k, candidate in enumerate(remaining):
            if np.allclose(values, candidate, atol=tol):
                del remaining[k]
                break
        else:
            return False
    return not remaining


def quotient_order_counts(rows) -> Counter:
    """
    Element orders of Z^n / A Z^n for a square nonsingular A, by walking the
    quotient from 0. A coset v + A Z^n is keyed by A^-1 v mod 1.
    """
    inverse = Matrix(rows).inv()
    n = inverse.rows
    steps = [tuple(Fraction(int(x.p), int(x.q)) % 1 for x in inverse.col(k)) for k in range(n)]
    zero = (Fraction(0),) * n
    seen = {zero}
    frontier = [zero]
    while frontier:
        key = frontier.pop()
        for step in steps:
            image = tuple((a + b) % 1 for a, b in zip(key, step))
            if image not in seen:
                seen.add(image)
                frontier.append(image)
    return Counter(lcm(*(x.denominator for x in key)) for key in seen)


def invariant_order_counts(torsion) -> Counter:
    """Element orders of the product of cyclic groups Z/d."""
    return Counter(lcm(*(d // gcd(d, x) for d, x in zip(torsion, element)))
                   for element in product(*(range(d) for d in torsion)))


def random_unimodular(rng, n: int, steps: int = 4) -> Matrix:
    """A product of random elementary integer matrices, with a sign flip in rank one."""
    U = Matrix.eye(n)
    for _ in range(steps):
        if n == 1:
            U = -U if rng.integers(2) else U
            continue
        i, j = (int(k) for k in rng.choice(n, size=2, replace=False))
        E = Matrix.eye(n)
        E[i, j] = int(rng.integers(-2, 3))
        U = E * U
    return U
