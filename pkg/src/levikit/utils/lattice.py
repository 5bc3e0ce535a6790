"""
Exact integer linear algebra on the standard lattices Z^n.

Matrices are sympy matrices with integer entries; a LatticeMap stores the
matrix whose j-th column is the image of the j-th basis vector. The Smith
normal form keeps both transforms so that callers can solve preimage problems.
"""

import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Matrix, eye, zeros

from .errors import InvalidInputError

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class Lattice:
    """The standard free abelian group of the given rank, paired with its dual by the dot product."""
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise InvalidInputError(f"lattice rank must be non-negative, got {self.rank}")


@dataclass(frozen=True)
class LatticeMap:
    domain: Lattice
    codomain: Lattice
    matrix: ImmutableMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.codomain.rank, self.domain.rank):
            raise InvalidInputError(
                f"matrix shape {self.matrix.shape} does not match "
                f"codomain rank {self.codomain.rank} x domain rank {self.domain.rank}"
            )
        if any(not entry.is_Integer for entry in self.matrix):
            raise InvalidInputError("lattice maps need integer matrices")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], domain_rank: Optional[int] = None):
        rows = [list(row) for row in rows]
        if domain_rank is None:
            domain_rank = len(rows[0]) if rows else 0
        matrix = ImmutableMatrix(len(rows), domain_rank, [int(x) for row in rows for x in row])
        return cls(Lattice(domain_rank), Lattice(len(rows)), matrix)

    @classmethod
    def from_matrix(cls, matrix):
        matrix = ImmutableMatrix(matrix)
        return cls(Lattice(matrix.cols), Lattice(matrix.rows), matrix)

    def apply(self, vector: Sequence[int]) -> Vector:
        if len(vector) != self.domain.rank:
            raise InvalidInputError(f"vector {tuple(vector)} does not lie in Z^{self.domain.rank}")
        image = self.matrix * Matrix(self.domain.rank, 1, list(vector))
        return tuple(int(x) for x in image)

    def rows(self) -> List[List[int]]:
        return [[int(x) for x in self.matrix.row(i)] for i in range(self.matrix.rows)]

    def is_scalar(self) -> Optional[int]:
        """Return c when the map is c times the identity, else None."""
        if self.domain != self.codomain:
            return None
        n = self.domain.rank
        if n == 0:
            return None
        c = self.matrix[0, 0]
        return int(c) if self.matrix == c * eye(n) else None

    def power(self, k: int) -> "LatticeMap":
        if self.domain != self.codomain:
            raise InvalidInputError("only endomorphisms have powers")
        return LatticeMap(self.domain, self.codomain, ImmutableMatrix(self.matrix ** k))


class SmithForm(NamedTuple):
    U: ImmutableMatrix
    D: ImmutableMatrix
    V: ImmutableMatrix

    def diagonal(self) -> List[int]:
        return [int(self.D[i, i]) for i in range(min(self.D.shape))]


@dataclass(frozen=True)
class CokernelStructure:
    free_rank: int
    torsion: Tuple[int, ...]

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> Optional[int]:
        if not self.is_finite:
            return None
        result = 1
        for d in self.torsion:
            result *= d
        return result


def identity(rank: int) -> LatticeMap:
    return LatticeMap(Lattice(rank), Lattice(rank), ImmutableMatrix(eye(rank)))


def compose(a: LatticeMap, b: LatticeMap) -> LatticeMap:
    """a after b."""
    if b.codomain != a.domain:
        raise InvalidInputError(
            f"cannot compose: codomain rank {b.codomain.rank} != domain rank {a.domain.rank}"
        )
    return LatticeMap(b.domain, a.codomain, ImmutableMatrix(a.matrix * b.matrix))


def transpose(a: LatticeMap) -> LatticeMap:
    return LatticeMap(a.codomain, a.domain, ImmutableMatrix(a.matrix.T))


def is_unimodular(matrix) -> bool:
    matrix = Matrix(matrix)
    return matrix.is_square and abs(matrix.det()) == 1


def _least_entry(D: Matrix, s: int):
    best = None
    for i in range(s, D.rows):
        for j in range(s, D.cols):
            if D[i, j] != 0 and (best is None or abs(D[i, j]) < abs(D[best[0], best[1]])):
                best = (i, j)
    return best


def _bring_to_pivot(D: Matrix, U: Matrix, V: Matrix, s: int, pos):
    i, j = pos
    if i != s:
        D.row_swap(s, i)
        U.row_swap(s, i)
    if j != s:
        D.col_swap(s, j)
        V.col_swap(s, j)


def _clear_edging(D: Matrix, U: Matrix, V: Matrix, s: int) -> bool:
    """Reduce row s and column s modulo the pivot; True if a nonzero remainder is left."""
    remainder = False
    pivot = D[s, s]
    for i in range(s + 1, D.rows):
        if D[i, s] != 0:
            q = D[i, s] // pivot
            D.row_op(i, lambda val, col: val - q * D[s, col])
            U.row_op(i, lambda val, col: val - q * U[s, col])
            remainder = remainder or D[i, s] != 0
    for j in range(s + 1, D.cols):
        if D[s, j] != 0:
            q = D[s, j] // pivot
            D.col_op(j, lambda val, row: val - q * D[row, s])
            V.col_op(j, lambda val, row: val - q * V[row, s])
            remainder = remainder or D[s, j] != 0
    return remainder


def _least_on_edging(D: Matrix, s: int):
    best = (s, s)
    for i in range(s + 1, D.rows):
        if D[i, s] != 0 and abs(D[i, s]) < abs(D[best[0], best[1]]):
            best = (i, s)
    for j in range(s + 1, D.cols):
        if D[s, j] != 0 and abs(D[s, j]) < abs(D[best[0], best[1]]):
            best = (s, j)
    return best


def _non_divisible_row(D: Matrix, s: int) -> Optional[int]:
    pivot = D[s, s]
    for i in range(s + 1, D.rows):
        for j in range(s + 1, D.cols):
            if D[i, j] % pivot != 0:
                return i
    return None


def smith_normal_form(a: LatticeMap) -> SmithForm:
    """
    Smith normal form with transforms: U * A * V = D, U and V unimodular,
    D diagonal with non-negative entries and d_i | d_{i+1}.
    """
    D = Matrix(a.matrix)
    U = eye(D.rows)
    V = eye(D.cols)

    for s in range(min(D.rows, D.cols)):
        pos = _least_entry(D, s)
        if pos is None:
            break
        _bring_to_pivot(D, U, V, s, pos)
        while True:
            if _clear_edging(D, U, V, s):
                _bring_to_pivot(D, U, V, s, _least_on_edging(D, s))
                continue
            row = _non_divisible_row(D, s)
            if row is None:
                break
            # pull the offending row into the pivot row; the next clearing pass shrinks the pivot
            D.row_op(s, lambda val, col: val + D[row, col])
            U.row_op(s, lambda val, col: val + U[row, col])
        if D[s, s] < 0:
            D.row_op(s, lambda val, col: -val)
            U.row_op(s, lambda val, col: -val)

    return SmithForm(ImmutableMatrix(U), ImmutableMatrix(D), ImmutableMatrix(V))


def matrix_rank(a: LatticeMap) -> int:
    return sum(1 for d in smith_normal_form(a).diagonal() if d != 0)


def cokernel(a: LatticeMap) -> CokernelStructure:
    diagonal = smith_normal_form(a).diagonal()
    rank = sum(1 for d in diagonal if d != 0)
    torsion = tuple(abs(d) for d in diagonal if abs(d) > 1)
    return CokernelStructure(free_rank=a.codomain.rank - rank, torsion=torsion)


def torsion_p_split(c: CokernelStructure, p: int) -> Tuple[List[int], List[int]]:
    p_part, p_prime_part = [], []
    for d in c.torsion:
        pv = 1
        m = d
        while m % p == 0:
            m //= p
            pv *= p
        if pv > 1:
            p_part.append(pv)
        if m > 1:
            p_prime_part.append(m)
    return p_part, p_prime_part


def columns_map(vectors: Sequence[Sequence[int]], rank: int) -> LatticeMap:
    """The map Z^k -> Z^rank sending the i-th basis vector to vectors[i]."""
    for v in vectors:
        if len(v) != rank:
            raise InvalidInputError(f"vector {tuple(v)} does not lie in Z^{rank}")
    matrix = zeros(rank, len(vectors))
    for j, v in enumerate(vectors):
        for i, x in enumerate(v):
            matrix[i, j] = int(x)
    return LatticeMap(Lattice(len(vectors)), Lattice(rank), ImmutableMatrix(matrix))


def saturation(vectors: Sequence[Sequence[int]], lattice: Lattice) -> List[Vector]:
    """Basis of {x in L : m x lies in span_Z(vectors) for some m >= 1}."""
    if not vectors:
        return []
    smith = smith_normal_form(columns_map(vectors, lattice.rank))
    rank = sum(1 for d in smith.diagonal() if d != 0)
    u_inverse = smith.U.inv()
    return [tuple(int(x) for x in u_inverse.col(j)) for j in range(rank)]


def solve_integer(a: LatticeMap, target: Sequence[int]) -> Optional[Vector]:
    """An integral x with A x = target, or None."""
    smith = smith_normal_form(a)
    rhs = smith.U * Matrix(a.codomain.rank, 1, list(target))
    y = zeros(a.domain.rank, 1)
    diagonal = smith.diagonal()
    for i in range(a.codomain.rank):
        d = diagonal[i] if i < len(diagonal) else 0
        if d == 0:
            if rhs[i] != 0:
                return None
        else:
            if rhs[i] % d != 0:
                return None
            y[i] = rhs[i] // d
    return tuple(int(x) for x in smith.V * y)


def in_span(vector: Sequence[int], basis: Sequence[Sequence[int]], rank: int) -> bool:
    if not basis:
        return all(x == 0 for x in vector)
    return solve_integer(columns_map(basis, rank), vector) is not None


def same_span(first: Sequence[Sequence[int]], second: Sequence[Sequence[int]], rank: int) -> bool:
    return (all(in_span(v, second, rank) for v in first)
            and all(in_span(v, first, rank) for v in second))


def solve_rational(columns: Sequence[Sequence[int]], target: Sequence[int], rank: int):
    """Unique rational coefficients c with sum c_i columns[i] = target, or None."""
    if not columns:
        return () if all(x == 0 for x in target) else None
    matrix = Matrix(columns_map(columns, rank).matrix)
    try:
        solution, params = matrix.gauss_jordan_solve(Matrix(rank, 1, list(target)))
    except ValueError:
        return None
    if params.shape[0] != 0:
        raise InvalidInputError("columns are linearly dependent")
    return tuple(solution)
