"""
Ordinary characters of permutation groups and Dixon's character table algorithm.

The table is computed modulo a prime q = 1 (mod exponent) from the common
eigenvectors of the class multiplication matrices, then lifted to exact
cyclotomic values through the power maps.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator, List, Optional, Sequence

from sympy import FiniteField, Poly, Symbol, nextprime, primefactors, primitive_root, sqrt_mod
from sympy.polys.matrices import DomainMatrix

from .. import config
from ..utils.cyclotomic import CyclotomicNumber, canonical_key
from ..utils.errors import ClaimFalsifiedError, InvalidInputError
from .perm_groups import PermGroup, perm_mul

logger = logging.getLogger(__name__)


class Character:
    """A class function on a PermGroup, one exact value per conjugacy class."""

    def __init__(self, group: PermGroup, values: Sequence):
        if len(values) != len(group.classes):
            raise InvalidInputError(f"{len(values)} values for {len(group.classes)} classes")
        self.group = group
        self.values = tuple(v if isinstance(v, CyclotomicNumber) else CyclotomicNumber.rational(v) for v in values)

    def __call__(self, g) -> CyclotomicNumber:
        return self.values[self.group.class_of[tuple(g)]]

    @property
    def degree(self) -> int:
        return int(self.values[0].to_rational())

    def _check_group(self, other: "Character"):
        if self.group != other.group:
            raise InvalidInputError("characters live on different groups")

    def __add__(self, other: "Character") -> "Character":
        self._check_group(other)
        return Character(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "Character") -> "Character":
        self._check_group(other)
        return Character(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __mul__(self, other) -> "Character":
        if isinstance(other, Character):
            self._check_group(other)
            return Character(self.group, [a * b for a, b in zip(self.values, other.values)])
        return Character(self.group, [v * other for v in self.values])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Character) and self.group == other.group and self.values == other.values

    def __hash__(self):
        return hash((self.group, tuple(canonical_key(self.values))))

    def conjugate(self) -> "Character":
        return Character(self.group, [v.conjugate() for v in self.values])

    def inner(self, other: "Character") -> Fraction:
        self._check_group(other)
        total = CyclotomicNumber.rational(0)
        for size, a, b in zip(self.group.class_sizes, self.values, other.values):
            total = total + a * b.conjugate() * size
        return total.to_rational() / self.group.order

    def norm(self) -> Fraction:
        return self.inner(self)

    def is_irreducible(self) -> bool:
        return self.norm() == 1 and self.values[0].to_rational() > 0

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def kernel_classes(self) -> List[int]:
        return [k for k, v in enumerate(self.values) if v == self.values[0]]

    def as_dict(self):
        return {"degree": str(self.values[0]), "values": canonical_key(self.values)}

    def __repr__(self):
        return f"Character({self.group.name or '?'}, [{', '.join(canonical_key(self.values))}])"


def trivial_character(G: PermGroup) -> Character:
    return Character(G, [1] * len(G.classes))


def regular_character(G: PermGroup) -> Character:
    return Character(G, [G.order] + [0] * (len(G.classes) - 1))


def permutation_character(G: PermGroup) -> Character:
    return Character(G, [sum(1 for x, y in enumerate(c.representative) if x == y) for c in G.classes])


class CharacterTable:
    def __init__(self, group: PermGroup, characters: List[Character], prime: int, conductor: int):
        self.group = group
        self.characters = characters
        self.prime = prime
        self.conductor = conductor

    def __len__(self):
        return len(self.characters)

    def __iter__(self) -> Iterator[Character]:
        return iter(self.characters)

    def __getitem__(self, k) -> Character:
        return self.characters[k]

    @property
    def degrees(self) -> List[int]:
        return [chi.degree for chi in self.characters]

    def trivial(self) -> Character:
        return self.characters[0]

    def decompose(self, chi: Character) -> List[Fraction]:
        return [chi.inner(psi) for psi in self.characters]

    def index(self, chi: Character) -> Optional[int]:
        for k, psi in enumerate(self.characters):
            if psi == chi:
                return k
        return None

    def rows_orthogonal(self) -> bool:
        return all(chi.inner(psi) == (1 if i == j else 0)
                   for i, chi in enumerate(self.characters)
                   for j, psi in enumerate(self.characters) if j >= i)

    def columns_orthogonal(self) -> bool:
        G = self.group
        n = len(G.classes)
        for s in range(n):
            for t in range(s, n):
                total = CyclotomicNumber.rational(0)
                for chi in self.characters:
                    total = total + chi.values[s] * chi.values[t].conjugate()
                expected = Fraction(G.order, G.classes[s].size) if s == t else 0
                if total != expected:
                    return False
        return True

    def as_dict(self):
        return {
            "group": self.group.name, "order": self.group.order, "prime": self.prime,
            "conductor": self.conductor,
            "classes": [c.as_dict() for c in self.group.classes],
            "characters": [canonical_key(chi.values) for chi in self.characters],
        }


def decompose(chi: Character, table: CharacterTable) -> List[Fraction]:
    return table.decompose(chi)


def is_multiplicity_free(chi: Character, table: CharacterTable) -> bool:
    return all(m in (0, 1) for m in table.decompose(chi))


# -- Dixon's algorithm ---------------------------------------------------------------

class ClassMatrices:
    """M_r[i][t] = #{g in C_r : rep_t * g in C_i}, computed on demand."""

    def __init__(self, G: PermGroup):
        self.group = G
        self._cache = {}

    def __len__(self):
        return len(self.group.classes)

    def __getitem__(self, r: int) -> List[List[int]]:
        if r not in self._cache:
            G = self.group
            n = len(G.classes)
            m = [[0] * n for _ in range(n)]
            class_of = G.class_of
            for g in G.classes[r].elements:
                for t, rep in enumerate(G.representatives):
                    m[class_of[perm_mul(rep, g)]][t] += 1
            self._cache[r] = m
        return self._cache[r]


def dixon_prime(order: int, exponent: int) -> int:
    """The least prime p = 1 (mod exponent) with p > c sqrt(order), c = DIXON_MIN_PRIME_FACTOR."""
    factor = config.DIXON_MIN_PRIME_FACTOR
    p = max(factor * isqrt(order) - 1, 1)
    while True:
        p = nextprime(p)
        if p * p > factor * factor * order and p % exponent == 1 % exponent:
            return int(p)


def _ground_root(z, p: int) -> int:
    return int(z.p) * pow(int(z.q), -1, p) % p


def eigenspace_decomposition(A: DomainMatrix) -> List[DomainMatrix]:
    """Row bases of the left eigenspaces of A over its finite ground field."""
    A = A.transpose()
    Fp = A.domain
    p = Fp.mod
    charpoly = Poly(A.charpoly(), Symbol("x"), domain=Fp)
    spaces = []
    for z in sorted(_ground_root(z, p) for z in charpoly.ground_roots()):
        B = A - DomainMatrix.diag([Fp(z)] * A.shape[0], Fp)
        basis, _ = B.nullspace().rref()
        spaces.append(basis)
    return spaces


def refine_spaces(spaces: List[DomainMatrix], M: List[List[int]], Fp) -> List[DomainMatrix]:
    refined = []
    dM = DomainMatrix([[Fp(x) for x in row] for row in M], (len(M), len(M)), Fp)
    for S in spaces:
        if S.shape[0] <= 1:
            refined.append(S)
            continue
        _, pivots = S.rref()
        restricted = dM.extract(range(S.shape[1]), pivots)
        for sub in eigenspace_decomposition(S * restricted):
            refined.append(sub * S)
    return refined


def common_eigenvectors(matrices: ClassMatrices, Fp) -> List[List[int]]:
    n = len(matrices)
    first = DomainMatrix([[Fp(x) for x in row] for row in matrices[0]], (n, n), Fp)
    spaces = eigenspace_decomposition(first)
    for r in range(1, n):
        if len(spaces) == n:
            break
        spaces = refine_spaces(spaces, matrices[r], Fp)
    if len(spaces) != n:
        raise ClaimFalsifiedError(f"common eigenspace decomposition split into {len(spaces)} of {n} spaces",
                                  {"prime": Fp.mod, "classes": n, "spaces": len(spaces)})
    p = Fp.mod
    return [[int(x) % p for x in space.to_list()[0]] for space in spaces]


def _normalize(G: PermGroup, rows: List[List[int]], p: int) -> List[List[int]]:
    """Scale each eigenvector to the character values mod p."""
    sizes = G.class_sizes
    inverse = G.inverse_classes
    normalized = []
    for row in rows:
        scale = pow(row[0], -1, p)
        row = [x * scale % p for x in row]
        dot = sum(sizes[k] * row[k] * row[inverse[k]] for k in range(len(row))) % p
        degree_squared = G.order * pow(dot, -1, p) % p
        degree = sqrt_mod(degree_squared, p)
        if degree is None:
            raise ClaimFalsifiedError(f"{degree_squared} is not a square mod {p}",
                                      {"prime": p, "degree_squared": degree_squared})
        normalized.append([x * degree % p for x in row])
    return normalized


def _conductor(G: PermGroup, rows: List[List[int]]) -> int:
    """The least K such that every value lies in Q(z_K)."""
    m = G.exponent
    power_maps = G.power_maps
    units = [a for a in range(m) if gcd(a, m) == 1]
    for prime in reversed(primefactors(m)):
        while m % prime == 0:
            candidate = m // prime
            fixed = all(row[power_maps[j][a]] == row[j]
                        for a in units if a % candidate == 1 % candidate
                        for row in rows for j in range(len(row)))
            if not fixed:
                break
            m = candidate
    return m


def _lift(G: PermGroup, rows: List[List[int]], p: int, K: int) -> List[List[CyclotomicNumber]]:
    half = p // 2

    def symmetric(x):
        return x if x <= half else x - p

    if K == 1:
        return [[CyclotomicNumber.rational(symmetric(x)) for x in row] for row in rows]

    Fp = FiniteField(p)
    exponent = G.exponent
    x = pow(int(primitive_root(p)), (p - 1) // K, p)
    galois = [a for a in range(K) if gcd(a, K) == 1]
    phi = len(galois)
    V = DomainMatrix([[Fp(pow(x, a * i, p)) for i in range(phi)] for a in galois], (phi, phi), Fp)
    V_inv = V.inv()
    lifted_units = []
    for a in galois:
        A = a
        while gcd(A, exponent) != 1:
            A += K
        lifted_units.append(A % exponent)

    lifted = []
    for row in rows:
        values = []
        for j in range(len(row)):
            b = DomainMatrix([[Fp(row[G.power_maps[j][A]])] for A in lifted_units], (phi, 1), Fp)
            coeffs = [symmetric(int(c) % p) for c in (V_inv * b).to_list_flat()]
            values.append(CyclotomicNumber(K, coeffs))
        lifted.append(values)
    return lifted


def dixon_character_table(G: PermGroup) -> CharacterTable:
    p = dixon_prime(G.order, G.exponent)
    Fp = FiniteField(p)
    logger.info("Dixon: %s of order %d, exponent %d, prime %d", G.name or "group", G.order, G.exponent, p)
    rows = _normalize(G, common_eigenvectors(ClassMatrices(G), Fp), p)
    K = _conductor(G, rows)
    characters = [Character(G, values) for values in _lift(G, rows, p, K)]
    characters.sort(key=lambda chi: (not chi.is_trivial(), chi.degree, canonical_key(chi.values)))
    return CharacterTable(G, characters, p, K)


@lru_cache(maxsize=256)
def character_table(G: PermGroup) -> CharacterTable:
    return dixon_character_table(G)
