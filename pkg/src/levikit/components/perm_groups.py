"""
Finite permutation groups on {0, ..., degree-1}.

Elements are tuples of images, composed right to left like the Weyl group
elements: (u * v)(x) = u(v(x)). Orders, conjugacy classes and normality
come from sympy's combinatorics package; everything else works on tuples.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import lcm
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from sympy import Matrix
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.ntheory import isprime, primitive_root

from .. import config
from ..utils.errors import CapExceededError, InvalidInputError

logger = logging.getLogger(__name__)

Element = Tuple[int, ...]


def perm_mul(u: Element, v: Element) -> Element:
    return tuple(u[x] for x in v)


def perm_inverse(g: Element) -> Element:
    out = [0] * len(g)
    for x, y in enumerate(g):
        out[y] = x
    return tuple(out)


def perm_conjugate(g: Element, x: Element) -> Element:
    """g x g^-1"""
    return perm_mul(perm_mul(g, x), perm_inverse(g))


def perm_power(g: Element, k: int) -> Element:
    if k < 0:
        g, k = perm_inverse(g), -k
    result = tuple(range(len(g)))
    base = g
    while k:
        if k & 1:
            result = perm_mul(base, result)
        base = perm_mul(base, base)
        k >>= 1
    return result


def perm_order(g: Element) -> int:
    seen, order = set(), 1
    for start in range(len(g)):
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = g[x]
            length += 1
        order = lcm(order, length)
    return order


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Element
    size: int
    order: int
    elements: FrozenSet[Element]

    def as_dict(self):
        return {"representative": [x + 1 for x in self.representative], "size": self.size, "order": self.order}


class PermGroup:
    def __init__(self, degree: int, generators: Iterable[Sequence[int]], name: str = "",
                 cap: int = config.GROUP_ORDER_CAP):
        if degree < 1:
            raise InvalidInputError(f"degree must be positive, got {degree}")
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise InvalidInputError(f"generator {[x + 1 for x in g]} is not a permutation of 1..{degree}")
            gens.append(g)
        self.degree = degree
        self.generators: Tuple[Element, ...] = tuple(gens)
        self.name = name
        self.cap = cap
        self.identity: Element = tuple(range(degree))
        self._sympy = PermutationGroup([Permutation(list(g)) for g in gens] or [Permutation(degree - 1)])
        if self._sympy.order() > cap:
            raise CapExceededError(f"group {name or ''} has order {self._sympy.order()} above the cap {cap}")

    @classmethod
    def from_one_based(cls, degree: int, generators: Iterable[Sequence[int]], name: str = "") -> "PermGroup":
        return cls(degree, [[x - 1 for x in g] for g in generators], name)

    def __repr__(self):
        return f"PermGroup({self.name or '?'}, degree={self.degree}, order={self.order})"

    def __eq__(self, other):
        return isinstance(other, PermGroup) and self.degree == other.degree and self.element_set == other.element_set

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash((self.degree, self.element_set))

    # -- elements -----------------------------------------------------------------
    @property
    def order(self) -> int:
        return int(self._sympy.order())

    @cached_property
    def elements(self) -> List[Element]:
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = perm_mul(g, x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    @cached_property
    def element_set(self) -> FrozenSet[Element]:
        return frozenset(self.elements)

    def __contains__(self, g: Element) -> bool:
        return g in self.element_set

    def __iter__(self):
        return iter(self.elements)

    # -- classes ------------------------------------------------------------------
    @cached_property
    def classes(self) -> List[ConjugacyClass]:
        """Conjugacy classes, identity first, then by element order, size and representative."""
        found = []
        for cls in self._sympy.conjugacy_classes():
            members = frozenset(tuple(p.array_form) + tuple(range(p.size, self.degree)) for p in cls)
            rep = min(members)
            found.append(ConjugacyClass(rep, len(members), perm_order(rep), members))
        found.sort(key=lambda c: (c.order, c.size, c.representative))
        logger.info("%s: order %d, %d conjugacy classes", self.name or "group", self.order, len(found))
        return found

    @cached_property
    def class_of(self) -> Dict[Element, int]:
        return {g: k for k, c in enumerate(self.classes) for g in c.elements}

    @property
    def class_sizes(self) -> List[int]:
        return [c.size for c in self.classes]

    @property
    def representatives(self) -> List[Element]:
        return [c.representative for c in self.classes]

    @cached_property
    def inverse_classes(self) -> List[int]:
        return [self.class_of[perm_inverse(c.representative)] for c in self.classes]

    @cached_property
    def exponent(self) -> int:
        return lcm(*[c.order for c in self.classes])

    @cached_property
    def power_maps(self) -> List[List[int]]:
        """power_maps[i][k] is the class of (rep_i)^k, 0 <= k < exponent."""
        maps = []
        for c in self.classes:
            row, power = [], self.identity
            for _ in range(self.exponent):
                row.append(self.class_of[power])
                power = perm_mul(power, c.representative)
            maps.append(row)
        return maps

    # -- subgroups ------------------------------------------------------------------
    def subgroup(self, generators: Iterable[Element], name: str = "") -> "PermGroup":
        generators = [tuple(g) for g in generators]
        for g in generators:
            if g not in self:
                raise InvalidInputError(f"{[x + 1 for x in g]} is not an element of {self.name or 'the group'}")
        return PermGroup(self.degree, generators, name, self.cap)

    def subgroup_from_elements(self, elements: Iterable[Element], name: str = "") -> "PermGroup":
        """The subgroup generated by a set, using a greedy generating set."""
        gens: List[Element] = []
        span = {self.identity}
        for g in sorted(set(elements)):
            if g not in span:
                gens.append(g)
                span = set(PermGroup(self.degree, gens, cap=self.cap).elements)
        return PermGroup(self.degree, gens, name, self.cap)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def is_normal_in(self, other: "PermGroup") -> bool:
        return self.is_subgroup_of(other) and all(
            perm_conjugate(g, n) in self for g in other.generators for n in self.generators
        )

    def as_dict(self):
        return {"name": self.name, "degree": self.degree, "order": self.order,
                "generators": [[x + 1 for x in g] for g in self.generators]}


def conjugacy_classes(G: PermGroup) -> List[ConjugacyClass]:
    return G.classes


def require_normal(N: PermGroup, G: PermGroup):
    if not N.is_normal_in(G):
        raise InvalidInputError(f"{N.name or 'N'} is not a normal subgroup of {G.name or 'G'}")


# -- homomorphisms -------------------------------------------------------------------

class GroupHomomorphism:
    """
    A homomorphism given by the images of the source generators. The map is
    extended over the whole source by breadth-first search and checked to be
    well defined.
    """

    def __init__(self, source: PermGroup, target: PermGroup, images: Sequence[Element]):
        if len(images) != len(source.generators):
            raise InvalidInputError(f"{len(images)} images for {len(source.generators)} generators")
        images = [tuple(h) for h in images]
        for h in images:
            if h not in target:
                raise InvalidInputError(f"image {[x + 1 for x in h]} is not in {target.name or 'the target'}")
        self.source = source
        self.target = target
        self.images = tuple(images)
        mapping = {source.identity: target.identity}
        queue = deque([source.identity])
        while queue:
            x = queue.popleft()
            for g, h in zip(source.generators, images):
                y, value = perm_mul(g, x), perm_mul(h, mapping[x])
                known = mapping.get(y)
                if known is None:
                    mapping[y] = value
                    queue.append(y)
                elif known != value:
                    raise InvalidInputError("generator images do not define a homomorphism")
        self.mapping: Dict[Element, Element] = mapping

    def __call__(self, g: Element) -> Element:
        return self.mapping[g]

    @cached_property
    def image(self) -> PermGroup:
        return PermGroup(self.target.degree, self.images, f"im({self.source.name})", self.target.cap)

    @cached_property
    def kernel(self) -> FrozenSet[Element]:
        return frozenset(g for g, h in self.mapping.items() if h == self.target.identity)

    @property
    def is_injective(self) -> bool:
        return len(self.kernel) == 1

    @cached_property
    def fusion(self) -> List[int]:
        """Target class of each source class."""
        return [self.target.class_of[self.mapping[c.representative]] for c in self.source.classes]


class SubgroupEmbedding(GroupHomomorphism):
    def __init__(self, sub: PermGroup, parent: PermGroup):
        if not sub.is_subgroup_of(parent):
            raise InvalidInputError(f"{sub.name or 'H'} is not a subgroup of {parent.name or 'G'}")
        super().__init__(sub, parent, sub.generators)

    @property
    def sub(self) -> PermGroup:
        return self.source

    @property
    def parent(self) -> PermGroup:
        return self.target


def quotient_group(G: PermGroup, K: PermGroup) -> GroupHomomorphism:
    """G -> G/K through the action of G on the left cosets of K."""
    require_normal(K, G)
    cosets: List[FrozenSet[Element]] = []
    coset_of: Dict[Element, int] = {}
    for g in G.elements:
        if g in coset_of:
            continue
        coset = frozenset(perm_mul(g, k) for k in K.elements)
        for x in coset:
            coset_of[x] = len(cosets)
        cosets.append(coset)
    reps = [min(c) for c in cosets]
    images = [tuple(coset_of[perm_mul(g, r)] for r in reps) for g in G.generators]
    Q = PermGroup(len(cosets), images, f"{G.name or 'G'}/{K.name or 'K'}", G.cap)
    logger.info("quotient %s has order %d", Q.name, Q.order)
    return GroupHomomorphism(G, Q, images)


# -- named groups -------------------------------------------------------------------

def trivial_group() -> PermGroup:
    return PermGroup(1, [], "1")


def cyclic(n: int) -> PermGroup:
    return PermGroup(n, [tuple((x + 1) % n for x in range(n))] if n > 1 else [], f"C{n}")


def symmetric(n: int) -> PermGroup:
    gens = []
    if n > 1:
        gens.append(tuple((x + 1) % n for x in range(n)))
        gens.append((1, 0) + tuple(range(2, n)))
    return PermGroup(n, gens, f"S{n}")


def dihedral(order: int) -> PermGroup:
    """The dihedral group of the given order acting on order // 2 points."""
    m = order // 2
    if order % 2 or m < 2:
        raise InvalidInputError(f"no dihedral group of order {order}")
    if m == 2:
        return PermGroup(4, [(1, 0, 3, 2), (2, 3, 0, 1)], "D4")
    rotation = tuple((x + 1) % m for x in range(m))
    reflection = tuple((-x) % m for x in range(m))
    return PermGroup(m, [rotation, reflection], f"D{order}")


def _vectors(n: int, q: int) -> List[Tuple[int, ...]]:
    """Nonzero vectors of F_q^n, indexed by their little-endian base-q value minus one."""
    out = []
    for value in range(1, q ** n):
        v, x = [], value
        for _ in range(n):
            v.append(x % q)
            x //= q
        out.append(tuple(v))
    return out


def matrix_group(matrices: Sequence[Sequence[Sequence[int]]], q: int, name: str = "") -> PermGroup:
    """A matrix group over F_q (q prime) acting on the nonzero column vectors."""
    if not isprime(q):
        raise InvalidInputError(f"q = {q} must be a prime")
    if not matrices:
        raise InvalidInputError("at least one matrix is required")
    n = len(matrices[0])
    vectors = _vectors(n, q)
    index = {v: k for k, v in enumerate(vectors)}
    gens = []
    for M in matrices:
        if len(M) != n or any(len(row) != n for row in M):
            raise InvalidInputError(f"matrix {M} is not {n}x{n}")
        images = [index.get(tuple(sum(M[i][j] * v[j] for j in range(n)) % q for i in range(n))) for v in vectors]
        if None in images or len(set(images)) != len(images):
            raise InvalidInputError(f"matrix {M} is not invertible over F_{q}")
        gens.append(tuple(images))
    return PermGroup(len(vectors), gens, name)


def general_linear_group(n: int, q: int) -> PermGroup:
    return matrix_group(_gl_generators(n, q), q, f"GL{n}({q})")


def special_linear_group(n: int, q: int) -> PermGroup:
    gens = [M for M in _gl_generators(n, q) if int(Matrix(M).det()) % q == 1]
    return matrix_group(gens, q, f"SL{n}({q})")


def _gl_generators(n: int, q: int):
    """Elementary transvections together with diag(w, 1, ..., 1) for a generator w of F_q^*."""
    gens = []
    for i, j in product(range(n), repeat=2):
        if i != j:
            M = [[int(a == b) for b in range(n)] for a in range(n)]
            M[i][j] = 1
            gens.append(M)
    if q > 2:
        D = [[int(a == b) for b in range(n)] for a in range(n)]
        D[0][0] = int(primitive_root(q))
        gens.append(D)
    return gens


def quaternion() -> PermGroup:
    return matrix_group([[[0, 2], [1, 0]], [[1, 1], [1, 2]]], 3, "Q8")


def direct_product(G: PermGroup, H: PermGroup) -> PermGroup:
    shift = G.degree
    gens = [g + tuple(range(shift, shift + H.degree)) for g in G.generators]
    gens += [tuple(range(shift)) + tuple(shift + x for x in h) for h in H.generators]
    return PermGroup(G.degree + H.degree, gens, f"{G.name}x{H.name}", max(G.cap, H.cap))


@dataclass
class Holomorph:
    """H ⋊ A acting on the elements of H; H by left translation, A by automorphisms."""
    group: PermGroup
    translations: PermGroup
    points: List[Element]
    automorphisms: List[GroupHomomorphism]

    def translation(self, h: Element) -> Element:
        index = {x: k for k, x in enumerate(self.points)}
        return tuple(index[perm_mul(h, x)] for x in self.points)


def holomorph_semidirect(H: PermGroup, automorphisms: Sequence[Sequence[Element]], name: str = "") -> Holomorph:
    points = H.elements
    index = {x: k for k, x in enumerate(points)}
    autos = []
    for images in automorphisms:
        a = GroupHomomorphism(H, H, images)
        if not a.is_injective:
            raise InvalidInputError("an automorphism of H must be bijective")
        autos.append(a)
    translations = [tuple(index[perm_mul(h, x)] for x in points) for h in H.generators]
    actions = [tuple(index[a(x)] for x in points) for a in autos]
    degree = len(points)
    T = PermGroup(degree, translations, H.name, H.cap)
    G = PermGroup(degree, translations + actions, name or (f"{H.name}:A" if autos else H.name), H.cap)
    return Holomorph(G, T, points, autos)
