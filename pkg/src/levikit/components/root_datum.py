"""
Root data (X, Phi, X^v, Phi^v) on standard lattices, based root data,
Cartan-type recognition and the standard constructors.

Roots and coroots are integer vectors in Z^rank, index aligned so that
coroots[i] is the coroot of roots[i]; the pairing is the dot product.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher
from sympy import ImmutableMatrix, Matrix, eye

from ..utils.errors import InvalidInputError
from ..utils.lattice import Lattice, LatticeMap, Vector, in_span, saturation, solve_rational

logger = logging.getLogger(__name__)


def pairing(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


def _reflect(x: Sequence[int], root: Sequence[int], coroot: Sequence[int]) -> Vector:
    c = pairing(x, coroot)
    return tuple(a - c * b for a, b in zip(x, root))


@dataclass(frozen=True)
class Violation:
    axiom: str
    root: Optional[int]
    detail: str

    def as_dict(self):
        return {"axiom": self.axiom, "root": self.root, "detail": self.detail}


@dataclass(frozen=True)
class RootDatum:
    rank: int
    roots: Tuple[Vector, ...]
    coroots: Tuple[Vector, ...]
    name: str = field(default="", compare=False)

    @classmethod
    def build(cls, rank, roots, coroots, name=""):
        return cls(rank, tuple(tuple(int(x) for x in r) for r in roots),
                   tuple(tuple(int(x) for x in c) for c in coroots), name)

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.rank)

    @cached_property
    def index(self) -> Dict[Vector, int]:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def coroot_index(self) -> Dict[Vector, int]:
        return {c: i for i, c in enumerate(self.coroots)}

    def root_index(self, vector: Sequence[int]) -> Optional[int]:
        return self.index.get(tuple(vector))

    def check_index(self, i: int):
        if not 0 <= i < len(self.roots):
            raise InvalidInputError(f"root index {i} out of range for {len(self.roots)} roots")

    @cached_property
    def reflection_permutations(self) -> Tuple[Tuple[int, ...], ...]:
        """perms[i][j] = index of s_i(root j)."""
        perms = []
        for i in range(len(self.roots)):
            images = []
            for r in self.roots:
                k = self.index.get(_reflect(r, self.roots[i], self.coroots[i]))
                if k is None:
                    raise InvalidInputError(f"roots are not stable under the reflection of root {i}")
                images.append(k)
            perms.append(tuple(images))
        return tuple(perms)


def validate(R: RootDatum) -> List[Violation]:
    """
    Axiom check in stages: structure, (i) pairing, (ii) no doubled roots plus
    reducedness, (iii) reflection stability. Only the first failing stage is
    reported, since later axioms are not meaningful once an earlier one fails.
    """
    stages = (_structure_violations, _pairing_violations, _doubling_violations, _stability_violations)
    for stage in stages:
        violations = stage(R)
        if violations:
            return violations
    return []


def _structure_violations(R: RootDatum) -> List[Violation]:
    out = []
    if len(R.roots) != len(R.coroots):
        out.append(Violation("structure", None, f"{len(R.roots)} roots but {len(R.coroots)} coroots"))
        return out
    seen = set()
    for i, (r, c) in enumerate(zip(R.roots, R.coroots)):
        if len(r) != R.rank or len(c) != R.rank:
            out.append(Violation("structure", i, f"vector length differs from rank {R.rank}"))
        elif not any(r):
            out.append(Violation("structure", i, "zero root"))
        elif r in seen:
            out.append(Violation("structure", i, f"duplicate root {r}"))
        seen.add(r)
    if len(set(R.coroots)) != len(R.coroots):
        out.append(Violation("structure", None, "duplicate coroots"))
    return out


def _pairing_violations(R: RootDatum) -> List[Violation]:
    return [Violation("(i)", i, f"pairing value {pairing(r, c)}")
            for i, (r, c) in enumerate(zip(R.roots, R.coroots)) if pairing(r, c) != 2]


def _proportionality(u: Vector, v: Vector) -> Optional[Fraction]:
    """c with v = c*u, or None."""
    k = next(i for i, x in enumerate(u) if x)
    c = Fraction(v[k], u[k])
    if all(Fraction(b) == c * a for a, b in zip(u, v)):
        return c
    return None


def _doubling_violations(R: RootDatum) -> List[Violation]:
    out = []
    for i, r in enumerate(R.roots):
        if tuple(2 * x for x in r) in R.index:
            out.append(Violation("(ii)", i, f"2 * {r} is a root"))
    if out:
        return out
    for i, r in enumerate(R.roots):
        for j, s in enumerate(R.roots):
            c = _proportionality(r, s)
            if c is not None and c not in (1, -1, 2, Fraction(1, 2)):
                out.append(Violation("reduced", i, f"root {j} equals {c} times root {i}"))
    return out


def _stability_violations(R: RootDatum) -> List[Violation]:
    out = []
    for i, (a, a_check) in enumerate(zip(R.roots, R.coroots)):
        for j, (b, b_check) in enumerate(zip(R.roots, R.coroots)):
            image = _reflect(b, a, a_check)
            k = R.index.get(image)
            if k is None:
                out.append(Violation("(iii)", i, f"s_{i} sends root {j} to {image}, not a root"))
                continue
            co_image = _reflect(b_check, a_check, a)
            if R.coroots[k] != co_image:
                out.append(Violation("(iii)", i, f"s_{i} sends coroot {j} to {co_image}, "
                                                 f"expected coroot {R.coroots[k]} of root {k}"))
    return out


def require_valid(R: RootDatum):
    violations = validate(R)
    if violations:
        first = violations[0]
        raise InvalidInputError(f"root datum {R.name or ''} violates axiom {first.axiom}: {first.detail}")


def reflection(R: RootDatum, i: int) -> LatticeMap:
    R.check_index(i)
    alpha = Matrix(R.rank, 1, list(R.roots[i]))
    alpha_check = Matrix(1, R.rank, list(R.coroots[i]))
    return LatticeMap(R.lattice, R.lattice, ImmutableMatrix(eye(R.rank) - alpha * alpha_check))


def coreflection(R: RootDatum, i: int) -> LatticeMap:
    return reflection(dual(R), i)


def root_permutation(R: RootDatum, i: int) -> Tuple[int, ...]:
    """s_i as a permutation of the root indices."""
    R.check_index(i)
    return R.reflection_permutations[i]


def dual(R: RootDatum) -> RootDatum:
    name = R.name[:-1] if R.name.endswith("*") else (R.name + "*" if R.name else "")
    return RootDatum(R.rank, R.coroots, R.roots, name)


def change_basis(R: RootDatum, U) -> RootDatum:
    """Transport along the lattice automorphism U: roots go to U*a, coroots to U^-T * a^v."""
    U = Matrix(U)
    if U.shape != (R.rank, R.rank) or abs(U.det()) != 1:
        raise InvalidInputError("change of basis needs a unimodular matrix of the lattice rank")
    U_dual = U.inv().T
    roots = [tuple(int(x) for x in U * Matrix(list(r))) for r in R.roots]
    coroots = [tuple(int(x) for x in U_dual * Matrix(list(c))) for c in R.coroots]
    return RootDatum.build(R.rank, roots, coroots, R.name)


def direct_sum(R1: RootDatum, R2: RootDatum, name: str = "") -> RootDatum:
    pad1, pad2 = (0,) * R2.rank, (0,) * R1.rank
    roots = [r + pad1 for r in R1.roots] + [pad2 + r for r in R2.roots]
    coroots = [c + pad1 for c in R1.coroots] + [pad2 + c for c in R2.coroots]
    return RootDatum(R1.rank + R2.rank, tuple(roots), tuple(coroots), name)


# -- based root data ------------------------------------------------------------

@dataclass(frozen=True)
class BasedRootDatum:
    datum: RootDatum
    simple: Tuple[int, ...]

    @property
    def name(self) -> str:
        return self.datum.name

    @property
    def rank(self) -> int:
        return self.datum.rank

    @cached_property
    def coefficients(self) -> Tuple[Tuple[int, ...], ...]:
        """Coordinates of every root with respect to the simple roots."""
        simple_vectors = [self.datum.roots[i] for i in self.simple]
        coords = []
        for i, r in enumerate(self.datum.roots):
            c = solve_rational(simple_vectors, r, self.rank)
            if c is None:
                raise InvalidInputError(f"root {i} is not in the span of the simple roots")
            if any(not x.is_Integer for x in c):
                raise InvalidInputError(f"root {i} is not an integral combination of the simple roots")
            coords.append(tuple(int(x) for x in c))
        return tuple(coords)

    @cached_property
    def positive(self) -> Tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coefficients) if all(x >= 0 for x in c))

    @cached_property
    def is_positive(self) -> Tuple[bool, ...]:
        pos = set(self.positive)
        return tuple(i in pos for i in range(len(self.datum.roots)))

    def cartan_matrix(self) -> List[List[int]]:
        R = self.datum
        return [[pairing(R.roots[i], R.coroots[j]) for j in self.simple] for i in self.simple]

    def dual(self) -> "BasedRootDatum":
        return BasedRootDatum(dual(self.datum), self.simple)


def validate_base(B: BasedRootDatum) -> List[Violation]:
    R = B.datum
    out = []
    if len(set(B.simple)) != len(B.simple):
        return [Violation("base", None, "repeated simple root")]
    for i in B.simple:
        if not 0 <= i < len(R.roots):
            return [Violation("base", i, "simple root index out of range")]
    if R.roots and not B.simple:
        return [Violation("base", None, "empty base for a nonempty root system")]
    try:
        coefficients = B.coefficients
    except InvalidInputError as exc:
        return [Violation("base", None, str(exc))]
    for i, c in enumerate(coefficients):
        if not (all(x >= 0 for x in c) or all(x <= 0 for x in c)):
            out.append(Violation("base", i, f"root {i} has mixed-sign coordinates {c}"))
    return out


def positive_roots(B: BasedRootDatum) -> Tuple[int, ...]:
    return B.positive


def root_coefficients(B: BasedRootDatum, i: int) -> Tuple[int, ...]:
    B.datum.check_index(i)
    return B.coefficients[i]


def make_based(R: RootDatum, simple: Optional[Sequence[int]] = None) -> BasedRootDatum:
    require_valid(R)
    B = BasedRootDatum(R, tuple(simple) if simple is not None else choose_base(R))
    violations = validate_base(B)
    if violations:
        raise InvalidInputError(f"invalid base: {violations[0].detail}")
    return B


def choose_base(R: RootDatum) -> Tuple[int, ...]:
    """Simple roots of the positive system cut out by a generic functional."""
    if not R.roots:
        return ()
    big = 2 * max(abs(x) for r in R.roots for x in r) + 1

    def height(v):
        return sum(x * big ** k for k, x in enumerate(v))

    positive = [i for i, r in enumerate(R.roots) if height(r) > 0]
    positive_set = {R.roots[i] for i in positive}
    simple = []
    for i in positive:
        r = R.roots[i]
        decomposable = any(
            tuple(a - b for a, b in zip(r, s)) in positive_set for s in positive_set if s != r
        )
        if not decomposable:
            simple.append(i)
    return tuple(simple)


# -- Cartan types --------------------------------------------------------------

def _gram(family: str, n: int) -> List[List[Fraction]]:
    g = [[Fraction(0)] * n for _ in range(n)]
    lengths = [Fraction(2)] * n
    edges = []
    if family in "ABCD":
        edges = [(i, i + 1) for i in range(n - 1)]
    if family == "B":
        lengths[n - 1] = Fraction(1)
    elif family == "C":
        lengths[n - 1] = Fraction(4)
    elif family == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif family == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)]
    elif family == "F":
        lengths = [Fraction(2), Fraction(2), Fraction(1), Fraction(1)]
        edges = [(0, 1), (1, 2), (2, 3)]
    elif family == "G":
        lengths = [Fraction(2), Fraction(6)]
        edges = [(0, 1)]
    for i in range(n):
        g[i][i] = lengths[i]
    for i, j in edges:
        # (a_i, a_j) = -max(|a_i|^2, |a_j|^2) / 2
        value = -max(lengths[i], lengths[j]) / 2
        g[i][j] = g[j][i] = value
    return g


def _valid_family_rank(family: str, n: int) -> bool:
    return {
        "A": n >= 1, "B": n >= 2, "C": n >= 3, "D": n >= 4,
        "E": n in (6, 7, 8), "F": n == 4, "G": n == 2,
    }.get(family, False)


def standard_cartan_matrix(family: str, n: int) -> List[List[int]]:
    """C[i][j] = <a_i, a_j^v> in Bourbaki numbering."""
    if family == "C" and n == 2:
        family = "C2"
    if family == "C2":
        return [[2, -1], [-2, 2]]
    if not _valid_family_rank(family, n):
        raise InvalidInputError(f"no Dynkin type {family}{n}")
    g = _gram(family, n)
    return [[int(2 * g[i][j] / g[j][j]) for j in range(n)] for i in range(n)]


def _cartan_digraph(cartan: Sequence[Sequence[int]], nodes: Sequence) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(nodes)
    for a, u in enumerate(nodes):
        for b, v in enumerate(nodes):
            if a != b and cartan[a][b] != 0:
                graph.add_edge(u, v, weight=cartan[a][b])
    return graph


def _weights_match(e1, e2):
    return e1["weight"] == e2["weight"]


@dataclass(frozen=True)
class DynkinComponent:
    family: str
    rank: int
    nodes: Tuple[int, ...]  # simple root indices in Bourbaki order

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class CartanType:
    components: Tuple[DynkinComponent, ...]
    torus_rank: int

    @property
    def label(self) -> str:
        parts = [c.label for c in self.components]
        if self.torus_rank:
            parts.append(f"T{self.torus_rank}")
        return "x".join(parts) if parts else "T0"

    def semisimple_label(self) -> str:
        return "x".join(sorted(c.label for c in self.components)) or "1"


def match_dynkin(cartan: Sequence[Sequence[int]], nodes: Sequence[int]) -> DynkinComponent:
    """Identify an indecomposable Cartan matrix by diagram isomorphism against the finite-type tables."""
    n = len(nodes)
    graph = _cartan_digraph(cartan, nodes)
    for family in "ABCDEFG":
        if not _valid_family_rank(family, n):
            continue
        standard = _cartan_digraph(standard_cartan_matrix(family, n), list(range(n)))
        matcher = DiGraphMatcher(graph, standard, edge_match=_weights_match)
        if matcher.is_isomorphic():
            inverse = {v: u for u, v in matcher.mapping.items()}
            return DynkinComponent(family, n, tuple(inverse[k] for k in range(n)))
    raise InvalidInputError(f"Cartan matrix {cartan} is not of finite type")


def dynkin_components(B: BasedRootDatum, subset: Optional[Sequence[int]] = None) -> List[Tuple[int, ...]]:
    """Connected components of the Dynkin diagram on the given simple roots, in base order."""
    R = B.datum
    nodes = list(B.simple if subset is None else subset)
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    for u in nodes:
        for v in nodes:
            if u != v and pairing(R.roots[u], R.coroots[v]) != 0:
                graph.add_edge(u, v)
    order = {s: k for k, s in enumerate(nodes)}
    components = [tuple(sorted(c, key=order.get)) for c in nx.connected_components(graph)]
    return sorted(components, key=lambda c: order[c[0]])


def classify(B: BasedRootDatum, subset: Optional[Sequence[int]] = None) -> CartanType:
    R = B.datum
    nodes = list(B.simple if subset is None else subset)
    components = []
    for comp in dynkin_components(B, nodes):
        cartan = [[pairing(R.roots[u], R.coroots[v]) for v in comp] for u in comp]
        components.append(match_dynkin(cartan, comp))
    cartan_type = CartanType(tuple(components), R.rank - len(nodes))
    logger.debug("classified %s as %s", R.name or "datum", cartan_type.label)
    return cartan_type


def root_subsystem_indices(B: BasedRootDatum, subset: Sequence[int]) -> Tuple[int, ...]:
    """Indices of the roots in Phi cap Z*subset."""
    R = B.datum
    for i in subset:
        if i not in B.simple:
            raise InvalidInputError(f"root {i} is not simple")
    vectors = [R.roots[i] for i in subset]
    if not vectors:
        return ()
    saturated = saturation(vectors, R.lattice)
    return tuple(i for i, r in enumerate(R.roots)
                 if in_span(r, saturated, R.rank) and in_span(r, vectors, R.rank))


def root_subsystem(B: BasedRootDatum, subset: Sequence[int]) -> BasedRootDatum:
    R = B.datum
    indices = root_subsystem_indices(B, subset)
    sub = RootDatum(R.rank, tuple(R.roots[i] for i in indices), tuple(R.coroots[i] for i in indices),
                    f"{R.name}[{','.join(map(str, subset))}]" if R.name else "")
    position = {i: k for k, i in enumerate(indices)}
    return BasedRootDatum(sub, tuple(position[i] for i in subset))


# -- constructors --------------------------------------------------------------

def from_cartan_matrix(cartan: Sequence[Sequence[int]], lattice: str = "weights", name: str = "") -> BasedRootDatum:
    """
    Simply connected ("weights": X has the fundamental weight basis) or adjoint
    ("roots": X has the simple root basis) datum of a Cartan matrix
    C[i][j] = <a_i, a_j^v>.
    """
    n = len(cartan)
    if lattice == "weights":
        simple_roots = [tuple(cartan[i]) for i in range(n)]
        simple_coroots = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    elif lattice == "roots":
        simple_roots = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        simple_coroots = [tuple(cartan[j][i] for j in range(n)) for i in range(n)]
    else:
        raise InvalidInputError(f"unknown lattice kind {lattice!r}")

    pairs = list(zip(simple_roots, simple_coroots))
    seen = {r for r, _ in pairs}
    queue = deque(pairs)
    while queue:
        root, coroot = queue.popleft()
        for a, a_check in zip(simple_roots, simple_coroots):
            image = _reflect(root, a, a_check)
            if image not in seen:
                seen.add(image)
                pair = (image, _reflect(coroot, a_check, a))
                pairs.append(pair)
                queue.append(pair)
    R = RootDatum.build(n, [r for r, _ in pairs], [c for _, c in pairs], name)
    return BasedRootDatum(R, tuple(range(n)))


def simply_connected(family: str, n: int) -> BasedRootDatum:
    return from_cartan_matrix(standard_cartan_matrix(family, n), "weights", f"{family}{n}sc")


def adjoint(family: str, n: int) -> BasedRootDatum:
    return from_cartan_matrix(standard_cartan_matrix(family, n), "roots", f"{family}{n}ad")


def general_linear(n: int) -> BasedRootDatum:
    def e(i, j):
        return tuple(int(k == i) - int(k == j) for k in range(n))

    simple = [e(i, i + 1) for i in range(n - 1)]
    others = [e(i, j) for i in range(n) for j in range(n) if i != j and e(i, j) not in simple]
    roots = simple + others
    R = RootDatum.build(n, roots, roots, f"GL{n}")
    return BasedRootDatum(R, tuple(range(n - 1)))


def special_linear_2() -> BasedRootDatum:
    return BasedRootDatum(RootDatum.build(1, [(2,), (-2,)], [(1,), (-1,)], "SL2"), (0,))


def projective_linear_2() -> BasedRootDatum:
    return BasedRootDatum(RootDatum.build(1, [(1,), (-1,)], [(2,), (-2,)], "PGL2"), (0,))


def torus(n: int) -> BasedRootDatum:
    return BasedRootDatum(RootDatum(n, (), (), f"T{n}"), ())


def direct_sum_based(B1: BasedRootDatum, B2: BasedRootDatum, name: str = "") -> BasedRootDatum:
    offset = len(B1.datum.roots)
    return BasedRootDatum(direct_sum(B1.datum, B2.datum, name),
                          B1.simple + tuple(offset + i for i in B2.simple))
