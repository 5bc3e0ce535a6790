"""
Weyl groups realized as permutation groups of the root list.

An element w is the tuple of root indices with w[i] = index of w(root i);
products compose right to left, so (u * v)(a) = u(v(a)).
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher
from sympy import Matrix

from .. import config
from ..utils.errors import CapExceededError, ClaimFalsifiedError, InvalidInputError
from ..utils.lattice import LatticeMap
from .isotypy import SteinbergDatum
from .root_datum import BasedRootDatum, _valid_family_rank, standard_cartan_matrix

logger = logging.getLogger(__name__)

WeylElement = Tuple[int, ...]


def mul(u: WeylElement, v: WeylElement) -> WeylElement:
    return tuple(u[i] for i in v)


def inverse(w: WeylElement) -> WeylElement:
    out = [0] * len(w)
    for i, j in enumerate(w):
        out[j] = i
    return tuple(out)


def conjugate(w: WeylElement, x: WeylElement) -> WeylElement:
    """w x w^-1"""
    return mul(mul(w, x), inverse(w))


def element_order(w: WeylElement) -> int:
    identity = tuple(range(len(w)))
    power, k = w, 1
    while power != identity:
        power = mul(power, w)
        k += 1
    return k


def closure(generators: Iterable[WeylElement], degree: int, cap: int = config.WEYL_ORDER_CAP) -> List[WeylElement]:
    identity = tuple(range(degree))
    generators = list(generators)
    seen = {identity}
    elements = [identity]
    queue = deque([identity])
    while queue:
        w = queue.popleft()
        for s in generators:
            ws = mul(w, s)
            if ws not in seen:
                seen.add(ws)
                elements.append(ws)
                if len(elements) > cap:
                    raise CapExceededError(f"group order exceeds the cap {cap}")
                queue.append(ws)
    return elements


class WeylGroup:
    def __init__(self, based: BasedRootDatum, cap: int = config.WEYL_ORDER_CAP):
        self.based = based
        self.datum = based.datum
        self.degree = len(self.datum.roots)
        self.identity: WeylElement = tuple(range(self.degree))
        perms = self.datum.reflection_permutations
        self.reflections: Dict[int, WeylElement] = {i: perms[i] for i in range(self.degree)}
        self.generators: Dict[int, WeylElement] = {i: perms[i] for i in based.simple}
        self.elements: List[WeylElement] = closure(self.generators.values(), self.degree, cap)
        self.element_set: FrozenSet[WeylElement] = frozenset(self.elements)
        logger.info("generated Weyl group of %s: order %d", self.datum.name or "datum", len(self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, w: WeylElement) -> bool:
        return w in self.element_set

    def length(self, w: WeylElement) -> int:
        is_positive = self.based.is_positive
        return sum(1 for i in self.based.positive if not is_positive[w[i]])

    def parabolic(self, subset: Sequence[int]) -> List[WeylElement]:
        return closure([self.generators[i] for i in subset], self.degree)

    def matrix(self, w: WeylElement) -> LatticeMap:
        """Matrix action on X: determined on the span of the roots, identity on the coroot annihilator."""
        R = self.datum
        simple = list(self.based.simple)
        kernel = Matrix([list(R.coroots[i]) for i in simple]).nullspace() if simple else \
            [Matrix.eye(R.rank).col(k) for k in range(R.rank)]
        sources = [Matrix(list(R.roots[i])) for i in simple] + list(kernel)
        targets = [Matrix(list(R.roots[w[i]])) for i in simple] + list(kernel)
        if not sources:
            return LatticeMap.from_rows([], 0)
        return LatticeMap.from_matrix(Matrix.hstack(*targets) * Matrix.hstack(*sources).inv())


def generate(B: BasedRootDatum, cap: int = config.WEYL_ORDER_CAP) -> WeylGroup:
    return WeylGroup(B, cap)


def longest_element(W: WeylGroup, subset: Sequence[int]) -> WeylElement:
    """The element of W_J sending every positive root of Phi_J to a negative root."""
    for j in subset:
        if j not in W.generators:
            raise InvalidInputError(f"root {j} is not simple")
    is_positive = W.based.is_positive
    w = W.identity
    while True:
        # extend w by s_j while that increases the length
        step = next((j for j in subset if is_positive[w[j]]), None)
        if step is None:
            return w
        w = mul(w, W.generators[step])


@dataclass
class NormalizerDecomposition:
    normalizer: List[WeylElement]  # N_W(W_I)
    parabolic: List[WeylElement]  # W_I
    stabilizer: List[WeylElement]  # N_W(I)
    check: bool

    def orders(self):
        return {"N_W(W_I)": len(self.normalizer), "W_I": len(self.parabolic), "N_W(I)": len(self.stabilizer)}


def _normalizes(w, generators, group_set) -> bool:
    return all(conjugate(w, g) in group_set for g in generators)


def _stabilizes_set(w, subset) -> bool:
    return {w[i] for i in subset} == set(subset)


def semidirect_check(normal: Sequence[WeylElement], complement: Sequence[WeylElement],
                     whole: Sequence[WeylElement], identity: WeylElement) -> Dict[str, bool]:
    complement_set = set(complement)
    whole_set = set(whole)
    products = {mul(u, v) for u in normal for v in complement}
    return {
        "trivial intersection": [w for w in normal if w in complement_set] == [identity],
        "order factorization": len(normal) * len(complement) == len(whole),
        "product covering": products == whole_set,
    }


def normalizer_decomposition(W: WeylGroup, subset: Sequence[int]) -> NormalizerDecomposition:
    parabolic = W.parabolic(subset)
    parabolic_set = set(parabolic)
    simple_reflections = [W.generators[i] for i in subset]
    normalizer = [w for w in W.elements if _normalizes(w, simple_reflections, parabolic_set)]
    stabilizer = [w for w in W.elements if _stabilizes_set(w, subset)]
    checks = semidirect_check(parabolic, stabilizer, normalizer, W.identity)
    result = NormalizerDecomposition(normalizer, parabolic, stabilizer, all(checks.values()))
    if not result.check:
        raise ClaimFalsifiedError(
            f"parabolic normalizer does not split for I = {list(subset)}",
            {"I": list(subset), "orders": result.orders(),
             "checks": [{"name": k, "pass": v} for k, v in checks.items()]},
        )
    return result


# -- twisting ---------------------------------------------------------------------

@dataclass
class TwistAutomorphism:
    tau: WeylElement
    weyl: WeylGroup
    _inverse: WeylElement = field(init=False, repr=False)

    def __post_init__(self):
        self._inverse = inverse(self.tau)

    def __call__(self, w: WeylElement) -> WeylElement:
        return mul(mul(self.tau, w), self._inverse)

    def is_identity(self) -> bool:
        return self.tau == self.weyl.identity

    def simple_orbits(self) -> List[Tuple[int, ...]]:
        """tau-orbits on the simple roots, labelled and ordered by position in the base."""
        simple = self.weyl.based.simple
        position = {s: k for k, s in enumerate(simple)}
        seen, orbits = set(), []
        for s in simple:
            if s in seen:
                continue
            orbit, t = [], s
            while t not in orbit:
                orbit.append(t)
                t = self.tau[t]
            seen.update(orbit)
            orbits.append(tuple(sorted(orbit, key=position.get)))
        return orbits


def twist_from_permutation(W: WeylGroup, tau: Sequence[int]) -> TwistAutomorphism:
    tau = tuple(tau)
    if sorted(tau) != list(range(W.degree)):
        raise InvalidInputError("tau is not a permutation of the roots")
    if {tau[i] for i in W.based.simple} != set(W.based.simple):
        raise InvalidInputError("tau does not preserve the simple roots")
    F = TwistAutomorphism(tau, W)
    for i, s in W.reflections.items():
        if F(s) != W.reflections[tau[i]]:
            raise InvalidInputError(f"tau does not normalize the reflection set (root {i})")
    return F


def twist(B: BasedRootDatum, S: SteinbergDatum, W: WeylGroup = None) -> TwistAutomorphism:
    if S.endo.source != B.datum:
        raise InvalidInputError("Steinberg datum belongs to a different root datum")
    if set(S.simple) != set(B.simple):
        raise InvalidInputError("Steinberg datum uses a different base")
    W = W if W is not None else generate(B)
    return twist_from_permutation(W, S.endo.tau)


def identity_twist(W: WeylGroup) -> TwistAutomorphism:
    return TwistAutomorphism(W.identity, W)


# -- Coxeter recognition ------------------------------------------------------------

def _coxeter_graph(matrix: Sequence[Sequence[int]], nodes: Sequence) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    for a, u in enumerate(nodes):
        for b, v in enumerate(nodes):
            if a < b and matrix[a][b] >= 3:
                graph.add_edge(u, v, weight=matrix[a][b])
    return graph


_BOND_ORDER = {0: 2, 1: 3, 2: 4, 3: 6}


def _standard_coxeter_matrix(family: str, n: int) -> List[List[int]]:
    cartan = standard_cartan_matrix(family, n)
    return [[1 if i == j else _BOND_ORDER[cartan[i][j] * cartan[j][i]] for j in range(n)] for i in range(n)]


def recognize_coxeter(matrix: Sequence[Sequence[int]]) -> str:
    """Type label of a finite Coxeter matrix; B and C share the label B."""
    n = len(matrix)
    if n == 0:
        return "1"
    graph = _coxeter_graph(matrix, list(range(n)))
    labels = []
    for component in sorted(nx.connected_components(graph), key=min):
        nodes = sorted(component)
        sub = [[matrix[a][b] for b in nodes] for a in nodes]
        labels.append(_recognize_irreducible(sub))
    return "x".join(labels)


def _recognize_irreducible(matrix: Sequence[Sequence[int]]) -> str:
    n = len(matrix)
    if n == 2 and matrix[0][1] not in (3, 4, 6):
        return f"I2({matrix[0][1]})"
    graph = _coxeter_graph(matrix, list(range(n)))
    for family in "ABDEFG":
        if not _valid_family_rank(family, n):
            continue
        standard = _coxeter_graph(_standard_coxeter_matrix(family, n), list(range(n)))
        matcher = GraphMatcher(graph, standard, edge_match=lambda e1, e2: e1["weight"] == e2["weight"])
        if matcher.is_isomorphic():
            return f"{family}{n}"
    raise InvalidInputError(f"Coxeter matrix {matrix} is not of a recognized finite type")


@dataclass
class FixedPointCoxeter:
    elements: List[WeylElement]
    generators: Dict[Tuple[int, ...], WeylElement]
    coxeter_matrix: List[List[int]]
    coxeter_type: str

    @property
    def order(self) -> int:
        return len(self.elements)


def fixed_points(W: WeylGroup, F: TwistAutomorphism) -> FixedPointCoxeter:
    fixed = [w for w in W.elements if F(w) == w]
    orbits = F.simple_orbits()
    generators = {J: longest_element(W, J) for J in orbits}
    for J, g in generators.items():
        if F(g) != g or mul(g, g) != W.identity:
            raise ClaimFalsifiedError(f"w_J for the orbit {list(J)} is not an F-fixed involution")
    generated = set(closure(generators.values(), W.degree))
    if generated != set(fixed):
        raise ClaimFalsifiedError(
            "the orbit longest elements do not generate the fixed points",
            {"orders": {"W^F": len(fixed), "generated": len(generated)}},
        )
    gens = list(generators.values())
    matrix = [[element_order(mul(a, b)) for b in gens] for a in gens]
    result = FixedPointCoxeter(fixed, generators, matrix, recognize_coxeter(matrix))
    logger.info("W^F has order %d and type %s", result.order, result.coxeter_type)
    return result


# -- relative normalizers -----------------------------------------------------------------

def _require_tau_stable(F: TwistAutomorphism, subset: Sequence[int]):
    if {F.tau[i] for i in subset} != set(subset):
        raise InvalidInputError(f"I = {list(subset)} is not tau-stable")
    for i in subset:
        if i not in F.weyl.generators:
            raise InvalidInputError(f"root {i} is not simple")


def orbits_in(F: TwistAutomorphism, subset: Sequence[int]) -> List[Tuple[int, ...]]:
    inside = set(subset)
    return [J for J in F.simple_orbits() if set(J) <= inside]


def orbit_positive_roots(W: WeylGroup, J: Sequence[int]) -> FrozenSet[int]:
    """Positive roots of the subsystem spanned by J, as root indices."""
    is_positive = W.based.is_positive
    return frozenset(w[j] for w in W.parabolic(J) for j in J if is_positive[w[j]])


@dataclass
class RelativeNormalizerReport:
    subset: Tuple[int, ...]
    fixed: FixedPointCoxeter
    stabilizer: List[WeylElement]  # N_{W^F}(I)
    orbit_stabilizer: List[WeylElement]  # N_{W^F}(I, tau)
    normalizer: List[WeylElement]  # N_{W^F}(W_I)
    fixed_normalizer: List[WeylElement]  # N_{W^F}(W_I^F)
    parabolic_fixed: List[WeylElement]  # W_I^F
    checks: Dict[str, bool]

    def as_dict(self):
        return {
            "I": list(self.subset),
            "orders": {
                "W^F": self.fixed.order,
                "W_I^F": len(self.parabolic_fixed),
                "N_WF(I)": len(self.stabilizer),
                "N_WF(I,tau)": len(self.orbit_stabilizer),
                "N_WF(W_I)": len(self.normalizer),
                "N_WF(W_I^F)": len(self.fixed_normalizer),
            },
            "coxeter_type": self.fixed.coxeter_type,
            "checks": [{"name": k, "pass": v} for k, v in self.checks.items()],
        }


def relative_normalizers(W: WeylGroup, F: TwistAutomorphism, subset: Sequence[int],
                         fixed: FixedPointCoxeter = None) -> RelativeNormalizerReport:
    _require_tau_stable(F, subset)
    fixed = fixed if fixed is not None else fixed_points(W, F)
    subset = tuple(subset)
    orbit_elements = [longest_element(W, J) for J in orbits_in(F, subset)]

    parabolic = W.parabolic(subset)
    parabolic_set = set(parabolic)
    fixed_set = set(fixed.elements)
    parabolic_fixed = [w for w in parabolic if w in fixed_set]
    parabolic_fixed_set = set(parabolic_fixed)
    simple_reflections = [W.generators[i] for i in subset]

    stabilizer = [w for w in fixed.elements if _stabilizes_set(w, subset)]
    orbit_positives = [orbit_positive_roots(W, J) for J in orbits_in(F, subset)]
    orbit_positive_set = set(orbit_positives)
    orbit_stabilizer = [w for w in fixed.elements
                        if all(frozenset(w[i] for i in P) in orbit_positive_set for P in orbit_positives)]
    normalizer = [w for w in fixed.elements if _normalizes(w, simple_reflections, parabolic_set)]
    fixed_normalizer = [w for w in fixed.elements if _normalizes(w, parabolic_fixed, parabolic_fixed_set)]

    checks = {
        "W_I^F generated by orbit longest elements": set(closure(orbit_elements, W.degree)) == parabolic_fixed_set,
        "N_WF(I) = N_WF(I,tau)": set(stabilizer) == set(orbit_stabilizer),
        "N_WF(W_I^F) = N_WF(W_I)": set(fixed_normalizer) == set(normalizer),
    }
    for name, ok in semidirect_check(parabolic_fixed, stabilizer, normalizer, W.identity).items():
        checks[f"N_WF(W_I) = W_I^F x N_WF(I): {name}"] = ok

    report = RelativeNormalizerReport(subset, fixed, stabilizer, orbit_stabilizer, normalizer,
                                      fixed_normalizer, parabolic_fixed, checks)
    if not all(checks.values()):
        raise ClaimFalsifiedError(f"relative normalizer identities fail for I = {list(subset)}", report.as_dict())
    return report


def tau_stable_subsets(F: TwistAutomorphism) -> List[Tuple[int, ...]]:
    """All unions of tau-orbits on the base, as sorted index tuples."""
    orbits = F.simple_orbits()
    position = {s: k for k, s in enumerate(F.weyl.based.simple)}
    subsets = []
    for mask in range(1 << len(orbits)):
        chosen = [s for k, J in enumerate(orbits) if mask >> k & 1 for s in J]
        subsets.append(tuple(sorted(chosen, key=position.get)))
    return subsets
