"""
Wreath decomposition of the relative Weyl group N_{W^F}(I) of a standard Levi.

W_I^F splits into irreducible Coxeter components; N_{W^F}(I) permutes the
components and acts on each by diagram automorphisms. Components with the
same (type, twist) form a class, giving one factor (H ⋊ A) ≀ S_n per class.
"""

import logging
from dataclasses import dataclass, field
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from ..utils.errors import ClaimFalsifiedError
from .isotypy import SteinbergDatum
from .root_datum import BasedRootDatum, classify, pairing
from .weyl import (
    WeylGroup, closure, conjugate, element_order, fixed_points, generate, identity_twist,
    longest_element, mul, orbits_in, recognize_coxeter, twist, _require_tau_stable,
)

logger = logging.getLogger(__name__)


@dataclass
class LeviComponent:
    nodes: Tuple[int, ...]
    type_label: str
    twist: int
    fixed_type: str  # Coxeter type of the F-fixed points of the component's Weyl group

    @property
    def type_with_twist(self) -> str:
        return self.type_label if self.twist == 1 else f"{self.type_label}^{self.twist}"


@dataclass
class LeviClass:
    type_label: str
    twist: int
    fixed_type: str
    autos: int  # order of the automorphism group realized by N_{W^F}(I)
    diagram_autos: int  # order of all diagram automorphisms commuting with tau
    members: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.members)

    def as_dict(self):
        return {"type": self.type_label, "twist": self.twist, "fixed_type": self.fixed_type, "autos": self.autos,
                "diagram_autos": self.diagram_autos, "n": self.n, "members": list(self.members)}


@dataclass
class LeviDecomposition:
    subset: Tuple[int, ...]
    components: List[LeviComponent]
    classes: List[LeviClass]
    centralizer_order: int
    relative_order: int
    action: Dict[Tuple[int, ...], Tuple] = field(repr=False)
    checks: Dict[str, bool] = field(default_factory=dict)

    def as_dict(self):
        return {
            "I": list(self.subset),
            "components": [{"nodes": list(c.nodes), "type": c.type_label, "twist": c.twist,
                            "fixed_type": c.fixed_type} for c in self.components],
            "classes": [c.as_dict() for c in self.classes],
            "centralizer_order": self.centralizer_order,
            "relative_order": self.relative_order,
            "wreath_shape": [list(t) for t in wreath_shape(self)],
            "checks": [{"name": k, "pass": v} for k, v in self.checks.items()],
        }


def _component_graph(B: BasedRootDatum, tau: Sequence[int], nodes: Sequence[int]) -> nx.DiGraph:
    R = B.datum
    graph = nx.DiGraph()
    graph.add_nodes_from(nodes)
    for u in nodes:
        for v in nodes:
            weight = pairing(R.roots[u], R.coroots[v]) if u != v else 0
            twisted = tau[u] == v
            if weight or twisted:
                graph.add_edge(u, v, weight=weight, tau=twisted)
    return graph


def _edges_match(e1, e2):
    return e1["weight"] == e2["weight"] and e1["tau"] == e2["tau"]


def _permutation_order(tau: Sequence[int], nodes: Sequence[int]) -> int:
    order, seen = 1, set()
    for s in nodes:
        if s in seen:
            continue
        length, t = 0, s
        while True:
            seen.add(t)
            t = tau[t]
            length += 1
            if t == s:
                break
        order = lcm(order, length)
    return order


def decompose(B: BasedRootDatum, subset: Sequence[int], S: Optional[SteinbergDatum] = None,
              W: Optional[WeylGroup] = None) -> LeviDecomposition:
    W = W if W is not None else generate(B)
    F = twist(B, S, W) if S is not None else identity_twist(W)
    _require_tau_stable(F, subset)
    position = {s: k for k, s in enumerate(B.simple)}
    subset = tuple(sorted(subset, key=position.get))
    fixed = fixed_points(W, F)
    relative = [w for w in fixed.elements if {w[i] for i in subset} == set(subset)]

    # components of the Coxeter diagram of W_I^F on its orbit generators
    orbits = orbits_in(F, subset)
    generators = {J: longest_element(W, J) for J in orbits}
    diagram = nx.Graph()
    diagram.add_nodes_from(orbits)
    for a in orbits:
        for b in orbits:
            if a != b and element_order(mul(generators[a], generators[b])) > 2:
                diagram.add_edge(a, b)
    component_nodes = sorted(
        (tuple(sorted((s for J in comp for s in J), key=position.get)) for comp in nx.connected_components(diagram)),
        key=lambda nodes: position[nodes[0]],
    )
    component_of = {s: k for k, comp in enumerate(component_nodes) for s in comp}
    coxeter_matrices = [
        [[element_order(mul(generators[a], generators[b])) for b in comp_orbits] for a in comp_orbits]
        for comp_orbits in ([J for J in orbits if component_of[J[0]] == k] for k in range(len(component_nodes)))
    ]
    fixed_types = [recognize_coxeter(matrix) for matrix in coxeter_matrices]
    components = [LeviComponent(nodes, classify(B, nodes).semisimple_label(), _permutation_order(F.tau, nodes),
                                fixed_type)
                  for nodes, fixed_type in zip(component_nodes, fixed_types)]

    # classes of isomorphic (diagram, tau) components with fixed identifications
    graphs = [_component_graph(B, F.tau, nodes) for nodes in component_nodes]
    class_reps: List[int] = []
    class_members: Dict[int, List[int]] = {}
    identification: Dict[int, Dict[int, int]] = {}  # rep node -> component node
    for k, graph in enumerate(graphs):
        for rep in class_reps:
            if (components[rep].type_label, components[rep].twist) != (components[k].type_label, components[k].twist):
                continue
            matcher = DiGraphMatcher(graphs[rep], graph, edge_match=_edges_match)
            if matcher.is_isomorphic():
                identification[k] = dict(matcher.mapping)
                class_members[rep].append(k)
                break
        else:
            class_reps.append(k)
            class_members[k] = [k]
            identification[k] = {s: s for s in component_nodes[k]}
    class_of = {k: rep for rep, members in class_members.items() for k in members}

    # the action of N_{W^F}(I) on components
    action = {}
    realized = {rep: set() for rep in class_reps}
    conjugation_consistent = True
    generator_of = {generators[J]: J for J in orbits}
    for w in relative:
        perm = []
        autos = []
        for k, nodes in enumerate(component_nodes):
            target = component_of[w[nodes[0]]]
            perm.append(target)
            rep = class_of[k]
            back = {v: u for u, v in identification[target].items()}
            rep_nodes = component_nodes[rep]
            auto = tuple(rep_nodes.index(back[w[identification[k][u]]]) for u in rep_nodes)
            autos.append(auto)
            realized[rep].add(auto)
            for J in orbits:
                if component_of[J[0]] != k:
                    continue
                image = generator_of.get(conjugate(w, generators[J]))
                if image is None or component_of[image[0]] != target:
                    conjugation_consistent = False
        action[w] = (tuple(perm), tuple(autos))

    identity_action = (tuple(range(len(components))),
                       tuple(tuple(range(len(component_nodes[class_of[k]]))) for k in range(len(components))))
    kernel = {w for w, a in action.items() if a == identity_action}
    centralizer = {w for w in relative if all(w[i] == i for i in subset)}
    image = set(action.values())

    classes = []
    for rep in class_reps:
        rep_nodes = component_nodes[rep]
        realized_group = closure(realized[rep], len(rep_nodes)) if rep_nodes else [()]
        full = DiGraphMatcher(graphs[rep], graphs[rep], edge_match=_edges_match)
        diagram_autos = sum(1 for _ in full.isomorphisms_iter())
        classes.append(LeviClass(components[rep].type_label, components[rep].twist,
                                 components[rep].fixed_type, len(realized_group), diagram_autos,
                                 tuple(class_members[rep])))
    classes.sort(key=lambda c: (c.type_label, c.twist, c.n))

    checks = {
        "components partition I": sum(len(c.nodes) for c in components) == len(subset),
        "components are irreducible Coxeter groups": all("x" not in label for label in fixed_types),
        "kernel of the action is the centralizer": kernel == centralizer,
        "|N| = |C| x |image|": len(relative) == len(centralizer) * len(image),
        "action preserves classes": all(class_of[perm[k]] == class_of[k]
                                        for perm, _ in image for k in range(len(components))),
        "automorphism orders divide 6": all(6 % c.autos == 0 for c in classes),
        "component action matches generator conjugation": conjugation_consistent,
    }
    decomposition = LeviDecomposition(subset, components, classes, len(centralizer), len(relative), action, checks)
    if not all(checks.values()):
        raise ClaimFalsifiedError(f"Levi normalizer decomposition fails for I = {list(subset)}",
                                  decomposition.as_dict())
    logger.info("I = %s: %d components, relative group order %d, centralizer order %d",
                list(subset), len(components), len(relative), len(centralizer))
    return decomposition


def wreath_shape(d: LeviDecomposition) -> List[Tuple[str, int, int]]:
    shape = [(c.type_label if c.twist == 1 else f"{c.type_label}^{c.twist}", c.autos, c.n) for c in d.classes]
    return sorted(shape, key=lambda t: (t[0], t[2]))
