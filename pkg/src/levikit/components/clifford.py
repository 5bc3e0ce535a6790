"""
Restriction, induction and Clifford theory for a normal subgroup N of G.

All checks run on exact character values. Verifiers return a report dict
and raise ClaimFalsifiedError when one of the asserted equivalences fails.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from ..utils.cyclotomic import CyclotomicNumber, canonical_key
from ..utils.errors import ClaimFalsifiedError, InvalidInputError
from .characters import Character, character_table
from .perm_groups import (
    GroupHomomorphism, PermGroup, SubgroupEmbedding, perm_conjugate, perm_inverse, perm_mul, quotient_group,
    require_normal,
)

logger = logging.getLogger(__name__)


@dataclass
class Restriction:
    character: Character
    multiplicities: List[Fraction]

    @property
    def multiplicity_free(self) -> bool:
        return all(m in (0, 1) for m in self.multiplicities)

    def as_dict(self):
        return {
            "values": canonical_key(self.character.values),
            "multiplicities": [str(m) for m in self.multiplicities],
            "multiplicity_free": self.multiplicity_free,
        }


def _checks(checks: Dict[str, bool]) -> List[dict]:
    return [{"name": name, "pass": ok} for name, ok in checks.items()]


def pullback(chi: Character, hom: GroupHomomorphism) -> Character:
    """chi composed with hom; inflation when hom is onto a quotient."""
    if chi.group != hom.target:
        raise InvalidInputError("character does not live on the target of the map")
    return Character(hom.source, [chi.values[t] for t in hom.fusion])


def restrict(chi: Character, hom: GroupHomomorphism) -> Restriction:
    character = pullback(chi, hom)
    return Restriction(character, character_table(hom.source).decompose(character))


def restrict_to(chi: Character, sub: PermGroup) -> Character:
    return pullback(chi, SubgroupEmbedding(sub, chi.group))


def induce(theta: Character, embedding: GroupHomomorphism) -> Character:
    """Frobenius formula: Ind(theta)(g_t) = |G| / (|H| |C_t|) * sum over fused classes of |D_s| theta(h_s)."""
    if theta.group != embedding.source:
        raise InvalidInputError("character does not live on the subgroup")
    if not embedding.is_injective:
        raise InvalidInputError("induction needs an injective map")
    G, H = embedding.target, embedding.source
    values = [CyclotomicNumber.rational(0) for _ in G.classes]
    for s, t in enumerate(embedding.fusion):
        values[t] = values[t] + theta.values[s] * H.classes[s].size
    return Character(G, [v * Fraction(G.order, H.order * G.classes[t].size) for t, v in enumerate(values)])


def induce_from(theta: Character, parent: PermGroup) -> Character:
    return induce(theta, SubgroupEmbedding(theta.group, parent))


# -- conjugation action on Irr(N) -----------------------------------------------------

def conjugate_character(theta: Character, g) -> Character:
    """(g.theta)(n) = theta(g^-1 n g)"""
    N = theta.group
    g_inv = perm_inverse(g)
    return Character(N, [theta(perm_conjugate(g_inv, rep)) for rep in N.representatives])


def stabilizer_of_character(theta: Character, G: PermGroup) -> PermGroup:
    N = theta.group
    require_normal(N, G)
    keep = []
    for g in G.elements:
        g_inv = perm_inverse(g)
        if all(theta(perm_conjugate(g_inv, rep)) == value for rep, value in zip(N.representatives, theta.values)):
            keep.append(g)
    S = G.subgroup_from_elements(keep, f"S_{G.name or 'G'}(theta)")
    logger.debug("stabilizer of %s in %s has order %d", theta, G.name, S.order)
    return S


def orbit(theta: Character, G: PermGroup) -> List[Character]:
    found: List[Character] = []
    for g in G.elements:
        image = conjugate_character(theta, g)
        if image not in found:
            found.append(image)
    return found


def extension_exists(theta: Character, S: PermGroup) -> Optional[Character]:
    """An irreducible character of S restricting to theta, if any."""
    require_normal(theta.group, S)
    embedding = SubgroupEmbedding(theta.group, S)
    for chi in character_table(S):
        if chi.degree == theta.degree and pullback(chi, embedding) == theta:
            return chi
    return None


def commutator(g, h):
    """g h g^-1 h^-1"""
    return perm_mul(perm_conjugate(g, h), perm_inverse(h))


def is_abelian_quotient(G: PermGroup, N: PermGroup) -> bool:
    return all(commutator(g, h) in N for g in G.generators for h in G.generators)


# -- lemma verification ------------------------------------------------------------------

def verify_lemma_equivalence(G: PermGroup, N: PermGroup, theta: Character) -> dict:
    """
    For irreducible theta of N: some irreducible of G restricts multiplicity
    freely with theta as a constituent iff theta extends to its stabilizer.
    """
    require_normal(N, G)
    if theta.group != N or not theta.is_irreducible():
        raise InvalidInputError("theta must be an irreducible character of N")
    embedding = SubgroupEmbedding(N, G)
    table_G = character_table(G)
    table_N = character_table(N)

    witnesses = []
    for k, chi in enumerate(table_G):
        res = restrict(chi, embedding)
        if res.multiplicity_free and res.character.inner(theta) == 1:
            witnesses.append(k)
    S = stabilizer_of_character(theta, G)
    extension = extension_exists(theta, S)
    checks = {"(i) iff (ii)": bool(witnesses) == (extension is not None),
              "stabilizer contains N": N.is_subgroup_of(S)}

    conjugates = orbit(theta, G)
    orbit_sum = None
    induced = None
    if extension is not None:
        orbit_sum = conjugates[0]
        for psi in conjugates[1:]:
            orbit_sum = orbit_sum + psi
        induced = induce_from(extension, G)
        checks["induced extension is irreducible"] = induced.is_irreducible()
        checks["restriction of the induced extension is the orbit sum"] = restrict_to(induced, N) == orbit_sum
        checks["orbit length is [G : S]"] = len(conjugates) * S.order == G.order

    for chi in table_G:
        res = restrict_to(chi, N)
        multiplicities = {res.inner(psi) for psi in conjugates}
        if len(multiplicities) > 1:
            checks["multiplicities are constant on the orbit"] = False
            break
    else:
        checks["multiplicities are constant on the orbit"] = True

    report = {
        "G": G.name, "N": N.name, "theta": canonical_key(theta.values),
        "theta_index": table_N.index(theta),
        "stabilizer_order": S.order,
        "multiplicity_free_constituent": bool(witnesses), "witnesses": witnesses,
        "extends_to_stabilizer": extension is not None,
        "extension": canonical_key(extension.values) if extension is not None else None,
        "induced": canonical_key(induced.values) if induced is not None else None,
        "checks": _checks(checks),
    }
    if not all(checks.values()):
        raise ClaimFalsifiedError("multiplicity-free/extension equivalence fails", report)
    logger.info("equivalence holds for theta = %s (stabilizer order %d)", theta, S.order)
    return report


def linear_characters_of_quotient(G: PermGroup, N: PermGroup) -> List[Character]:
    """Linear characters of G/N inflated to G, trivial first."""
    projection = quotient_group(G, N)
    return [pullback(lam, projection) for lam in character_table(projection.target) if lam.degree == 1]


def verify_abelian_lemma(G: PermGroup, N: PermGroup, chi: Character) -> dict:
    """
    For G/N abelian and chi irreducible: Res chi is irreducible iff it is
    multiplicity free and lambda * chi != chi for all nontrivial lambda of G/N.
    """
    require_normal(N, G)
    if not is_abelian_quotient(G, N):
        raise InvalidInputError(f"{G.name}/{N.name} is not abelian")
    if chi.group != G or not chi.is_irreducible():
        raise InvalidInputError("chi must be an irreducible character of G")
    res = restrict(chi, SubgroupEmbedding(N, G))
    lambdas = linear_characters_of_quotient(G, N)[1:]
    fixing = [k for k, lam in enumerate(lambdas, start=1) if lam * chi == chi]
    irreducible = res.character.is_irreducible()
    right = res.multiplicity_free and not fixing
    checks = {"irreducible iff (multiplicity free and no twist fixes chi)": irreducible == right}
    report = {
        "G": G.name, "N": N.name, "chi": canonical_key(chi.values),
        "restriction": res.as_dict(),
        "restriction_irreducible": irreducible,
        "nontrivial_linear_characters": len(lambdas),
        "fixing_twists": fixing,
        "checks": _checks(checks),
    }
    if not all(checks.values()):
        raise ClaimFalsifiedError("abelian quotient lemma fails", report)
    return report


def verify_central_quotient(G: PermGroup, N: PermGroup, W: PermGroup, theta: Character) -> dict:
    """
    G = N x| W and C = C_W(N): C lies in S_G(theta), |S_G(theta)| = |C| |S_{G/C}(theta)|,
    and inflated extensions from the quotient extend theta.
    """
    require_normal(N, G)
    if not W.is_subgroup_of(G) or N.order * W.order != G.order or \
            len(N.element_set & W.element_set) != 1:
        raise InvalidInputError(f"{G.name} is not the semidirect product of {N.name} and {W.name}")
    C_elements = [w for w in W.elements if all(perm_conjugate(w, n) == n for n in N.generators)]
    C = W.subgroup_from_elements(C_elements, f"C_{W.name}({N.name})")
    require_normal(C, G)
    projection = quotient_group(G, C)
    Q = projection.target
    N_bar = Q.subgroup([projection(n) for n in N.generators], f"{N.name}C/C")
    preimage = {projection(n): n for n in N.elements}
    theta_bar = Character(N_bar, [theta(preimage[rep]) for rep in N_bar.representatives])

    S = stabilizer_of_character(theta, G)
    S_bar = stabilizer_of_character(theta_bar, Q)
    checks = {
        "C centralizes N inside the stabilizer": all(c in S for c in C.elements),
        "|S| = |C| |S_bar|": S.order == C.order * S_bar.order,
    }
    extension_bar = extension_exists(theta_bar, S_bar)
    extension = extension_exists(theta, S)
    checks["extension exists upstairs iff downstairs"] = (extension is None) == (extension_bar is None)
    if extension_bar is not None:
        to_bar = GroupHomomorphism(S, S_bar, [projection(g) for g in S.generators])
        inflated = pullback(extension_bar, to_bar)
        checks["inflated extension restricts to theta"] = restrict_to(inflated, N) == theta
        checks["inflated extension is irreducible"] = inflated.is_irreducible()
    report = {
        "G": G.name, "N": N.name, "W": W.name, "centralizer_order": C.order,
        "stabilizer_order": S.order, "quotient_stabilizer_order": S_bar.order,
        "extends": extension is not None,
        "checks": _checks(checks),
    }
    if not all(checks.values()):
        raise ClaimFalsifiedError("central quotient reduction fails", report)
    return report


def check_multiplicity_free(G: PermGroup, N: PermGroup) -> dict:
    embedding = SubgroupEmbedding(N, G)
    table = character_table(G)
    failures = [k for k, chi in enumerate(table) if not restrict(chi, embedding).multiplicity_free]
    return {"group": G.name, "subgroup": N.name, "characters": len(table), "failures": failures,
            "multiplicity_free": not failures}


def check_multiplicity_free_chain(chain: Sequence[PermGroup]) -> dict:
    """chain = [N_0, N_1, ..., G], each normal in the next."""
    steps = []
    for sub, parent in zip(chain, chain[1:]):
        require_normal(sub, parent)
        steps.append(check_multiplicity_free(parent, sub))
    return {"steps": steps, "multiplicity_free": all(s["multiplicity_free"] for s in steps)}
