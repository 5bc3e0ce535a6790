"""
p-morphisms (f, q, tau) between root data.

A PMorphism with source R(G') and target R(G) stands for an isotypy
G -> G'. The lattice map goes the other way, f: X' -> X, and the data
satisfy f(tau(a)) = q(a) a and f^v(a^v) = q(a) tau(a)^v for every root a of G.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Matrix, eye, zeros
from sympy.ntheory import isprime, multiplicity

from .. import config
from ..utils.errors import InvalidInputError
from ..utils.lattice import (
    LatticeMap, cokernel, compose as compose_maps, identity, torsion_p_split, transpose,
)
from .root_datum import BasedRootDatum, RootDatum, adjoint, change_basis, choose_base, dual, require_valid

logger = logging.getLogger(__name__)


def _is_p_power(value: int, p: int) -> bool:
    if value < 1:
        return False
    while value % p == 0:
        value //= p
    return value == 1


@dataclass(frozen=True)
class PMorphism:
    source: RootDatum
    target: RootDatum
    f: LatticeMap
    p: int
    q: Tuple[int, ...]
    tau: Tuple[int, ...]

    def as_dict(self):
        return {
            "source": self.source.name, "target": self.target.name, "p": self.p,
            "matrix": self.f.rows(), "q": list(self.q), "tau": list(self.tau),
        }


@dataclass(frozen=True)
class IsotypyProfile:
    kernel_connected: bool
    kernel_finite: bool
    surjective: bool
    injective: bool

    def as_dict(self):
        return {
            "kernel_connected": self.kernel_connected,
            "kernel_finite": self.kernel_finite,
            "surjective": self.surjective,
            "injective": self.injective,
        }


def _check_prime(p: int):
    if not isprime(p):
        raise InvalidInputError(f"p = {p} is not a prime")


def _positive_multiple(v: Sequence[int], base: Sequence[int]) -> Optional[int]:
    """c >= 1 with v = c*base, else None."""
    k = next((i for i, x in enumerate(base) if x), None)
    if k is None or v[k] == 0:
        return None
    c = Fraction(v[k], base[k])
    if c.denominator != 1 or c <= 0:
        return None
    if any(a != c * b for a, b in zip(v, base)):
        return None
    return int(c)


def infer(f: LatticeMap, p: int, source: RootDatum, target: RootDatum) -> PMorphism:
    """Recover (q, tau) from f and check both defining identities."""
    _check_prime(p)
    if f.domain.rank != source.rank or f.codomain.rank != target.rank:
        raise InvalidInputError(
            f"matrix shape {f.matrix.shape} does not match X' of rank {source.rank} -> X of rank {target.rank}"
        )
    if len(source.roots) != len(target.roots):
        raise InvalidInputError(f"{len(target.roots)} roots cannot biject onto {len(source.roots)} roots")
    f_dual = transpose(f)
    q, tau = [], []
    for i, (alpha, alpha_check) in enumerate(zip(target.roots, target.coroots)):
        ray = f_dual.apply(alpha_check)
        match = None
        for j, beta_check in enumerate(source.coroots):
            c = _positive_multiple(ray, beta_check)
            if c is not None:
                match = (j, c)
                break
        if match is None:
            raise InvalidInputError(f"root {i} of the target: f^v(a^v) = {ray} lies on no source coroot ray")
        j, c = match
        if not _is_p_power(c, p):
            raise InvalidInputError(f"root {i} of the target: scalar {c} is not a power of {p}")
        if f.apply(source.roots[j]) != tuple(c * x for x in alpha):
            raise InvalidInputError(f"root {i} of the target: f(tau(a)) != q(a) a")
        q.append(c)
        tau.append(j)
    if len(set(tau)) != len(tau):
        raise InvalidInputError("tau is not a bijection")
    return PMorphism(source, target, f, p, tuple(q), tuple(tau))


def identity_pmorphism(R: RootDatum, p: int) -> PMorphism:
    _check_prime(p)
    n = len(R.roots)
    return PMorphism(R, R, identity(R.rank), p, (1,) * n, tuple(range(n)))


def compose(b: PMorphism, a: PMorphism) -> PMorphism:
    """Composite for the isotypies G -> G' (a) -> G'' (b); the lattice map is a.f after b.f."""
    if a.source != b.target:
        raise InvalidInputError("mismatched data: the source of the first map is not the target of the second")
    if a.p != b.p:
        raise InvalidInputError(f"mismatched primes {a.p} and {b.p}")
    tau = tuple(b.tau[a.tau[i]] for i in range(len(a.tau)))
    q = tuple(a.q[i] * b.q[a.tau[i]] for i in range(len(a.q)))
    return PMorphism(b.source, a.target, compose_maps(a.f, b.f), a.p, q, tau)


def classify(m: PMorphism) -> IsotypyProfile:
    ck = cokernel(m.f)
    ck_dual = cokernel(transpose(m.f))
    _, p_prime = torsion_p_split(ck, m.p)
    profile = IsotypyProfile(
        kernel_connected=not p_prime,
        kernel_finite=ck.is_finite,
        surjective=ck_dual.is_finite,
        injective=ck.is_finite and not p_prime,
    )
    logger.debug("coker f = %s, coker f^v = %s -> %s", ck, ck_dual, profile)
    return profile


def dual_pmorphism(m: PMorphism) -> PMorphism:
    inverse = [0] * len(m.tau)
    for i, j in enumerate(m.tau):
        inverse[j] = i
    return PMorphism(
        source=dual(m.target),
        target=dual(m.source),
        f=transpose(m.f),
        p=m.p,
        q=tuple(m.q[inverse[j]] for j in range(len(inverse))),
        tau=tuple(inverse),
    )


def corollary_consistent(m: PMorphism) -> bool:
    """Flags of m agree with the flags read off the dual morphism."""
    mine, theirs = classify(m), classify(dual_pmorphism(m))
    return (mine.kernel_connected == theirs.kernel_connected
            and mine.surjective == theirs.kernel_finite
            and mine.injective == (theirs.surjective and theirs.kernel_connected))


def change_basis_pmorphism(m: PMorphism, U_source, U_target) -> PMorphism:
    U_source, U_target = Matrix(U_source), Matrix(U_target)
    matrix = ImmutableMatrix(U_target * m.f.matrix * U_source.inv())
    f = LatticeMap(m.f.domain, m.f.codomain, matrix)
    return PMorphism(change_basis(m.source, U_source), change_basis(m.target, U_target), f, m.p, m.q, m.tau)


# -- Steinberg endomorphisms -----------------------------------------------------

SPLIT, TWISTED, VERY_TWISTED = "split", "twisted", "very_twisted"


@dataclass(frozen=True)
class SteinbergDatum:
    endo: PMorphism
    simple: Tuple[int, ...]
    kind: str
    frobenius_power: int
    exponent: int  # f^frobenius_power = p^exponent * identity

    @property
    def based(self) -> BasedRootDatum:
        return BasedRootDatum(self.endo.source, self.simple)

    def as_dict(self):
        return {
            "kind": self.kind, "p": self.endo.p,
            "frobenius_power": self.frobenius_power, "exponent": self.exponent,
            "tau": list(self.endo.tau), "q": list(self.endo.q),
        }


def classify_steinberg(m: PMorphism, simple: Optional[Sequence[int]] = None,
                       bound: int = config.STEINBERG_POWER_BOUND) -> SteinbergDatum:
    if m.source != m.target:
        raise InvalidInputError("a Steinberg endomorphism needs source = target")
    simple = tuple(simple) if simple is not None else choose_base(m.source)
    if {m.tau[i] for i in simple} != set(simple):
        raise InvalidInputError("tau does not preserve the simple roots")
    profile = classify(m)
    if not (profile.injective and profile.surjective):
        raise InvalidInputError(f"endomorphism is not bijective on the group: {profile.as_dict()}")
    for k in range(1, bound + 1):
        c = m.f.power(k).is_scalar()
        if c is not None and c > 1 and _is_p_power(c, m.p):
            exponent = multiplicity(m.p, c)
            constant_q = len(set(m.q)) <= 1
            if not constant_q:
                kind = VERY_TWISTED
            elif any(t != i for i, t in enumerate(m.tau)):
                kind = TWISTED
            else:
                kind = SPLIT
            logger.info("Steinberg endomorphism: f^%d = %d^%d, kind %s", k, m.p, exponent, kind)
            return SteinbergDatum(m, simple, kind, k, exponent)
    raise InvalidInputError(f"not Steinberg-like: no power f^k with k <= {bound} is a p-power scalar")


def diagram_lattice_map(B: BasedRootDatum, sigma: Sequence[int]) -> LatticeMap:
    """
    The lattice automorphism moving simple root k to simple root sigma[k]
    (positions in B.simple) and fixing the common kernel of the coroots.
    """
    R = B.datum
    n = len(B.simple)
    if sorted(sigma) != list(range(n)):
        raise InvalidInputError(f"{list(sigma)} is not a permutation of the simple roots")
    cartan = B.cartan_matrix()
    if any(cartan[sigma[a]][sigma[b]] != cartan[a][b] for a in range(n) for b in range(n)):
        raise InvalidInputError("permutation is not a Dynkin diagram automorphism")
    coroot_rows = Matrix([list(R.coroots[i]) for i in B.simple]) if n else zeros(0, R.rank)
    kernel = coroot_rows.nullspace() if n else [eye(R.rank).col(k) for k in range(R.rank)]
    sources = [Matrix(list(R.roots[i])) for i in B.simple] + list(kernel)
    targets = [Matrix(list(R.roots[B.simple[sigma[k]]])) for k in range(n)] + list(kernel)
    if not sources:
        return identity(0)
    M = Matrix.hstack(*targets) * Matrix.hstack(*sources).inv()
    if any(not x.is_Integer for x in M):
        raise InvalidInputError("the diagram automorphism does not preserve the lattice")
    return LatticeMap.from_matrix(M)


def diagram_steinberg(B: BasedRootDatum, sigma: Sequence[int], p: int) -> SteinbergDatum:
    """The Steinberg endomorphism p * sigma for a diagram automorphism sigma."""
    M = diagram_lattice_map(B, sigma)
    f = LatticeMap(M.domain, M.codomain, ImmutableMatrix(p * M.matrix))
    return classify_steinberg(infer(f, p, B.datum, B.datum), B.simple)


# prime, diagram involution, short simple roots (Bourbaki positions)
SPECIAL_ISOGENIES = {
    ("B", 2): (2, (1, 0), (1,)),
    ("G", 2): (3, (1, 0), (0,)),
    ("F", 4): (2, (3, 2, 1, 0), (2, 3)),
}


def special_isogeny(family: str, rank: int) -> PMorphism:
    """
    The exceptional isogeny of the adjoint datum of type B2, G2 or F4 that
    swaps long and short roots: f(a_sigma(i)) = q_i a_i with q_i = p on short
    simple roots and 1 on long ones.
    """
    if (family, rank) not in SPECIAL_ISOGENIES:
        raise InvalidInputError(f"no special isogeny for {family}{rank}")
    p, sigma, short = SPECIAL_ISOGENIES[(family, rank)]
    B = adjoint(family, rank)
    M = zeros(rank, rank)
    for i in range(rank):
        M[i, sigma[i]] = p if i in short else 1
    m = infer(LatticeMap.from_matrix(M), p, B.datum, B.datum)
    logger.debug("special isogeny of %s at p = %d: q = %s", B.name, p, m.q)
    return m


# -- factorization ------------------------------------------------------------------

def factor_isotypy(m: PMorphism) -> Tuple[PMorphism, PMorphism, PMorphism]:
    """
    Split m as psi2, psi, psi1 with f = f_psi1 . f_psi . f_psi2, psi2 and psi1
    surjective with connected kernel and psi injective.
    """
    if classify(m).injective:
        return identity_pmorphism(m.source, m.p), m, identity_pmorphism(m.target, m.p)

    source, target = m.source, m.target
    n_src, n_tgt = source.rank, target.rank
    scale = max(m.q, default=1)
    inverse_tau = {j: i for i, j in enumerate(m.tau)}
    zero_tgt = (0,) * n_tgt

    roots = [root + zero_tgt for root in source.roots]
    coroots = []
    for j, coroot in enumerate(source.coroots):
        i = inverse_tau[j]
        factor = scale // m.q[i]
        coroots.append(coroot + tuple(factor * x for x in target.coroots[i]))
    middle = RootDatum.build(n_src + n_tgt, roots, coroots,
                             f"{source.name or 'X1'}+{target.name or 'X'}")
    require_valid(middle)

    inclusion = Matrix.vstack(eye(n_src), zeros(n_tgt, n_src))
    folding = Matrix.hstack(Matrix(m.f.matrix), scale * eye(n_tgt))
    psi2 = infer(LatticeMap.from_matrix(inclusion), m.p, source, middle)
    psi = infer(LatticeMap.from_matrix(folding), m.p, middle, target)
    psi1 = identity_pmorphism(target, m.p)
    logger.info("factored isotypy through a middle lattice of rank %d (scale %d)", middle.rank, scale)
    return psi2, psi, psi1


def recompose(psi2: PMorphism, psi: PMorphism, psi1: PMorphism) -> PMorphism:
    return compose(compose(psi2, psi), psi1)
