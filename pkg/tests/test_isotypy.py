import numpy as np
import pytest
from sympy import Matrix, diag

from levikit.components import isotypy
from levikit.components import root_datum as rd
from levikit.utils import io_json
from levikit.utils.errors import InvalidInputError
from levikit.utils.lattice import LatticeMap, cokernel, torsion_p_split

from oracles import random_unimodular


def _flags(m):
    return isotypy.classify(m).as_dict()


@pytest.mark.parametrize("p,expected", [
    (2, {"kernel_connected": True, "kernel_finite": True, "surjective": True, "injective": True}),
    (3, {"kernel_connected": False, "kernel_finite": True, "surjective": True, "injective": False}),
])
def test_sl2_to_pgl2_matrix(data_path, p, expected):
    m = io_json.load_pmorphism(data_path("sl2-to-pgl2.json"), p)
    assert m.q == (1, 1)
    assert _flags(m) == expected
    assert isotypy.corollary_consistent(m)


def test_frobenius_is_bijective(data_path):
    m = io_json.load_pmorphism(data_path("sl2-frobenius.json"))
    assert m.q == (3, 3)
    assert all(_flags(m).values())
    assert isotypy.corollary_consistent(m)


def test_infer_rejects_non_p_power_scalars():
    B = rd.special_linear_2()
    with pytest.raises(InvalidInputError):
        isotypy.infer(LatticeMap.from_rows([[6]]), 3, B.datum, B.datum)
    with pytest.raises(InvalidInputError):
        isotypy.infer(LatticeMap.from_rows([[3]]), 4, B.datum, B.datum)


def test_dual_reverses_tau_and_transposes(data_path):
    m = io_json.load_pmorphism(data_path("d4-triality.json"))
    d = isotypy.dual_pmorphism(m)
    assert d.f.matrix == m.f.matrix.T
    assert all(m.tau[d.tau[j]] == j for j in range(len(d.tau)))
    assert isotypy.dual_pmorphism(d).f == m.f


@pytest.mark.parametrize("fixture,kind,power,exponent", [
    ("a2-flip.json", "twisted", 2, 2),
    ("a3-flip.json", "twisted", 2, 2),
    ("a5-split.json", "split", 1, 1),
    ("d4-triality.json", "twisted", 3, 3),
    ("d4-flip.json", "twisted", 2, 2),
    ("b2-special.json", "very_twisted", 2, 1),
    ("sl2-frobenius.json", "split", 1, 1),
])
def test_steinberg_kinds(data_path, fixture, kind, power, exponent):
    S = io_json.load_steinberg(data_path(fixture))
    assert S.kind == kind
    assert S.frobenius_power == power
    assert S.exponent == exponent


def test_diagram_steinberg_matches_the_shipped_flip(data_path):
    S = io_json.load_steinberg(data_path("a3-flip.json"))
    built = isotypy.diagram_steinberg(S.based, [2, 1, 0], 2)
    assert built.endo.f == S.endo.f
    assert built.kind == "twisted"


def test_non_steinberg_is_rejected(data_path):
    with pytest.raises(InvalidInputError):
        io_json.load_steinberg(data_path("sl2-to-pgl2.json"))


# -- factorization ---------------------------------------------------------------------

TYPES = [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3), ("C", 3)]


def _special_pmorphism(rng):
    """A special isogeny, sometimes dualized, padded by a torus scaled by a p'-number or 1."""
    family, rank = list(isotypy.SPECIAL_ISOGENIES)[int(rng.integers(len(isotypy.SPECIAL_ISOGENIES)))]
    m = isotypy.special_isogeny(family, rank)
    if rng.integers(2):
        m = isotypy.dual_pmorphism(m)
    scalar = int(rng.choice([1, 5, 7]))
    T = rd.torus(1).datum
    source, target = rd.direct_sum(m.source, T), rd.direct_sum(m.target, T)
    padded = isotypy.infer(LatticeMap.from_matrix(diag(Matrix(m.f.matrix), scalar)), m.p, source, target)
    n = source.rank
    return isotypy.change_basis_pmorphism(padded, random_unimodular(rng, n), random_unimodular(rng, n))


def _random_pmorphism(rng):
    if rng.integers(4) == 0:
        return _special_pmorphism(rng)
    family, rank = TYPES[int(rng.integers(len(TYPES)))]
    p = int(rng.choice([2, 3, 5]))
    power = p ** int(rng.integers(0, 2))
    sc = rd.simply_connected(family, rank).datum
    ad = rd.adjoint(family, rank).datum
    cartan = rd.standard_cartan_matrix(family, rank)
    kind = int(rng.integers(3))
    if kind == 0:
        # the isogeny onto the adjoint group: X(ad) is the root lattice inside X(sc)
        source, target, M = ad, sc, power * Matrix(cartan).T
    elif kind == 1:
        source, target, M = sc, sc, power * Matrix.eye(rank)
    else:
        source, target, M = ad, ad, power * Matrix.eye(rank)
    m = isotypy.infer(LatticeMap.from_matrix(M), p, source, target)
    return isotypy.change_basis_pmorphism(m, random_unimodular(rng, rank), random_unimodular(rng, rank))


def test_factor_isotypy_random():
    rng = np.random.default_rng(11)
    for _ in range(50):
        m = _random_pmorphism(rng)
        psi2, psi, psi1 = isotypy.factor_isotypy(m)
        back = isotypy.recompose(psi2, psi, psi1)
        assert back.f == m.f
        assert back.q == m.q and back.tau == m.tau
        outer = isotypy.classify(psi2), isotypy.classify(psi1)
        assert all(c.surjective and c.kernel_connected for c in outer)
        assert isotypy.classify(psi).injective
        assert isotypy.corollary_consistent(m)


def test_factor_injective_is_trivial(data_path):
    m = io_json.load_pmorphism(data_path("sl2-frobenius.json"))
    psi2, psi, psi1 = isotypy.factor_isotypy(m)
    assert psi is m
    assert psi2.f.is_scalar() == 1 and psi1.f.is_scalar() == 1


# -- special isogenies ------------------------------------------------------------

@pytest.mark.parametrize("family,rank", list(isotypy.SPECIAL_ISOGENIES))
def test_special_isogeny_scalars_and_cokernel(family, rank):
    m = isotypy.special_isogeny(family, rank)
    assert set(m.q) == {1, m.p}
    ck = cokernel(m.f)
    p_part, p_prime = torsion_p_split(ck, m.p)
    assert ck.is_finite and not p_prime
    assert p_part
    assert all(_flags(m).values())
    assert isotypy.corollary_consistent(m)


@pytest.mark.parametrize("family,rank", list(isotypy.SPECIAL_ISOGENIES))
def test_special_isogeny_is_very_twisted(family, rank):
    S = isotypy.classify_steinberg(isotypy.special_isogeny(family, rank), rd.adjoint(family, rank).simple)
    assert S.kind == isotypy.VERY_TWISTED
    assert S.frobenius_power == 2
    assert S.exponent == 1


def test_special_isogeny_of_b2_matches_the_shipped_map(data_path):
    shipped = io_json.load_pmorphism(data_path("b2-special.json"))
    assert isotypy.special_isogeny("B", 2).f.rows() == shipped.f.rows()


def test_special_isogeny_rejects_other_types():
    with pytest.raises(InvalidInputError):
        isotypy.special_isogeny("A", 2)


def test_factor_special_isogenies_random():
    rng = np.random.default_rng(23)
    for _ in range(30):
        m = _special_pmorphism(rng)
        assert len(set(m.q)) == 2
        psi2, psi, psi1 = isotypy.factor_isotypy(m)
        back = isotypy.recompose(psi2, psi, psi1)
        assert back.f == m.f
        assert back.q == m.q and back.tau == m.tau
        outer = isotypy.classify(psi2), isotypy.classify(psi1)
        assert all(c.surjective and c.kernel_connected for c in outer)
        assert isotypy.classify(psi).injective
        _, p_prime = torsion_p_split(cokernel(psi.f), m.p)
        assert cokernel(psi.f).is_finite and not p_prime
