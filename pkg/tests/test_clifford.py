from fractions import Fraction

import pytest

from levikit.components import clifford
from levikit.components import perm_groups as pg
from levikit.components.characters import character_table
from levikit.utils import io_json
from levikit.utils.errors import InvalidInputError

PAIRS = [
    ("s3.json", "c3.json"),
    ("gl2f3.json", "sl2f3.json"),
    ("sl2f3.json", "q8.json"),
    ("q8.json", "z-q8.json"),
    ("s4.json", "v4.json"),
    ("s4.json", "a4-group.json"),
    ("d12.json", "c3-in-d12.json"),
]

ABELIAN_PAIRS = [
    ("s3.json", "c3.json"),
    ("gl2f3.json", "sl2f3.json"),
    ("s4.json", "a4-group.json"),
    ("d8.json", "c4.json"),
    ("q8.json", "z-q8.json"),
]


@pytest.fixture
def load(data_path):
    def loader(*names):
        return [io_json.load_group(data_path(name)) for name in names]
    return loader


@pytest.mark.parametrize("g_file,n_file", PAIRS)
def test_lemma_equivalence(load, g_file, n_file):
    G, N = load(g_file, n_file)
    for theta in character_table(N):
        report = clifford.verify_lemma_equivalence(G, N, theta)
        assert all(c["pass"] for c in report["checks"])
        assert report["multiplicity_free_constituent"] == report["extends_to_stabilizer"]


def test_q8_centre_is_a_non_extension_witness(load):
    G, N = load("q8.json", "z-q8.json")
    sign = next(theta for theta in character_table(N) if not theta.is_trivial())
    report = clifford.verify_lemma_equivalence(G, N, sign)
    assert report["stabilizer_order"] == 8
    assert not report["extends_to_stabilizer"]
    assert report["witnesses"] == []


def test_q8_in_sl2f3_stabilizers(load):
    G, N = load("sl2f3.json", "q8.json")
    orders = sorted(clifford.stabilizer_of_character(theta, G).order for theta in character_table(N))
    assert orders == [8, 8, 8, 24, 24]
    two = next(theta for theta in character_table(N) if theta.degree == 2)
    assert clifford.extension_exists(two, G).degree == 2
    assert len(clifford.orbit(character_table(N)[1], G)) == 3


@pytest.mark.parametrize("g_file,n_file", ABELIAN_PAIRS)
def test_abelian_lemma(load, g_file, n_file):
    G, N = load(g_file, n_file)
    assert clifford.is_abelian_quotient(G, N)
    for chi in character_table(G):
        report = clifford.verify_abelian_lemma(G, N, chi)
        assert all(c["pass"] for c in report["checks"])


def test_abelian_lemma_needs_abelian_quotient(load):
    G, N = load("s4.json", "v4.json")
    with pytest.raises(InvalidInputError):
        clifford.verify_abelian_lemma(G, N, character_table(G)[0])


def test_central_quotient(load):
    G, N, W = load("d12.json", "c3-in-d12.json", "w-d12.json")
    for theta in character_table(N):
        report = clifford.verify_central_quotient(G, N, W, theta)
        assert report["centralizer_order"] == 2
        assert report["stabilizer_order"] == 2 * report["quotient_stabilizer_order"]
        assert all(c["pass"] for c in report["checks"])


def test_multiplicity_free_restrictions(load):
    G, N = load("gl2f3.json", "sl2f3.json")
    assert clifford.check_multiplicity_free(G, N)["multiplicity_free"]
    chain = load("c3sq.json", "s3sq.json", "s3wrs2.json")
    report = clifford.check_multiplicity_free_chain(chain)
    assert report["multiplicity_free"]
    assert len(report["steps"]) == 2
    # the direct restriction is not multiplicity free
    direct = clifford.check_multiplicity_free(chain[2], chain[0])
    assert not direct["multiplicity_free"]


def test_inflation_along_a_quotient(small_groups):
    S4 = small_groups["S4"]
    V4 = S4.subgroup([(1, 0, 3, 2), (2, 3, 0, 1)], "V4")
    projection = pg.quotient_group(S4, V4)
    table = character_table(projection.target)
    inflated = [clifford.pullback(lam, projection) for lam in table]
    assert all(chi.is_irreducible() for chi in inflated)
    assert sorted(chi.degree for chi in inflated) == [1, 1, 2]
    with pytest.raises(InvalidInputError):
        clifford.induce(table[0], projection)
    assert clifford.restrict(table[0], projection).multiplicity_free


def test_non_normal_subgroup_is_rejected(small_groups):
    S3 = small_groups["S3"]
    H = S3.subgroup([(1, 0, 2)])
    with pytest.raises(InvalidInputError):
        clifford.verify_lemma_equivalence(S3, H, character_table(H)[0])


@pytest.mark.parametrize("g_file,n_file", PAIRS)
def test_restriction_constituents_form_one_orbit(load, g_file, n_file):
    G, N = load(g_file, n_file)
    table = character_table(N)
    for chi in character_table(G):
        multiplicities = table.decompose(clifford.restrict_to(chi, N))
        constituents = [theta for theta, m in zip(table, multiplicities) if m]
        assert len({m for m in multiplicities if m}) == 1
        orbit = clifford.orbit(constituents[0], G)
        assert len(orbit) == len(constituents)
        assert all(theta in constituents for theta in orbit)


@pytest.mark.parametrize("g_file,n_file", PAIRS)
def test_restricted_induction_sums_the_orbit(load, g_file, n_file):
    G, N = load(g_file, n_file)
    for theta in character_table(N):
        S = clifford.stabilizer_of_character(theta, G)
        orbit = clifford.orbit(theta, G)
        assert len(orbit) * S.order == G.order
        expected = sum(orbit[1:], orbit[0]) * Fraction(S.order, N.order)
        assert clifford.restrict_to(clifford.induce_from(theta, G), N) == expected


@pytest.mark.parametrize("g_file,n_file", PAIRS)
def test_frobenius_reciprocity_on_named_pairs(load, g_file, n_file):
    G, N = load(g_file, n_file)
    table = character_table(G)
    for theta in character_table(N):
        induced = clifford.induce_from(theta, G)
        for chi in table:
            assert induced.inner(chi) == theta.inner(clifford.restrict_to(chi, N))
