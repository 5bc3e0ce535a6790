from itertools import combinations

import pytest

from levikit.components import root_datum as rd
from levikit.components import weyl
from levikit.utils import io_json
from levikit.utils.errors import CapExceededError, InvalidInputError

from oracles import weyl_order

RANK_AT_MOST_4 = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2)]


def _subsets(simple):
    for k in range(len(simple) + 1):
        yield from combinations(simple, k)


@pytest.mark.parametrize("family,rank,order", [
    ("A", 2, 6), ("B", 2, 8), ("G", 2, 12), ("A", 3, 24), ("D", 4, 192), ("F", 4, 1152),
])
def test_orders_match_degree_products(family, rank, order):
    W = weyl.generate(rd.adjoint(family, rank))
    assert W.order == order == weyl_order(family, rank)


def test_orders_do_not_depend_on_the_lattice():
    for family, rank in RANK_AT_MOST_4:
        assert weyl.generate(rd.simply_connected(family, rank)).order == weyl_order(family, rank)


def test_cap_is_enforced():
    with pytest.raises(CapExceededError):
        weyl.generate(rd.adjoint("A", 4), cap=100)


def test_longest_element_length_and_matrix():
    B = rd.adjoint("B", 3)
    W = weyl.generate(B)
    w0 = weyl.longest_element(W, B.simple)
    assert W.length(w0) == len(B.positive)
    assert weyl.mul(w0, w0) == W.identity
    # w0 = -1 in type B
    assert W.matrix(w0).is_scalar() == -1


def test_element_helpers():
    W = weyl.generate(rd.adjoint("A", 2))
    s, t = (W.generators[i] for i in W.based.simple)
    assert weyl.element_order(weyl.mul(s, t)) == 3
    assert weyl.mul(s, weyl.inverse(s)) == W.identity
    assert weyl.conjugate(s, t) == weyl.mul(weyl.mul(s, t), s)


@pytest.mark.parametrize("family,rank", RANK_AT_MOST_4 + [("F", 4)])
def test_parabolic_normalizer_splits_for_every_subset(family, rank):
    B = rd.adjoint(family, rank)
    W = weyl.generate(B)
    for subset in _subsets(B.simple):
        d = weyl.normalizer_decomposition(W, subset)
        assert d.check
        orders = d.orders()
        assert orders["N_W(W_I)"] == orders["W_I"] * orders["N_W(I)"]


def test_normalizer_of_empty_and_full_subset():
    B = rd.adjoint("A", 3)
    W = weyl.generate(B)
    empty = weyl.normalizer_decomposition(W, ())
    assert empty.orders() == {"N_W(W_I)": 24, "W_I": 1, "N_W(I)": 24}
    full = weyl.normalizer_decomposition(W, B.simple)
    assert full.orders()["W_I"] == 24
    assert full.orders()["N_W(I)"] == 1


@pytest.mark.parametrize("fixture,coxeter_type,order", [
    ("a2-flip.json", "A1", 2),
    ("a3-flip.json", "B2", 8),
    ("a5-flip.json", "B3", 48),
    ("d4-triality.json", "G2", 12),
])
def test_twisted_fixed_points(data_path, fixture, coxeter_type, order):
    S = io_json.load_steinberg(data_path(fixture))
    W = weyl.generate(S.based)
    fixed = weyl.fixed_points(W, weyl.twist(S.based, S, W))
    assert fixed.coxeter_type == coxeter_type
    assert fixed.order == order
    assert len(fixed.generators) == len(weyl.twist(S.based, S, W).simple_orbits())


def test_identity_twist_fixes_everything():
    B = rd.adjoint("A", 3)
    W = weyl.generate(B)
    fixed = weyl.fixed_points(W, weyl.identity_twist(W))
    assert fixed.order == W.order
    assert fixed.coxeter_type == "A3"


@pytest.mark.parametrize("fixture", [
    "a2-flip.json", "a3-flip.json", "a4-flip.json", "a5-flip.json", "d4-triality.json", "d4-flip.json",
    "b2-special.json",
])
def test_relative_normalizer_identities_twisted(data_path, fixture):
    S = io_json.load_steinberg(data_path(fixture))
    W = weyl.generate(S.based)
    F = weyl.twist(S.based, S, W)
    fixed = weyl.fixed_points(W, F)
    subsets = weyl.tau_stable_subsets(F)
    assert len(subsets) == 2 ** len(F.simple_orbits())
    for subset in subsets:
        report = weyl.relative_normalizers(W, F, subset, fixed)
        assert all(report.checks.values())
        orders = report.as_dict()["orders"]
        assert orders["N_WF(I)"] == orders["N_WF(I,tau)"]
        assert orders["N_WF(W_I)"] == orders["N_WF(W_I^F)"]
        assert orders["N_WF(W_I)"] == orders["W_I^F"] * orders["N_WF(I)"]


@pytest.mark.parametrize("family,rank", RANK_AT_MOST_4)
def test_relative_normalizer_identities_untwisted(family, rank):
    W = weyl.generate(rd.adjoint(family, rank))
    F = weyl.identity_twist(W)
    fixed = weyl.fixed_points(W, F)
    for subset in weyl.tau_stable_subsets(F):
        assert all(weyl.relative_normalizers(W, F, subset, fixed).checks.values())


def test_subset_must_be_tau_stable(data_path):
    S = io_json.load_steinberg(data_path("a3-flip.json"))
    W = weyl.generate(S.based)
    F = weyl.twist(S.based, S, W)
    with pytest.raises(InvalidInputError):
        weyl.relative_normalizers(W, F, (S.based.simple[0],))


def test_recognize_coxeter():
    assert weyl.recognize_coxeter([[1, 3], [3, 1]]) == "A2"
    assert weyl.recognize_coxeter([[1, 5], [5, 1]]) == "I2(5)"
    assert weyl.recognize_coxeter([[1, 2], [2, 1]]) == "A1xA1"
    assert weyl.recognize_coxeter([]) == "1"


def test_orbit_stabilizer_excludes_centralizers_that_flip_the_orbit():
    B = rd.adjoint("A", 2)
    W = weyl.generate(B)
    F = weyl.identity_twist(W)
    a1 = B.simple[0]
    report = weyl.relative_normalizers(W, F, (a1,))
    orders = report.as_dict()["orders"]
    assert orders["N_WF(I)"] == orders["N_WF(I,tau)"] == 1
    # s1 commutes with w_J = s1 but sends a1 to -a1
    s1 = W.generators[a1]
    assert weyl.conjugate(s1, s1) == s1
    assert s1 not in report.orbit_stabilizer
    assert weyl.orbit_positive_roots(W, (a1,)) == frozenset({a1})


def test_orbit_positive_roots_of_a3_flip_orbit(data_path):
    S = io_json.load_steinberg(data_path("a3-flip.json"))
    W = weyl.generate(S.based)
    outer = weyl.twist(S.based, S, W).simple_orbits()
    sizes = sorted(len(weyl.orbit_positive_roots(W, J)) for J in outer)
    # {a1, a3} spans A1xA1, {a2} spans A1
    assert sizes == [1, 2]


@pytest.mark.parametrize("fixture", ["a3-flip.json", "d4-triality.json", "b2-special.json"])
def test_twist_is_a_group_automorphism(data_path, fixture):
    S = io_json.load_steinberg(data_path(fixture))
    W = weyl.generate(S.based)
    F = weyl.twist(S.based, S, W)
    for u in W.elements:
        for v in W.elements:
            assert F(weyl.mul(u, v)) == weyl.mul(F(u), F(v))
