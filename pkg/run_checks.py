#!/usr/bin/env python3
"""
Acceptance Checker Script - runs the twelve acceptance checks end to end
"""

import logging
import os
import sys
import time
from itertools import combinations

import numpy as np
import pandas as pd
from sympy import Matrix, diag

current_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(current_dir, 'src'))
sys.path.insert(0, os.path.join(current_dir, 'tests'))

from levikit import config  # noqa: E402
from levikit.components import clifford, isotypy, levi_normalizer, weyl, wreath  # noqa: E402
from levikit.components import perm_groups as pg  # noqa: E402
from levikit.components import root_datum as rd  # noqa: E402
from levikit.components.characters import character_table  # noqa: E402
from levikit.utils import io_json  # noqa: E402
from levikit.utils.errors import LevikitError  # noqa: E402
from levikit.utils.lattice import LatticeMap  # noqa: E402
from oracles import burnside_table, same_tables, weyl_order  # noqa: E402

logger = logging.getLogger(__name__)

DATA_DIR = os.path.join(current_dir, 'data')
SMALL_TYPES = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 3), ("D", 4)]


def data(*parts):
    return os.path.join(DATA_DIR, *parts)


def _subsets(simple):
    for k in range(len(simple) + 1):
        yield from combinations(simple, k)


def check_root_data():
    """Shipped constructors validate; mutated fixtures name their axiom"""
    shipped = [rd.special_linear_2(), rd.projective_linear_2(), rd.general_linear(2), rd.general_linear(3),
               rd.adjoint("G", 2), rd.adjoint("F", 4)]
    for family, rank in SMALL_TYPES:
        shipped += [rd.simply_connected(family, rank), rd.adjoint(family, rank)]
    ok = all(not rd.validate(B.datum) and not rd.validate_base(B) for B in shipped)
    print(f"   📊 {len(shipped)} shipped root data validated")

    expected = {"pairing-sl2.json": "(i)", "pairing-gl2.json": "(i)", "doubled-rank1.json": "(ii)",
                "doubled-rank2.json": "(ii)", "unstable-skew.json": "(iii)", "unstable-a2.json": "(iii)"}
    for name, axiom in expected.items():
        R, _ = io_json.load_rootdatum(data("mutated", name))
        axioms = {v.axiom for v in rd.validate(R)}
        if axioms != {axiom}:
            print(f"   ❌ {name}: expected {axiom}, got {sorted(axioms)}")
            ok = False
    return ok


def check_weyl_orders():
    """Generated Weyl orders equal the degree products"""
    ok = True
    for family, rank in [("A", 2), ("B", 2), ("G", 2), ("A", 3), ("D", 4), ("F", 4)]:
        order = weyl.generate(rd.adjoint(family, rank)).order
        print(f"   {family}{rank}: |W| = {order}")
        ok &= order == weyl_order(family, rank)
    return ok


def check_parabolic_normalizers():
    """N_W(W_I) = W_I x| N_W(I) for every subset in rank <= 4"""
    ok, count = True, 0
    for family, rank in SMALL_TYPES + [("G", 2), ("F", 4)]:
        B = rd.adjoint(family, rank)
        W = weyl.generate(B)
        for subset in _subsets(B.simple):
            d = weyl.normalizer_decomposition(W, subset)
            orders = d.orders()
            ok &= d.check and orders["N_W(W_I)"] == orders["W_I"] * orders["N_W(I)"]
            count += 1
    print(f"   📊 {count} parabolic subgroups checked")
    return ok


def check_twisted_fixed_points():
    """Fixed points of twisted Weyl groups"""
    ok = True
    for fixture, expected, order in [("a2-flip.json", "A1", 2), ("a3-flip.json", "B2", 8),
                                     ("a5-flip.json", "B3", 48), ("d4-triality.json", "G2", 12)]:
        S = io_json.load_steinberg(data(fixture))
        W = weyl.generate(S.based)
        fixed = weyl.fixed_points(W, weyl.twist(S.based, S, W))
        print(f"   {fixture}: W^F of type {fixed.coxeter_type}, order {fixed.order}")
        ok &= fixed.coxeter_type == expected and fixed.order == order
    return ok


def check_relative_normalizers():
    """N_WF(I) = N_WF(I, tau) and N_WF(W_I^F) = N_WF(W_I) for every tau-stable I"""
    count = 0
    cases = []
    for fixture in ("a3-flip.json", "a4-flip.json", "a5-flip.json", "d4-triality.json", "d4-flip.json"):
        S = io_json.load_steinberg(data(fixture))
        W = weyl.generate(S.based)
        cases.append((W, weyl.twist(S.based, S, W)))
    for family, rank in SMALL_TYPES:
        W = weyl.generate(rd.adjoint(family, rank))
        cases.append((W, weyl.identity_twist(W)))
    for W, F in cases:
        fixed = weyl.fixed_points(W, F)
        for subset in weyl.tau_stable_subsets(F):
            # raises ClaimFalsifiedError on failure
            weyl.relative_normalizers(W, F, subset, fixed)
            count += 1
    print(f"   📊 {count} tau-stable subsets checked")
    return True


def check_isotypy_matrix():
    """Classification flags of the rank-one isotypies, cross-checked through the dual"""
    expected = {
        2: {"kernel_connected": True, "kernel_finite": True, "surjective": True, "injective": True},
        3: {"kernel_connected": False, "kernel_finite": True, "surjective": True, "injective": False},
    }
    ok = True
    for p, flags in expected.items():
        m = io_json.load_pmorphism(data("sl2-to-pgl2.json"), p)
        ok &= isotypy.classify(m).as_dict() == flags and isotypy.corollary_consistent(m)
    frobenius = io_json.load_pmorphism(data("sl2-frobenius.json"))
    ok &= all(isotypy.classify(frobenius).as_dict().values()) and isotypy.corollary_consistent(frobenius)
    return ok


def _special_pmorphism(rng):
    """A special isogeny padded by a torus scaled by 1 or a p'-number."""
    family, rank = list(isotypy.SPECIAL_ISOGENIES)[int(rng.integers(len(isotypy.SPECIAL_ISOGENIES)))]
    m = isotypy.special_isogeny(family, rank)
    if rng.integers(2):
        m = isotypy.dual_pmorphism(m)
    T = rd.torus(1).datum
    M = diag(Matrix(m.f.matrix), int(rng.choice([1, 5, 7])))
    return isotypy.infer(LatticeMap.from_matrix(M), m.p, rd.direct_sum(m.source, T), rd.direct_sum(m.target, T))


def _random_pmorphism(rng):
    if rng.integers(4) == 0:
        return _special_pmorphism(rng)
    family, rank = [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3), ("C", 3)][int(rng.integers(7))]
    p = int(rng.choice([2, 3, 5]))
    power = p ** int(rng.integers(0, 2))
    sc, ad = rd.simply_connected(family, rank).datum, rd.adjoint(family, rank).datum
    if rng.integers(2):
        m = isotypy.infer(LatticeMap.from_matrix(power * Matrix(rd.standard_cartan_matrix(family, rank)).T),
                          p, ad, sc)
    else:
        m = isotypy.infer(LatticeMap.from_matrix(power * Matrix.eye(rank)), p, sc, sc)
    return m


def check_factorization(samples=50, seed=11):
    """Randomized p-morphisms, special isogenies included, factor as (connected kernel, injective, connected kernel)"""
    rng = np.random.default_rng(seed)
    ok = True
    for _ in range(samples):
        m = _random_pmorphism(rng)
        psi2, psi, psi1 = isotypy.factor_isotypy(m)
        back = isotypy.recompose(psi2, psi, psi1)
        outer = [isotypy.classify(psi2), isotypy.classify(psi1)]
        ok &= (back.f == m.f and back.q == m.q and back.tau == m.tau
               and all(c.surjective and c.kernel_connected for c in outer)
               and isotypy.classify(psi).injective)
    print(f"   📊 {samples} random factorizations")
    return ok


def check_character_tables():
    """Dixon tables agree with the Burnside eigenvector oracle"""
    groups = [pg.cyclic(2), pg.cyclic(6), pg.symmetric(3), pg.symmetric(4), pg.dihedral(8),
              pg.quaternion(), pg.special_linear_group(2, 3), pg.general_linear_group(2, 3)]
    ok = True
    for G in groups:
        table = character_table(G)
        agree = (table.rows_orthogonal() and table.columns_orthogonal()
                 and sum(d * d for d in table.degrees) == G.order
                 and same_tables([chi.values for chi in table], burnside_table(G)))
        print(f"   {G.name}: degrees {table.degrees} {'✅' if agree else '❌'}")
        ok &= agree
    return ok


def check_multiplicity_free():
    """GL2(3) over SL2(3), and the chain C3^2 in S3^2 in S3 wr S2"""
    G, N = io_json.load_group(data("gl2f3.json")), io_json.load_group(data("sl2f3.json"))
    chain = [io_json.load_group(data(name)) for name in ("c3sq.json", "s3sq.json", "s3wrs2.json")]
    return (clifford.check_multiplicity_free(G, N)["multiplicity_free"]
            and clifford.check_multiplicity_free_chain(chain)["multiplicity_free"])


def check_lemmas():
    """Extension criterion and abelian-quotient lemma on the fixture pairs"""
    pairs = [("s3.json", "c3.json"), ("gl2f3.json", "sl2f3.json"), ("sl2f3.json", "q8.json"),
             ("q8.json", "z-q8.json"), ("s4.json", "v4.json"), ("d12.json", "c3-in-d12.json")]
    ok = True
    for g_file, n_file in pairs:
        G, N = io_json.load_group(data(g_file)), io_json.load_group(data(n_file))
        for theta in character_table(N):
            report = clifford.verify_lemma_equivalence(G, N, theta)
            ok &= all(c["pass"] for c in report["checks"])
        if clifford.is_abelian_quotient(G, N):
            for chi in character_table(G):
                ok &= all(c["pass"] for c in clifford.verify_abelian_lemma(G, N, chi)["checks"])
    G, N = io_json.load_group(data("q8.json")), io_json.load_group(data("z-q8.json"))
    sign = next(theta for theta in character_table(N) if not theta.is_trivial())
    witness = clifford.verify_lemma_equivalence(G, N, sign)
    print(f"   Q8 over its centre: sign extends = {witness['extends_to_stabilizer']}")
    return ok and not witness["extends_to_stabilizer"]


def check_wreath():
    """Irreducibles of H^n extend to their stabilizers in (H x| A) wr S_n"""
    ok = True
    for h_file, a_file, n in [("c3.json", "c2-inv.json", 2), ("c3.json", "c2-inv.json", 3),
                              ("s3.json", "trivial-a.json", 2), ("c2sq.json", "c2-swap.json", 2)]:
        H = io_json.load_group(data(h_file))
        report = wreath.verify_wreath_theorem(H, io_json.load_automorphisms(data(a_file), H), n)
        print(f"   {h_file} with {a_file}, n = {n}: {report['status']}, "
              f"{len(report.get('characters', []))} characters")
        ok &= report["status"] == "verified"
    return ok


def check_pipeline():
    """A5 Levi with three A1 factors, then the wreath check for C2 and n = 3"""
    B = io_json.load_based(data("a5.json"))
    d = levi_normalizer.decompose(B, io_json.parse_subset("0,2,4", B.simple))
    shape = levi_normalizer.wreath_shape(d)
    print(f"   wreath shape {shape}")
    if shape != [("A1", 1, 3)]:
        return False
    _, autos, n = shape[0]
    report = wreath.verify_wreath_theorem(pg.cyclic(2), [], n)
    return autos == 1 and report["status"] == "verified"


CHECKS = [
    ("root data", check_root_data, 1),
    ("Weyl orders", check_weyl_orders, 10),
    ("parabolic normalizers", check_parabolic_normalizers, 60),
    ("twisted fixed points", check_twisted_fixed_points, 30),
    ("relative normalizers", check_relative_normalizers, 120),
    ("isotypy classification", check_isotypy_matrix, 1),
    ("isotypy factorization", check_factorization, 5),
    ("character tables", check_character_tables, 30),
    ("multiplicity-free restriction", check_multiplicity_free, 30),
    ("Clifford lemmas", check_lemmas, 60),
    ("wreath extension", check_wreath, 180),
    ("Levi to wreath pipeline", check_pipeline, 60),
]


def run_check(name, func, budget):
    print(f"\n🔍 {name}")
    start = time.perf_counter()
    try:
        passed = bool(func())
    except LevikitError as e:
        logger.error("%s: %s", name, e)
        passed = False
    elapsed = time.perf_counter() - start
    print(f"   {'✅' if passed else '❌'} {name} ({elapsed:.2f} s, budget {budget} s)")
    return {"check": name, "passed": passed, "seconds": round(elapsed, 2), "budget": budget}


def main():
    """Main function"""
    logging.basicConfig(level=config.CHECKS_LOG_LEVEL, format=config.LOG_FORMAT)
    print(f"🧮 {config.APP_NAME} {config.APP_VERSION} acceptance checks")
    print("=" * 50)

    results = pd.DataFrame([run_check(name, func, budget) for name, func, budget in CHECKS])
    results["within_budget"] = results["seconds"] <= results["budget"]

    print("\n📋 Summary")
    print(results.to_string(index=False))
    failed = int((~results["passed"]).sum())
    if failed:
        print(f"\n❌ {failed} of {len(results)} checks failed")
        return 1
    print(f"\n🎉 All {len(results)} checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
