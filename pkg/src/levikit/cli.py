"""
levikit command line.

Every subcommand prints one JSON document on stdout. Exit codes:
0 success, 1 invalid input, 2 a verified structural claim failed.
"""

import argparse
import logging
import sys
from typing import List, Optional, Tuple

from . import config
from .components import clifford, isotypy, levi_normalizer, weyl, wreath
from .components.characters import character_table
from .components.perm_groups import SubgroupEmbedding, conjugacy_classes
from .components.root_datum import BasedRootDatum, choose_base, classify, validate, validate_base
from .utils import io_json
from .utils.errors import ClaimFalsifiedError, InvalidInputError, LevikitError

logger = logging.getLogger(__name__)

Result = Tuple[dict, int]


# -- root data and Weyl groups -------------------------------------------------------------

def cmd_validate(args) -> Result:
    R, simple = io_json.load_rootdatum(args.file)
    violations = validate(R)
    report = {"name": R.name, "valid": not violations, "violations": [v.as_dict() for v in violations]}
    if violations:
        return report, 1
    B = BasedRootDatum(R, simple if simple is not None else choose_base(R))
    base_violations = validate_base(B)
    if base_violations:
        report.update(valid=False, violations=[v.as_dict() for v in base_violations])
        return report, 1
    report.update(simple=list(B.simple), cartan_type=classify(B).label, roots=len(R.roots))
    return report, 0


def _based_from(args):
    if getattr(args, "steinberg", None):
        S = io_json.load_steinberg(args.steinberg)
        return S.based, S
    if getattr(args, "file", None):
        return io_json.load_based(args.file), None
    raise InvalidInputError("a root datum file or --steinberg is required")


def cmd_weyl_order(args) -> Result:
    B, _ = _based_from(args)
    W = weyl.generate(B)
    return {"name": B.name, "cartan_type": classify(B).label, "order": W.order}, 0


def cmd_weyl_normalizer(args) -> Result:
    B, _ = _based_from(args)
    W = weyl.generate(B)
    subset = io_json.parse_subset(args.I, B.simple)
    d = weyl.normalizer_decomposition(W, subset)
    return {"I": list(subset), "orders": d.orders(), "checks": [{"name": "semidirect", "pass": d.check}]}, 0


def cmd_weyl_relative(args) -> Result:
    B, S = _based_from(args)
    W = weyl.generate(B)
    F = weyl.twist(B, S, W) if S is not None else weyl.identity_twist(W)
    if args.I is None:
        fixed = weyl.fixed_points(W, F)
        reports = [weyl.relative_normalizers(W, F, I, fixed).as_dict() for I in weyl.tau_stable_subsets(F)]
        return {"subsets": reports}, 0
    return weyl.relative_normalizers(W, F, io_json.parse_subset(args.I, B.simple)).as_dict(), 0


def cmd_steinberg_classify(args) -> Result:
    S = io_json.load_steinberg(args.file)
    return S.as_dict(), 0


def cmd_fixed(args) -> Result:
    B, S = _based_from(args)
    W = weyl.generate(B)
    F = weyl.twist(B, S, W)
    fixed = weyl.fixed_points(W, F)
    checks = {
        "orbit longest elements generate W^F":
            set(weyl.closure(fixed.generators.values(), W.degree)) == set(fixed.elements),
        "|W^F| divides |W|": W.order % fixed.order == 0,
    }
    payload = {
        "orders": {"W": W.order, "W^F": fixed.order},
        "coxeter_type": fixed.coxeter_type,
        "coxeter_matrix": fixed.coxeter_matrix,
        "checks": [{"name": name, "pass": ok} for name, ok in checks.items()],
    }
    if not all(checks.values()):
        raise ClaimFalsifiedError("fixed points of the twist fail their checks", payload)
    return payload, 0


def cmd_levi_decompose(args) -> Result:
    B, S = _based_from(args)
    subset = io_json.parse_subset(args.I, B.simple)
    return levi_normalizer.decompose(B, subset, S).as_dict(), 0


# -- isotypies ---------------------------------------------------------------------------------

def cmd_isotypy_classify(args) -> Result:
    m = io_json.load_pmorphism(args.file, args.p)
    return isotypy.classify(m).as_dict(), 0


def cmd_isotypy_factor(args) -> Result:
    m = io_json.load_pmorphism(args.file, args.p)
    psi2, psi, psi1 = isotypy.factor_isotypy(m)
    recomposed = isotypy.recompose(psi2, psi, psi1)
    report = {
        "psi2": {**psi2.as_dict(), **isotypy.classify(psi2).as_dict()},
        "psi": {**psi.as_dict(), **isotypy.classify(psi).as_dict()},
        "psi1": {**psi1.as_dict(), **isotypy.classify(psi1).as_dict()},
        "recomposes": recomposed.f == m.f and recomposed.q == m.q and recomposed.tau == m.tau,
    }
    if not report["recomposes"]:
        raise ClaimFalsifiedError("factorization does not recompose to the input", report)
    return report, 0


def cmd_isotypy_dual(args) -> Result:
    m = io_json.load_pmorphism(args.file, args.p)
    d = isotypy.dual_pmorphism(m)
    consistent = isotypy.corollary_consistent(m)
    report = {"dual": d.as_dict(), "flags": isotypy.classify(d).as_dict(),
              "checks": [{"name": "flags agree through the dual", "pass": consistent}]}
    if not consistent:
        raise ClaimFalsifiedError("classification flags disagree with the dual morphism", report)
    return report, 0


# -- groups and characters --------------------------------------------------------------------

def cmd_group_classes(args) -> Result:
    G = io_json.load_group(args.file)
    return {"group": G.name, "order": G.order, "classes": [c.as_dict() for c in conjugacy_classes(G)]}, 0


def cmd_group_table(args) -> Result:
    G = io_json.load_group(args.file)
    return character_table(G).as_dict(), 0


def _pair(args):
    G = io_json.load_group(args.G)
    N = io_json.load_group(args.N)
    if N.degree != G.degree:
        raise InvalidInputError("N must act on the same points as G")
    return G, N


def _pick(table, k: int, flag: str):
    if not 0 <= k < len(table):
        raise InvalidInputError(f"{flag} {k} out of range for {len(table)} irreducible characters")
    return table[k]


def cmd_clifford_restrict(args) -> Result:
    G, N = _pair(args)
    chi = _pick(character_table(G), args.chi, "--chi")
    return clifford.restrict(chi, SubgroupEmbedding(N, G)).as_dict(), 0


def cmd_clifford_induce(args) -> Result:
    G, N = _pair(args)
    theta = _pick(character_table(N), args.theta, "--theta")
    induced = clifford.induce(theta, SubgroupEmbedding(N, G))
    table = character_table(G)
    return {"values": induced.as_dict()["values"], "multiplicities": [str(m) for m in table.decompose(induced)]}, 0


def cmd_clifford_stabilizer(args) -> Result:
    G, N = _pair(args)
    theta = _pick(character_table(N), args.theta, "--theta")
    S = clifford.stabilizer_of_character(theta, G)
    return {"stabilizer": S.as_dict(), "contains_N": N.is_subgroup_of(S), "index": G.order // S.order}, 0


def cmd_clifford_extend(args) -> Result:
    G, N = _pair(args)
    theta = _pick(character_table(N), args.theta, "--theta")
    S = clifford.stabilizer_of_character(theta, G)
    extension = clifford.extension_exists(theta, S)
    return {"stabilizer_order": S.order, "extends": extension is not None,
            "extension": extension.as_dict() if extension is not None else None}, 0


def cmd_clifford_lemma_equivalence(args) -> Result:
    G, N = _pair(args)
    theta = _pick(character_table(N), args.theta, "--theta")
    return clifford.verify_lemma_equivalence(G, N, theta), 0


def cmd_clifford_lemma_abelian(args) -> Result:
    G, N = _pair(args)
    chi = _pick(character_table(G), args.chi, "--chi")
    return clifford.verify_abelian_lemma(G, N, chi), 0


def cmd_clifford_central_quotient(args) -> Result:
    G, N = _pair(args)
    W = io_json.load_group(args.W)
    theta = _pick(character_table(N), args.theta, "--theta")
    return clifford.verify_central_quotient(G, N, W, theta), 0


def cmd_clifford_chain(args) -> Result:
    chain = [io_json.load_group(path) for path in args.files]
    return clifford.check_multiplicity_free_chain(chain), 0


def cmd_wreath_build(args) -> Result:
    base = io_json.load_group(args.base)
    G = wreath.wreath_product(base, args.n)
    return {**G.as_dict(), "classes": len(G.classes)}, 0


def cmd_wreath_verify(args) -> Result:
    H = io_json.load_group(args.H)
    automorphisms = io_json.load_automorphisms(args.A, H) if args.A else []
    report = wreath.verify_wreath_theorem(H, automorphisms, args.n)
    return report, 1 if report["status"] == "hypothesis violated" else 0


# -- parser ------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=config.APP_NAME, description=config.APP_DESCRIPTION)
    parser.add_argument("--log-level", default=config.LOG_LEVEL, help="logging level on stderr")
    parser.add_argument("--format", choices=["json"], default="json")
    parser.add_argument("--version", action="version", version=f"%(prog)s {config.APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the root datum axioms")
    p.add_argument("file")
    p.set_defaults(handler=cmd_validate)

    p_weyl = sub.add_parser("weyl", help="Weyl group computations").add_subparsers(dest="action", required=True)
    p = p_weyl.add_parser("order")
    p.add_argument("file", nargs="?")
    p.add_argument("--steinberg")
    p.set_defaults(handler=cmd_weyl_order)
    p = p_weyl.add_parser("normalizer")
    p.add_argument("file", nargs="?")
    p.add_argument("--steinberg")
    p.add_argument("--I", default="")
    p.set_defaults(handler=cmd_weyl_normalizer)
    p = p_weyl.add_parser("relative")
    p.add_argument("file", nargs="?")
    p.add_argument("--steinberg")
    p.add_argument("--I")
    p.set_defaults(handler=cmd_weyl_relative)

    p_st = sub.add_parser("steinberg").add_subparsers(dest="action", required=True)
    p = p_st.add_parser("classify")
    p.add_argument("file")
    p.set_defaults(handler=cmd_steinberg_classify)

    p = sub.add_parser("fixed", help="Coxeter type of W^F")
    p.add_argument("--steinberg", required=True)
    p.set_defaults(handler=cmd_fixed)

    p_levi = sub.add_parser("levi").add_subparsers(dest="action", required=True)
    p = p_levi.add_parser("decompose")
    p.add_argument("file", nargs="?")
    p.add_argument("--steinberg")
    p.add_argument("--I", required=True)
    p.set_defaults(handler=cmd_levi_decompose)

    p_iso = sub.add_parser("isotypy").add_subparsers(dest="action", required=True)
    for action, handler in (("classify", cmd_isotypy_classify), ("factor", cmd_isotypy_factor),
                            ("dual", cmd_isotypy_dual)):
        p = p_iso.add_parser(action)
        p.add_argument("file")
        p.add_argument("--p", type=int)
        p.set_defaults(handler=handler)

    p_group = sub.add_parser("group").add_subparsers(dest="action", required=True)
    for action, handler in (("classes", cmd_group_classes), ("table", cmd_group_table)):
        p = p_group.add_parser(action)
        p.add_argument("file")
        p.set_defaults(handler=handler)

    p_cl = sub.add_parser("clifford").add_subparsers(dest="action", required=True)
    for action, handler, flag in (("restrict", cmd_clifford_restrict, "--chi"),
                                  ("induce", cmd_clifford_induce, "--theta"),
                                  ("stabilizer", cmd_clifford_stabilizer, "--theta"),
                                  ("extend", cmd_clifford_extend, "--theta"),
                                  ("lemma-equivalence", cmd_clifford_lemma_equivalence, "--theta"),
                                  ("lemma-abelian", cmd_clifford_lemma_abelian, "--chi"),
                                  ("central-quotient", cmd_clifford_central_quotient, "--theta")):
        p = p_cl.add_parser(action)
        p.add_argument("--G", required=True)
        p.add_argument("--N", required=True)
        p.add_argument(flag, type=int, required=True)
        if action == "central-quotient":
            p.add_argument("--W", required=True)
        p.set_defaults(handler=handler)
    p = p_cl.add_parser("chain", help="groups N_0, N_1, ..., G, each normal in the next")
    p.add_argument("files", nargs="+")
    p.set_defaults(handler=cmd_clifford_chain)

    p_wr = sub.add_parser("wreath").add_subparsers(dest="action", required=True)
    p = p_wr.add_parser("build")
    p.add_argument("--base", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_wreath_build)
    p = p_wr.add_parser("verify")
    p.add_argument("--H", required=True)
    p.add_argument("--A")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_wreath_verify)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 1
    logging.basicConfig(level=args.log_level.upper(), format=config.LOG_FORMAT, stream=sys.stderr)

    try:
        payload, code = args.handler(args)
    except ClaimFalsifiedError as e:
        logger.error("claim falsified: %s", e)
        payload, code = {"error": str(e), "falsified": True, "report": e.report}, 2
    except InvalidInputError as e:
        logger.error("invalid input: %s", e)
        payload, code = {"error": str(e)}, 1
    except LevikitError as e:
        logger.exception("levikit error")
        payload, code = {"error": str(e)}, 1
    print(io_json.dumps(payload))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
