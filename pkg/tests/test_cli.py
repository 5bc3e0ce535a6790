import json

import pytest

from levikit import cli
from levikit.components import characters


@pytest.fixture
def levikit(capsys):
    def call(*argv):
        code = cli.run(["--log-level", "ERROR", *argv])
        out = capsys.readouterr().out
        return code, json.loads(out) if out.strip() else None
    return call


def test_validate_accepts_sl2(levikit, data_path):
    code, report = levikit("validate", data_path("sl2.json"))
    assert code == 0
    assert report["valid"]
    assert report["cartan_type"] == "A1"


@pytest.mark.parametrize("name", ["pairing-sl2.json", "doubled-rank1.json", "unstable-skew.json"])
def test_validate_rejects_mutations(levikit, data_path, name):
    code, report = levikit("validate", data_path("mutated", name))
    assert code == 1
    assert not report["valid"]
    assert report["violations"]


def test_missing_file_is_invalid_input(levikit, data_path):
    code, report = levikit("validate", data_path("no-such-datum.json"))
    assert code == 1
    assert "not found" in report["error"]


def test_bad_arguments_exit_one(levikit):
    code, _ = levikit("weyl", "order", "--bogus")
    assert code == 1


def test_version_exits_cleanly(capsys):
    assert cli.run(["--version"]) == 0


def test_isotypy_classify_at_p3(levikit, data_path):
    code, flags = levikit("isotypy", "classify", data_path("sl2-to-pgl2.json"), "--p", "3")
    assert code == 0
    assert flags == {"kernel_connected": False, "kernel_finite": True, "surjective": True, "injective": False}


def test_isotypy_factor_recomposes(levikit, data_path):
    code, report = levikit("isotypy", "factor", data_path("b2-special.json"))
    assert code == 0
    assert report["recomposes"]


def test_falsified_claim_exits_two(levikit, data_path, monkeypatch):
    monkeypatch.setattr(cli.isotypy, "corollary_consistent", lambda m: False)
    code, report = levikit("isotypy", "dual", data_path("sl2-frobenius.json"))
    assert code == 2
    assert report["falsified"]
    assert report["report"]["checks"][0]["pass"] is False


def test_steinberg_rejects_distinct_source_and_target(levikit, data_path):
    code, _ = levikit("steinberg", "classify", data_path("sl2-to-pgl2.json"))
    assert code == 1


def test_weyl_order_of_a5(levikit, data_path):
    code, report = levikit("weyl", "order", data_path("a5.json"))
    assert code == 0
    assert report["order"] == 720


def test_levi_to_wreath_pipeline(levikit, data_path):
    code, report = levikit("levi", "decompose", data_path("a5.json"), "--I", "0,2,4")
    assert code == 0
    assert report["wreath_shape"] == [["A1", 1, 3]]

    code, report = levikit("wreath", "verify", "--H", data_path("c2.json"), "--n", "3")
    assert code == 0
    assert report["status"] == "verified"
    assert report["group_order"] == 48
    assert len(report["characters"]) == 8


def test_clifford_stabilizer_of_a_q8_linear_character(levikit, data_path):
    code, report = levikit("clifford", "stabilizer", "--G", data_path("sl2f3.json"),
                           "--N", data_path("q8.json"), "--theta", "1")
    assert code == 0
    assert report["contains_N"]
    assert report["index"] == 3


def test_clifford_character_index_out_of_range(levikit, data_path):
    code, report = levikit("clifford", "extend", "--G", data_path("sl2f3.json"),
                           "--N", data_path("q8.json"), "--theta", "9")
    assert code == 1
    assert "--theta" in report["error"]


def test_dixon_failure_exits_two(levikit, data_path, monkeypatch):
    split = characters.eigenspace_decomposition
    monkeypatch.setattr(characters, "eigenspace_decomposition", lambda A: split(A)[:1])
    monkeypatch.setattr(characters, "refine_spaces", lambda spaces, M, Fp: spaces)
    characters.character_table.cache_clear()
    code, report = levikit("group", "table", data_path("s3.json"))
    assert code == 2
    assert report["falsified"]
    assert report["report"]["classes"] == 3


def test_fixed_reports_computed_checks(levikit, data_path):
    code, report = levikit("fixed", "--steinberg", data_path("d4-triality.json"))
    assert code == 0
    assert report["coxeter_type"] == "G2"
    assert report["orders"]["W^F"] == 12
    assert all(c["pass"] for c in report["checks"])


def test_fixed_with_missing_elements_exits_two(levikit, data_path, monkeypatch):
    computed = cli.weyl.fixed_points

    def truncated(W, F):
        fixed = computed(W, F)
        return cli.weyl.FixedPointCoxeter(fixed.elements[:-1], fixed.generators,
                                          fixed.coxeter_matrix, fixed.coxeter_type)

    monkeypatch.setattr(cli.weyl, "fixed_points", truncated)
    code, report = levikit("fixed", "--steinberg", data_path("a3-flip.json"))
    assert code == 2
    checks = {c["name"]: c["pass"] for c in report["report"]["checks"]}
    assert checks["orbit longest elements generate W^F"] is False
