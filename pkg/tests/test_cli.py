"""CLI subcommands, exit codes, and report determinism."""

import io
import json
import os
from contextlib import redirect_stdout

import pytest

from monoidgeo.cli import main, parse_monoid_spec

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fx(name):
    return os.path.join(FIXTURES, name)


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    text = buf.getvalue()
    doc = json.loads(text) if text.strip() else None
    return code, doc, text


def test_parse_monoid_spec_fixtures():
    for name in ("free1", "free2", "z3", "fp_r1_z2", "bicyclic", "zero"):
        oracle, doc = parse_monoid_spec(fx(f"{name}.json"))
        assert oracle.generators


def test_dist_basic():
    code, doc, _ = run_cli("--monoid", fx("free2.json"), "dist", "ε", "ab")
    assert code == 0
    assert doc["result"]["distance"] == {"kind": "exact", "num": 2, "den": 1}
    assert doc["result"]["witness"] == "ab"


def test_dist_infinite():
    code, doc, _ = run_cli("--monoid", fx("free1.json"), "dist", "a", "ε")
    assert code == 0
    assert doc["result"]["distance"] == {"kind": "infinite"}


def test_ball_command():
    code, doc, _ = run_cli("--monoid", fx("free1.json"), "ball", "ε", "1", "strong")
    assert code == 0
    ball = doc["result"]["ball"]
    assert ball["vertices"] == ["v:ε"]
    assert ball["segments"] == [{"base": "ε", "gen": "a", "lo": [0, 1], "hi": [1, 1]}]


def test_check_axioms():
    code, doc, _ = run_cli("--monoid", fx("z3.json"), "check", "axioms")
    assert code == 0
    assert doc["result"]["word_metric"]["verdict"] == "pass"
    assert doc["result"]["gamma"]["verdict"] == "pass"


def test_check_qi():
    code, doc, _ = run_cli("--monoid", fx("bicyclic.json"), "check", "qi", "--depth", "3")
    assert code == 0


def test_check_quasimetric_group_passes():
    code, doc, _ = run_cli(
        "--monoid", fx("z3.json"), "check", "quasimetric", "--lambda", "2", "--mu", "0"
    )
    assert code == 0


def test_check_quasimetric_free_fails_with_witness():
    code, doc, _ = run_cli(
        "--monoid", fx("free1.json"), "check", "quasimetric", "--lambda", "4", "--mu", "4"
    )
    assert code == 1
    v = doc["result"]["violations"][0]
    assert v["lhs"] == {"kind": "infinite"}


def test_check_cancellative_sides():
    code, doc, _ = run_cli("--monoid", fx("bicyclic.json"), "check", "cancellative", "--side", "left")
    assert code == 1
    assert doc["result"]["witness"]
    code, doc, _ = run_cli("--monoid", fx("free2.json"), "check", "cancellative", "--side", "left")
    assert code == 0


def test_check_fgt():
    code, doc, _ = run_cli("--monoid", fx("zero.json"), "check", "fgt", "--threshold", "5")
    assert code == 1
    code, doc, _ = run_cli("--monoid", fx("free2.json"), "check", "fgt", "--threshold", "6")
    assert code == 0


def test_check_unitary():
    code, doc, _ = run_cli("--monoid", fx("fp_r1_z2.json"), "check", "unitary")
    assert code == 0
    # only meaningful on free products
    code, _, _ = run_cli("--monoid", fx("free1.json"), "check", "unitary")
    assert code == 2


def test_check_action():
    code, doc, _ = run_cli("--monoid", fx("zero.json"), "check", "action", "--depth", "2")
    assert code == 1
    code, doc, _ = run_cli("--monoid", fx("free2.json"), "check", "action", "--depth", "2")
    assert code == 0


def test_svarc_milnor_f1():
    code, doc, _ = run_cli("--monoid", fx("free1.json"), "svarc-milnor", "-R", "1")
    assert code == 0
    ex = doc["result"]["extraction"]
    assert ex["S"] == ["ε", "a"]
    assert ex["r"] == [1, 2]
    assert ex["l"] == [1, 4]
    assert ex["lambda"] == {"kind": "exact", "num": 1, "den": 1}


def test_submonoid_pipeline():
    code, doc, _ = run_cli("--monoid", fx("fp_r1_z2.json"), "--horizon", "5", "submonoid")
    assert code == 0
    assert doc["result"]["artifacts"]["S"] == ["ε", "f", "gf"]


def test_free_product_pipeline():
    code, doc, _ = run_cli("--monoid", fx("fp_r1_z2.json"), "--horizon", "5", "free-product")
    assert code == 0
    assert doc["result"]["artifacts"]["basis_size"] == 2


def test_bad_spec_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"type": "unknown"}')
    code, doc, text = run_cli("--monoid", str(bad), "dist", "a", "b")
    assert code == 2 and text == ""
    missing = tmp_path / "missing.json"
    code, _, _ = run_cli("--monoid", str(missing), "dist", "a", "b")
    assert code == 2


def test_reports_byte_identical():
    runs = [
        ("--monoid", fx("free1.json"), "svarc-milnor", "-R", "1"),
        ("--monoid", fx("z3.json"), "check", "axioms"),
        ("--monoid", fx("free1.json"), "dist", "ε", "aaa"),
    ]
    for argv in runs:
        _, _, first = run_cli(*argv)
        _, _, second = run_cli(*argv)
        assert first == second
        assert first  # non-empty


def test_json_output_file(tmp_path):
    out = tmp_path / "report.json"
    code, doc, text = run_cli(
        "--monoid", fx("free1.json"), "--json", str(out), "dist", "ε", "a"
    )
    assert code == 0
    assert out.read_text() == text


def test_seed_echoed():
    _, doc, _ = run_cli("--monoid", fx("free1.json"), "--seed", "7", "dist", "ε", "a")
    assert doc["input"]["seed"] == 7
