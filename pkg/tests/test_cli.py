"""End-to-end tests for the command-line interface.

Covers argument plumbing, exit codes, stdin piping, JSON round trips,
byte-stable output, and golden spot values for the cheap subcommands.
The expensive verification suites (cycles, duality) are exercised once
through the acceptance gate rather than re-run here.
"""

import json
import subprocess
import sys

import pytest

from strucmaps import FreeComplex
from strucmaps.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


def run_process(argv, stdin_text=None):
    return subprocess.run(
        [sys.executable, "-m", "strucmaps.cli"] + argv,
        input=stdin_text,
        capture_output=True,
        text=True,
    )


# -- build and verify plumbing ------------------------------------------


def test_build_split_roundtrip(capsys):
    code, payload = run_json(capsys, "build", "split")
    assert code == 0
    assert json.loads(json.dumps(payload)) == payload
    rebuilt = FreeComplex.from_json(payload)
    assert rebuilt.verify()["passed"]


def test_build_rejects_other_sizes(capsys):
    code, out = run_cli(capsys, "build", "split", "--n", "5")
    assert code == 2
    assert out == ""


def test_unknown_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_pipe_build_into_verify():
    pipeline = "%s -m strucmaps.cli build pfaffian | %s -m strucmaps.cli verify complex" % (
        sys.executable,
        sys.executable,
    )
    proc = subprocess.run(pipeline, shell=True, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    report = json.loads(proc.stdout)
    assert report["passed"] and report["source"] == "stdin"


def test_verify_complex_flag_instead_of_stdin(capsys):
    code, report = run_json(capsys, "verify", "complex", "--complex", "split")
    assert code == 0
    assert report["passed"] and report["source"] == "split"
    assert len(report["checks"]) == 7


def test_verify_complex_broken_input_fails():
    build = run_process(["build", "pfaffian"])
    payload = json.loads(build.stdout)
    payload["d3"][0][0] = "x12"
    proc = run_process(["verify", "complex"], stdin_text=json.dumps(payload))
    assert proc.returncode == 1
    report = json.loads(proc.stdout)
    assert not report["passed"]


def test_verify_complex_garbage_stdin_is_usage_error():
    proc = run_process(["verify", "complex"], stdin_text="not json at all")
    assert proc.returncode == 2
    assert proc.stdout == ""


def test_verify_complex_empty_stdin_is_usage_error():
    proc = run_process(["verify", "complex"], stdin_text="")
    assert proc.returncode == 2


# -- structure-map subcommands ------------------------------------------


def test_hsm1_generic_golden_values(capsys):
    code, payload = run_json(capsys, "hsm1", "--generic")
    assert code == 0
    assert payload["family"] == "alpha1"
    assert len(payload["defects"]) == 16
    assert payload["w62"]["f6"] == "-b_12345"
    assert payload["w0_11"] == "b_12345"
    assert payload["wn1"]["{1}"] == ["1", "0", "0", "0", "0", "b_1"]
    assert json.loads(json.dumps(payload)) == payload


def test_hsm1_specialize_substitutes(capsys):
    code, payload = run_json(capsys, "hsm1", "--specialize", "b_12345=2, b_1=-1/3")
    assert code == 0
    assert payload["specialized"] == {"b_1": "-1/3", "b_12345": "2"}
    assert payload["w62"]["f6"] == "-2"
    assert payload["wn1"]["{1}"] == ["1", "0", "0", "0", "0", "-1/3"]


def test_hsm1_specialize_rejects_unknown_variable(capsys):
    code, out = run_cli(capsys, "hsm1", "--specialize", "zz=1")
    assert code == 2 and out == ""


def test_hsm1_specialize_rejects_bad_value(capsys):
    code, out = run_cli(capsys, "hsm1", "--specialize", "b_1=abc")
    assert code == 2 and out == ""


def test_hsm1_generic_and_specialize_conflict():
    with pytest.raises(SystemExit) as info:
        main(["hsm1", "--generic", "--specialize", "b_1=1"])
    assert info.value.code == 2


def test_hsm2_pfaffian_payload(capsys):
    code, payload = run_json(capsys, "hsm2", "--complex", "pfaffian")
    assert code == 0
    assert payload["family"] == "alpha2"
    assert payload["defects"] == []
    assert payload["w12"][:5] == ["0"] * 5 and payload["w12"][5] == "1"
    assert json.loads(json.dumps(payload)) == payload


def test_hsm2_split_generic_defect_count(capsys):
    code, payload = run_json(capsys, "hsm2", "--generic")
    assert code == 0
    assert len(payload["defects"]) == 21
    assert len(payload["elimination"]) == 29


# -- Lie layer ----------------------------------------------------------


def test_lie_double_cosets_e6(capsys):
    code, payload = run_json(
        capsys, "lie", "double-cosets", "--type", "E6", "--a", "2", "--b", "1"
    )
    assert code == 0
    assert payload["count"] == 3
    assert payload["sizes"] == [6, 15, 6]
    assert payload["total"] == 27
    assert payload["representatives"][0] == []


def test_lie_weyl_orders(capsys):
    code, payload = run_json(capsys, "lie", "weyl", "--type", "E6")
    assert code == 0 and payload["order"] == 51840
    assert payload["longest_length"] == 36
    code, payload = run_json(capsys, "lie", "weyl", "--type", "E7")
    assert code == 0 and payload["order"] == 2903040


def test_lie_grading_e6_node1(capsys):
    code, payload = run_json(capsys, "lie", "grading", "--type", "E6", "--a", "1")
    assert code == 0
    assert payload["grading"] == [[-1, 16], [0, 46], [1, 16]]
    assert payload["dimension"] == 78


def test_lie_cartan_e6(capsys):
    code, payload = run_json(capsys, "lie", "cartan", "--type", "E6")
    assert code == 0
    assert payload["rank"] == 6 and payload["root_count"] == 72
    assert len(payload["cartan_matrix"]) == 6
    assert all(payload["cartan_matrix"][i][i] == 2 for i in range(6))


def test_lie_bad_node_is_usage_error(capsys):
    code, out = run_cli(capsys, "lie", "grading", "--type", "E6", "--a", "9")
    assert code == 2 and out == ""


def test_lie_bad_type_is_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["lie", "weyl", "--type", "E9"])
    assert info.value.code == 2


# -- quadrics, assembly, extraction -------------------------------------


def test_plucker_basis_payload(capsys):
    code, payload = run_json(capsys, "plucker", "basis")
    assert code == 0
    assert payload["count"] == 27 and len(payload["quadrics"]) == 27
    for q in payload["quadrics"]:
        assert len(q["weight"]) == 6
        assert q["coefficients"]
        assert all(isinstance(v, int) for v in q["coefficients"].values())
    assert json.loads(json.dumps(payload)) == payload


def test_plucker_check_pfaffian_passes(capsys):
    code, payload = run_json(capsys, "plucker", "check")
    assert code == 0
    assert payload["passed"] and payload["complex"] == "pfaffian"
    assert payload["coords"][0] == "y"


def test_plucker_check_split_zero_defects(capsys):
    code, payload = run_json(capsys, "plucker", "check", "--complex", "split")
    assert code == 0
    assert payload["passed"] and not payload["symbolic_defects"]
    assert payload["coords"][0] == "1"


def test_assemble_m_split_zero_defects(capsys):
    code, payload = run_json(capsys, "assemble", "m-split")
    assert code == 0
    assert payload["det"] == "-1" and payload["generic"] is False
    assert payload["rows"][0] == "f1" and payload["cols"][0] == "1"
    assert payload["entries"][5][0] == "1"


def test_extract_verified_presentation(capsys):
    code, payload = run_json(capsys, "extract")
    assert code == 0
    assert payload["verified"] is True and payload["index"] == 6
    assert payload["y"] == "y"
    assert len(payload["pfaffians"]) == 5
    assert payload["pfaffians"][0] == "x23*x45 - x24*x35 + x25*x34"
    assert len(payload["skew_matrix"]) == 5


# -- fixtures and output plumbing ---------------------------------------


def test_fixtures_betti_tables(capsys):
    code, payload = run_json(capsys, "fixtures", "betti-e8")
    assert code == 0
    assert len(payload["tables"]) == 10
    assert payload["tables"][0]["text"][2] == "2: 7 14 7"
    assert json.loads(json.dumps(payload)) == payload


def test_fixtures_output_is_byte_stable(capsys):
    _, first = run_cli(capsys, "fixtures", "betti-e8")
    _, second = run_cli(capsys, "fixtures", "betti-e8", "--seed", "7")
    assert first == second


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "tables.json"
    code, out = run_cli(capsys, "fixtures", "betti-e8", "--out", str(target))
    assert code == 0 and out == ""
    text = target.read_text()
    assert text.endswith("\n")
    assert len(json.loads(text)["tables"]) == 10
