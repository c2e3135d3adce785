"""Frontend behavior: exit codes, output formats, spec files."""

import json
import subprocess
import sys

import pytest

from germcontract import build_dual_graph, parse_graph_json, semigroup_conditions
from germcontract.cli import run
from germcontract.cli import _report_doc


def test_classify_text_output(capsys):
    assert run(["classify", "--pairs", "[(3,5)]", "--r", "8"]) == 0
    out = capsys.readouterr().out
    assert "alpha = 23, p^2 = 25" in out
    assert "S2 k=1: FAIL (largest gap element 3)" in out
    assert out.rstrip().endswith("classification: Both")


def test_classify_json_matches_library(capsys):
    assert run(["classify", "--pairs", "[(3,5),(23,2)]", "--r", "1", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == _report_doc(semigroup_conditions([(3, 5), (23, 2)], 1))
    assert doc["classification"] == "OnlyNonAlgebraic"
    assert doc["s1"] == [True, False]


def test_json_output_is_deterministic(capsys):
    argv = ["analyze", "--series", "u^(3/5)", "--r", "8", "--json"]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first
    doc = json.loads(first)
    assert doc["contractible"] is True
    assert doc["algebraic"] is True
    assert doc["witness_curve"] == "y^5 - x^2"
    assert doc["wp_weights"] == [1, 5, 2, 2]
    assert doc["pole_orders"] == [5, 2, 2]


def test_analyze_text_perturbed_cusp(capsys):
    assert run(["analyze", "--series", "u^(3/5) + u^2", "--r", "8"]) == 0
    out = capsys.readouterr().out
    assert "series: u^(3/5) + u^2" in out
    assert "pairs: (3,5); r = 8" in out
    assert "contractible: yes" in out
    assert "algebraic: no" in out
    assert "witness curve" not in out


def test_degreewise_input_is_equivalent(capsys):
    assert run(["analyze", "--series", "u^(3/5)", "--r", "8", "--json"]) == 0
    local = capsys.readouterr().out
    assert run(["analyze", "--series", "x^(2/5)", "--r", "8", "--json"]) == 0
    assert capsys.readouterr().out == local


def test_keyforms_output(capsys):
    argv = ["keyforms", "--series", "u^(3/5) + u^2", "--r", "8", "--all", "--json"]
    assert run(argv) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["forms"] == ["x", "y", "y^5 - 5*x^(-1)*y^4 - x^2"]
    assert doc["all_forms"] == ["x", "y", "y^5 - x^2", "y^5 - 5*x^(-1)*y^4 - x^2"]
    assert doc["omegas"] == [5, 2, 2]
    assert doc["alphas"] == [5, 1]


def test_keyforms_text_lists_lifts(capsys):
    assert run(["keyforms", "--series", "u^(3/5)", "--r", "0"]) == 0
    out = capsys.readouterr().out
    assert "f_0 = x" in out and "f_1 = y" in out
    assert "pole orders: 5, 2" in out


def test_dualgraph_dot_default(capsys):
    assert run(["dualgraph", "--pairs", "[(3,5)]", "--r", "0"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("graph G {")
    assert 'E1 [label="w=-3"];' in out
    assert "Ltilde -- E2;" in out


def test_dualgraph_json_round_trip(capsys):
    assert run(["dualgraph", "--pairs", "[(3,5),(23,2)]", "--r", "1", "--format", "json"]) == 0
    g = parse_graph_json(capsys.readouterr().out)
    ref = build_dual_graph([(3, 5), (23, 2)], 1)
    assert [v.label for v in g.vertices] == [v.label for v in ref.vertices]
    assert [v.weight for v in g.vertices] == [v.weight for v in ref.vertices]
    assert g.edges == ref.edges
    assert g.estar_attachment == ref.estar_attachment


def test_dualgraph_json_flag_aliases_format(capsys):
    assert run(["dualgraph", "--pairs", "[(3,5)]", "--r", "2", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["vertices"]) == 6


def test_singlepair_flags(capsys):
    argv = "singlepair --poly v^5-u^3 --p 5 --q 3 --r 8 --json".split()
    assert run(argv) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {
        "algebraic": True,
        "alpha": 23,
        "contractible": True,
        "nonalgebraic_exists": True,
    }


def test_singlepair_text(capsys):
    assert run(["singlepair", "--poly", "v^5 - u^3", "--p", "5", "--q", "3", "--r", "10"]) == 0
    out = capsys.readouterr().out
    assert "contractible: no" in out


def test_spec_file_with_flag_override(tmp_path, capsys):
    spec = tmp_path / "cusp.germ"
    spec.write_text('# the plain cusp\nseries = "u^(3/5)"\nr = 0\n')
    assert run(["classify", str(spec), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["classification"] == "OnlyAlgebraic"
    assert run(["classify", str(spec), "--r", "10", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["classification"] == "NotContractible"


def test_singlepair_spec_file(tmp_path, capsys):
    spec = tmp_path / "wp.germ"
    spec.write_text('poly = "v^5 - u^3"\np = 5\nq = 3\nr = 9\n')
    assert run(["singlepair", str(spec), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["algebraic"] is True


def test_sweep_lines(capsys):
    assert run(["sweep", "--pairs", "[(3,5)]", "--r-max", "10"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 11
    assert lines[0] == "r=0: OnlyAlgebraic"
    assert lines[8] == "r=8: Both"
    assert lines[10] == "r=10: NotContractible"


def test_sweep_seed_is_reproducible_and_consistent(capsys):
    argv = ["sweep", "--series", "u^(3/5)", "--r-max", "10", "--seed", "7"]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first
    assert "consistent: False" not in first
    assert "consistent: True" in first


PARSE_FAILS = [
    ["classify", "--series", "u^^2", "--r", "1"],
    ["classify", "--series", "u^(3/5)", "--pairs", "[(3,5)]", "--r", "1"],
    ["classify", "--r", "1"],
    ["classify", "--series", "u^(3/5)"],
    ["classify", "--series", "u^(3/5)", "--r", "-2"],
    ["classify", "--pairs", "[(3,5),(2,2)]", "--r", "1"],
    ["classify", "--pairs", "[]", "--r", "1"],
    ["classify", "/no/such/file.germ"],
    ["singlepair", "--poly", "v^5 - u^3", "--p", "5"],
    ["sweep", "--pairs", "[(3,5)]", "--r-max", "-1"],
]


@pytest.mark.parametrize("argv", PARSE_FAILS, ids=[" ".join(a) for a in PARSE_FAILS])
def test_unusable_input_exits_2(argv, capsys):
    assert run(argv) == 2
    err = capsys.readouterr().err
    assert err.startswith("error:")


def test_malformed_spec_file_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.germ"
    bad.write_text("flavor = 3\n")
    assert run(["classify", str(bad), "--r", "1"]) == 2
    assert "bad.germ:1" in capsys.readouterr().err


def test_precondition_failures_exit_3(capsys):
    # order >= 1: the configuration cannot contract
    assert run(["analyze", "--series", "u^(7/5)", "--r", "0"]) == 3
    assert "order >= 1" in capsys.readouterr().err
    # key forms need actual coefficients
    assert run(["keyforms", "--pairs", "[(3,5)]", "--r", "1"]) == 3
    assert run(["classify", "--series", "u + u^2", "--r", "1"]) == 3


def test_argparse_rejects_unknown_subcommand():
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2


def test_console_script_smoke():
    proc = subprocess.run(
        ["germcontract", "classify", "--pairs", "[(3,5)]", "--r", "9", "--json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["classification"] == "Both"


def test_module_entry_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "germcontract", "singlepair", "--poly", "v^2-u",
         "--p", "2", "--q", "1", "--r", "0", "--json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["contractible"] is True
