from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from hodgeorbit.cli import Flags, UsageError, emit_report, main, run


@pytest.fixture(scope="module")
def sl2_report():
    return run("sl2", "ggk_type3.json")


def test_sl2_report_has_exact_matrices(sl2_report):
    v = sl2_report.values
    assert v["H"] == [["3", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "-1", "0"], ["0", "0", "0", "-3"]]
    assert v["Nplus"] == [["0", "3", "0", "0"], ["0", "0", "4", "0"], ["0", "0", "0", "-3"], ["0", "0", "0", "0"]]
    assert v["X"] == [
        ["-3/2", "3/2 i", "0", "0"],
        ["1/2 i", "-1/2", "2 i", "0"],
        ["0", "1/2 i", "1/2", "-3/2 i"],
        ["0", "0", "-1/2 i", "3/2"],
    ]
    assert v["unit_vectors"]["3,0"] == ["(1/2 rt)", "(1/2 rt) i", "(-1/4 rt)", "(1/12 rt) i"]
    assert sl2_report.exit_code == 0


def test_json_is_deterministic(sl2_report):
    a = emit_report(sl2_report, "json")
    b = emit_report(run("sl2", "ggk_type3.json"), "json")
    assert a == b
    body = json.loads(a)
    assert list(body) == sorted(body)
    assert "timing" not in body


def test_text_report(sl2_report):
    text = emit_report(sl2_report, "text").decode()
    assert "PASS  sl2_relations" in text
    assert "time:" in text


def test_csv_only_for_trajectory(sl2_report, capsys):
    with pytest.raises(UsageError):
        emit_report(sl2_report, "csv")
    rep = run("trajectory", "ggk_type3.json", Flags(y_grid=(Fraction(1), Fraction(2))))
    assert emit_report(rep, "csv").decode().splitlines()[0] == "y,q,in_D,min_minor"


def test_cycle_radius_report():
    rep = run("cycle-radius", "ggk_type3.json")
    assert rep.values["radius"] == "1/2"
    assert rep.values["t_star"] == "1/4"
    assert rep.verdicts == {"property_B": False}
    assert run("cycle-radius", "type1.json").values["radius"] == "1"


def test_weight_filtration_with_zero_nilpotent(tmp_path):
    path = tmp_path / "plain.json"
    path.write_text(
        json.dumps(
            {
                "weight": 1,
                "hodge_numbers": {"1,0": 1, "0,1": 1},
                "form": [["0", "-1"], ["1", "0"]],
                "filtration": {"1": [["1", "1 i"]]},
            }
        )
    )
    rep = run("weight-filtration", str(path))
    assert rep.values["N0"]["dims"] == {"0": 0, "1": 2}
    assert rep.ok


def test_ab_summary_rows():
    body = json.loads(emit_report(run("ab-summary"), "json"))
    assert sorted(body["values"]["rows"]) == ["I", "II", "III"]


@pytest.mark.parametrize(
    "args,code",
    [
        (["sl2", "ggk_type3.json"], 0),
        (["deligne", "type2.json"], 0),
        (["verify-orbit", "type1.json"], 0),
        (["classify-1111", "ggk_type3.json"], 0),
        (["check-hodge", "halfplane.json", "--y-grid", "1,2"], 0),
        (["check-hodge", "halfplane.json", "--mode", "float", "--y-grid", "1"], 0),
        (["check-hodge", "halfplane.json"], 1),
        (["fixed-point", "type2.json"], 1),
        (["fixed-point", "halfplane.json"], 1),
        (["cycle-radius", "type1.json", "--mode", "float", "--samples", "4"], 0),
        (["m-epsilon", "ggk_type3.json", "--samples", "2"], 1),
        (["trajectory", "type2.json", "--format", "csv"], 0),
        (["examples"], 0),
        (["sl2"], 2),
        (["sl2", "missing.json"], 2),
        (["sl2", "ggk_type3.json", "--format", "csv"], 2),
        (["sl2", "ggk_type3.json", "--mode", "float"], 2),
        (["classify-1111", "halfplane.json"], 2),
        (["frobnicate", "ggk_type3.json"], 2),
        (["m-epsilon", "ggk_type3.json", "--epsilon", "abc"], 2),
    ],
)
def test_exit_codes(args, code, capsys):
    assert main(args) == code


def test_bad_instance_exits_with_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"weight": 1, "hodge_numbers": {"1,0": 1, "0,1": 1}, "form": [["0", "1"], ["1", "0"]], "filtration": {}}))
    assert main(["check-hodge", str(path)]) == 2
    assert "$.form" in capsys.readouterr().err


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "hodgeorbit.cli", "classify-1111", "type2.json", "--format", "text"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert out.returncode == 0
    assert "PASS  N1:classified" in out.stdout
