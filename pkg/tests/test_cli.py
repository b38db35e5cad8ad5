"""CLI behavior: exit codes, text and structured output, determinism, files."""

import json
import subprocess
import sys

import pytest

from fermatarr.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_arrangement_text_output(capsys):
    code, out, err = run(capsys, "arrangement", "--spec", "A(3,3,2)")
    assert code == 0
    assert out.startswith("arrangement A(3,3,2)\nhyperplanes 9\n")
    assert out.count("\n") == 11
    assert "wall" in err and "wall" not in out


def test_arrangement_structured_record(capsys):
    code, out, _ = run(capsys, "arrangement", "--spec", "A(3,0,1)",
                       "--format", "structured")
    assert code == 0
    record = json.loads(out)
    assert set(record) == {"version", "command", "params", "result"}
    assert record["command"] == "arrangement"
    assert record["params"] == {"spec": "A(3,0,1)"}
    assert record["result"]["hyperplane_count"] == 3


def test_structured_output_is_byte_identical(capsys):
    args = ("unexpected", "--config-id", "B3_DUAL", "--degree", "4",
            "--mult", "0,3", "--seed", "5", "--format", "structured")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_usage_errors_exit_1(capsys):
    cases = [
        ("arrangement", "--spec", "B(3,3,2)"),
        ("arrangement",),
        ("no-such-command",),
        ("arrangement", "--spec", "A(3,3,2)", "--bogus"),
        ("derived", "--spec", "A(3,3,2)", "--flat-dim", "2"),
        ("derived", "--spec", "A(3,3,2)", "--flat-dim", "0", "--min-count", "1"),
        ("dimension", "--config-id", "NOPE", "--degree", "4"),
        ("dimension", "--config-id", "B3_DUAL", "--degree", "-1"),
        ("dimension", "--degree", "4"),
        ("hilbert", "--config-id", "B3_DUAL", "--max-degree", "-2"),
        ("unexpected", "--config-id", "B3_DUAL", "--degree", "4", "--mult", "3"),
        ("unexpected", "--config-id", "B3_DUAL", "--degree", "4", "--mult", "0,0"),
        ("unexpected", "--config-id", "B3_DUAL", "--degree", "4", "--mult", "a,b"),
        ("unexpected", "--config-id", "B3_DUAL", "--degree", "4", "--mult", "2,1"),
        ("verify-formula", "--config-id", "GEN(1)"),
        ("verify-generators", "--config-id", "B3_DUAL"),
        ("verify-generators", "--config-id", "NOPE"),
        ("render",),
        ("render", "--spec", "A(3,1,3)"),
        ("render", "--spec", "A(3,3,2)", "--point", "1,2,3"),
        ("render", "--config-id", "B3"),
        ("render", "--spec", "A(3,3,2)", "--grid", "1"),
        ("render", "--spec", "A(3,3,2)", "--viewport", "1,2,3"),
        ("render", "--spec", "A(3,3,2)", "--viewport", "2,1,-1,1"),
        ("render", "--config-id", "BMSS", "--point", "1,2,3,4"),
        ("render", "--config-id", "B3", "--point", "1,2"),
    ]
    for argv in cases:
        code = main(list(argv))
        capsys.readouterr()
        assert code == 1, argv


def test_missing_scheme_file_exits_1(capsys):
    code, _, err = run(capsys, "dimension", "--scheme", "/no/such/file",
                       "--degree", "4")
    assert code == 1
    assert "cannot read scheme file" in err


def test_unparsable_scheme_file_exits_1(tmp_path, capsys):
    bad = tmp_path / "z.scheme"
    bad.write_text("ambient 2\npoint (0:0:0) mult 1\n")
    code, _, err = run(capsys, "dimension", "--scheme", str(bad),
                       "--degree", "2")
    assert code == 1
    assert "scheme line 2" in err


def test_dual_lists_points(capsys):
    code, out, _ = run(capsys, "dual", "--spec", "A(3,3,2)")
    assert code == 0
    assert out.splitlines()[0] == "dual points of A(3,3,2): 9"
    assert "  (1 : 0 : 0)" in out


def test_derived_counts_42_lines(capsys):
    code, out, _ = run(capsys, "derived", "--spec", "A(4,0,3)",
                       "--flat-dim", "1", "--min-count", "3",
                       "--format", "structured")
    assert code == 0
    record = json.loads(out)
    assert record["result"]["flat_count"] == 42
    assert len(record["result"]["flats"]) == 42


def test_dimension_command(capsys, tmp_path):
    code, out, _ = run(capsys, "dimension", "--config-id", "B3_DUAL",
                       "--degree", "4")
    assert code == 0
    assert "dimension 6" in out

    f = tmp_path / "one.scheme"
    f.write_text("ambient 2\npoint (1:0:0) mult 2\n")
    code, out, _ = run(capsys, "dimension", "--scheme", str(f),
                       "--degree", "2", "--format", "structured")
    assert code == 0
    assert json.loads(out)["result"] == {
        "ambient": 2, "components": 1, "total_monomials": 6, "dimension": 3}


def test_hilbert_command(capsys):
    code, out, _ = run(capsys, "hilbert", "--config-id", "B3_DUAL",
                       "--max-degree", "4", "--format", "structured")
    assert code == 0
    record = json.loads(out)
    assert record["result"]["ranks"] == [1, 3, 6, 9, 9]
    assert record["result"]["dimensions"] == [0, 0, 0, 1, 6]

    code, out, _ = run(capsys, "hilbert", "--config-id", "B3_DUAL",
                       "--max-degree", "2")
    assert out.splitlines()[0] == "degree  rank  dimension"


def test_unexpected_command_positive_and_negative(capsys, tmp_path):
    code, out, _ = run(capsys, "unexpected", "--config-id", "B3_DUAL",
                       "--degree", "4", "--mult", "0,3",
                       "--format", "structured")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["expected"] == 0 and result["actual"] == 1
    assert result["unexpected"] is True

    pts = "\n".join(f"point (1:{t}:{t * t * t + t + 7}) mult 1" for t in range(9))
    f = tmp_path / "generic.scheme"
    f.write_text("ambient 2\n" + pts + "\n")
    code, out, _ = run(capsys, "unexpected", "--scheme", str(f),
                       "--degree", "4", "--mult", "0,3")
    assert code == 0  # a completed computation, whatever the verdict
    assert "unexpected: no" in out


def test_unexpected_multi_template(capsys):
    code, out, _ = run(capsys, "unexpected", "--config-id", "FERMAT_DUAL(3,2)",
                       "--degree", "5", "--mult", "0,4", "--trials", "1",
                       "--format", "structured")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["dim_Z"] == 10 and result["conditions_X"] == 10
    assert result["unexpected"] is True and result["actual"] == 1


def test_verify_formula_command(capsys):
    code, out, _ = run(capsys, "verify-formula", "--config-id", "B3",
                       "--trials", "1")
    assert code == 0
    assert "vanishing on configuration: pass" in out
    assert "multiplicity 3 (expected 3): pass" in out
    assert "unexpected: yes" in out

    code, out, _ = run(capsys, "verify-formula", "--config-id", "P5",
                       "--trials", "1")
    assert code == 0
    assert "closed form: none (existence-only family)" in out

    code, out, _ = run(capsys, "verify-formula", "--config-id", "MULT4(3)",
                       "--trials", "1", "--format", "structured")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["vanishing"] is True and result["kernel_member"] is True
    assert result["multiplicity_attained"] == 4


def test_verify_generators_command(capsys):
    code, out, _ = run(capsys, "verify-generators", "--config-id", "LINES42")
    assert code == 0
    assert "6 generators, all vanish on the configuration" in out

    code, out, _ = run(capsys, "verify-generators", "--config-id", "BMSS_P3",
                       "--format", "structured")
    assert code == 0
    assert json.loads(out)["result"] == {"generator_count": 8,
                                         "all_vanish": True}


def test_out_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "dim.json"
    code, out, _ = run(capsys, "dimension", "--config-id", "B3_DUAL",
                       "--degree", "4", "--format", "structured",
                       "--out", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["result"]["dimension"] == 6


def test_render_arrangement_svg(capsys, tmp_path):
    target = tmp_path / "b3.svg"
    code, out, _ = run(capsys, "render", "--spec", "A(3,3,2)",
                       "--grid", "32", "--out", str(target))
    assert code == 0 and out == ""
    svg = target.read_text()
    assert svg.startswith("<?xml") and "<svg" in svg
    assert "arrangement: 8 lines drawn, 1 outside this chart" in svg

    code, out, _ = run(capsys, "render", "--spec", "A(3,0,1)", "--grid", "16")
    assert code == 0
    assert "arrangement: 3 lines drawn, 0 outside this chart" in out
    assert "<line " in out


def test_render_curve_svg(capsys):
    code, out, _ = run(capsys, "render", "--spec", "A(3,3,2)",
                       "--config-id", "B3", "--point", "2,3,5",
                       "--grid", "64")
    assert code == 0
    assert "curve:" in out and "contour segments" in out
    assert "<path" in out


def test_version_flag(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0
    assert out.strip()


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "fermatarr.cli", "arrangement",
         "--spec", "A(3,1,1)"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("arrangement A(3,1,1)")
