"""End-to-end CLI tests, including the documented pipelines."""

import io
import xml.etree.ElementTree as ET

from acckit.cli import dispatch


def run_cli(argv, capsys, stdin_text=None, monkeypatch=None):
    if stdin_text is not None:
        assert monkeypatch is not None
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin_text))
    code = dispatch(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_pipeline(stages, capsys, monkeypatch):
    """Run a '|' chain of acckit commands, feeding stdout into stdin."""
    text = None
    code = 0
    for stage in stages:
        code, text, _ = run_cli(stage, capsys, stdin_text=text, monkeypatch=monkeypatch)
    return code, text


def test_gen_family_stats_pipeline(capsys, monkeypatch):
    code, out = run_pipeline(
        [["gen", "family", "--j", "1"], ["stats", "-", "--format", "machine"]],
        capsys,
        monkeypatch,
    )
    assert code == 0
    assert "STAT n 25" in out
    assert "STAT r 10" in out


def test_pencil_dirac_pipeline(capsys, monkeypatch):
    code, out = run_pipeline(
        [["gen", "pencil", "--n", "5"], ["audit", "dirac", "-"]], capsys, monkeypatch
    )
    assert code == 0
    assert "hypothesis_violated" in out


def test_audit_pairs_line(capsys, monkeypatch):
    code, out = run_pipeline(
        [["gen", "family", "--j", "1"], ["audit", "pairs", "-"]], capsys, monkeypatch
    )
    assert code == 0
    assert out == "CHECK pairs holds 300/300\n"


def test_expand_then_validate(capsys, monkeypatch):
    code, wedge_text, _ = run_cli(["gen", "family", "--j", "1"], capsys)
    code, acc_text, _ = run_cli(["expand", "-"], capsys, wedge_text, monkeypatch)
    assert code == 0
    assert acc_text.startswith("acc 1\nalpha 1\nlines 25\n")
    code, out, _ = run_cli(["validate", "-"], capsys, acc_text, monkeypatch)
    assert code == 0
    assert out.startswith("valid")


def test_validate_invalid_exits_one(capsys, monkeypatch):
    bad = "acc 1\nalpha 1\nlines 3\nv 0 1\nv 0 1 2\n"
    code, out, _ = run_cli(["validate", "-"], capsys, bad, monkeypatch)
    assert code == 1
    assert "invalid" in out
    assert "PairMultiplicity" in out


def test_malformed_input_exits_two(capsys, monkeypatch):
    code, _, err = run_cli(["validate", "-"], capsys, "garbage\n", monkeypatch)
    assert code == 2
    assert "bad header" in err


def test_unknown_flag_exits_two(capsys):
    code, _, _ = run_cli(["gen", "family", "--frobnicate", "1"], capsys)
    assert code == 2


def test_gen_family_rejects_bad_j(capsys):
    code, _, err = run_cli(["gen", "family", "--j", "0"], capsys)
    assert code == 2
    assert "--j" in err


def test_gen_pg2_all(capsys, monkeypatch):
    code, out, _ = run_cli(["gen", "pg2", "--p", "2", "--all"], capsys)
    assert code == 0
    assert out.startswith("acc 1\nalpha 1\nlines 7\n")
    code, out2, _ = run_cli(["stats", "-", "--format", "machine"], capsys, out, monkeypatch)
    assert "TK 3 7" in out2


def test_gen_pg2_sampled_deterministic(capsys):
    code, out1, _ = run_cli(["gen", "pg2", "--p", "7", "--n", "7", "--seed", "42"], capsys)
    code, out2, _ = run_cli(["gen", "pg2", "--p", "7", "--n", "7", "--seed", "42"], capsys)
    assert out1 == out2
    assert out1.startswith("acc 1\n")


def test_gen_pg2_composite_exits_two(capsys):
    code, _, err = run_cli(["gen", "pg2", "--p", "4", "--all"], capsys)
    assert code == 2
    assert "prime" in err


def test_gen_pg2_needs_all_or_n(capsys):
    code, _, err = run_cli(["gen", "pg2", "--p", "5"], capsys)
    assert code == 2


def test_audit_thm3(capsys, monkeypatch):
    code, out = run_pipeline(
        [["gen", "simple", "--n", "10"], ["audit", "thm3", "-"]], capsys, monkeypatch
    )
    assert code == 0
    assert "CHECK thm3.part1.k2 holds 0/1" in out
    assert "CHECK thm3.part1 holds" in out
    assert "CHECK thm3.part2 holds" in out
    assert "fails" not in out


def test_audit_dyadic(capsys, monkeypatch):
    code, out = run_pipeline(
        [
            ["gen", "family", "--j", "1"],
            ["audit", "dyadic", "-", "--gamma", "1/2", "--v", "1"],
        ],
        capsys,
        monkeypatch,
    )
    assert code == 0
    assert "NOTE dyadic window 10 12" in out
    assert "CHECK dyadic.total holds 300/300" in out


def test_audit_dyadic_quiet(capsys, monkeypatch):
    code, out = run_pipeline(
        [
            ["gen", "family", "--j", "1"],
            ["audit", "dyadic", "-", "--gamma", "0", "--v", "0", "--quiet"],
        ],
        capsys,
        monkeypatch,
    )
    assert code == 0
    assert "NOTE" not in out
    assert "CHECK dyadic.total holds" in out


def test_audit_dyadic_bad_gamma(capsys, monkeypatch):
    code, _, err = run_cli(
        ["audit", "dyadic", "-", "--gamma", "x/y", "--v", "1"], capsys, "acc 1\n", monkeypatch
    )
    assert code == 2


def test_audit_dichotomy(capsys, monkeypatch):
    code, out = run_pipeline(
        [
            ["gen", "family", "--j", "1"],
            ["audit", "dichotomy", "-", "--fraction", "8/25"],
        ],
        capsys,
        monkeypatch,
    )
    assert code == 0
    assert "NOTE dichotomy branch LargeCoverage" in out
    assert "NOTE dichotomy coverage 8/25" in out


def test_audit_dirac_margins(capsys, monkeypatch):
    code, out = run_pipeline(
        [["gen", "family", "--j", "1"], ["audit", "dirac", "-"]], capsys, monkeypatch
    )
    assert code == 0
    assert "CHECK dirac.g_ge_h holds 2/1" in out
    assert "CHECK dirac.binom holds" in out


def test_budget_env_var(capsys, monkeypatch, tmp_path):
    acc = "acc 1\nalpha 2\nlines 4\nv 0 1 2\nv 0 1 3\nv 0 2 3\nv 1 2 3\n"
    path = tmp_path / "quad.acc"
    path.write_text(acc, encoding="utf-8")
    monkeypatch.setenv("ACCKIT_SUBSET_BUDGET", "3")
    code, _, err = run_cli(["audit", "dirac", str(path)], capsys)
    assert code == 2
    assert "budget" in err
    monkeypatch.setenv("ACCKIT_SUBSET_BUDGET", "1000")
    code, out, _ = run_cli(["audit", "dirac", str(path)], capsys)
    assert code == 0


def test_out_writes_file(capsys, tmp_path):
    target = tmp_path / "family.wedge"
    code, out, _ = run_cli(["gen", "family", "--j", "1", "--out", str(target)], capsys)
    assert code == 0
    assert out == ""
    assert target.read_text(encoding="utf-8").startswith("wedge 1\n")


def test_render_cli(capsys, monkeypatch, tmp_path):
    code, wedge_text, _ = run_cli(["gen", "family", "--j", "1"], capsys)
    out_path = tmp_path / "arr.svg"
    code, _, _ = run_cli(
        ["render", "arrangement", "-", "--out", str(out_path)], capsys, wedge_text, monkeypatch
    )
    assert code == 0
    svg = out_path.read_text(encoding="utf-8")
    ET.fromstring(svg)
    assert svg.count("<polyline") == 25

    code, wedge_svg, _ = run_cli(["render", "wedge", "-"], capsys, wedge_text, monkeypatch)
    assert code == 0
    ET.fromstring(wedge_svg)


def test_missing_file_exits_two(capsys):
    code, _, err = run_cli(["stats", "/nonexistent/nowhere.acc"], capsys)
    assert code == 2
    assert "cannot read" in err


def test_cli_outputs_deterministic(capsys, monkeypatch):
    runs = []
    for _ in range(2):
        code, out = run_pipeline(
            [["gen", "family", "--j", "2"], ["expand", "-"]], capsys, monkeypatch
        )
        runs.append(out)
    assert runs[0] == runs[1]


def test_expansion_error_exits_one(capsys, monkeypatch):
    bad_wedge = "wedge 1\nm 3\nbeam z T1\n"
    code, _, err = run_cli(["expand", "-"], capsys, bad_wedge, monkeypatch)
    assert code == 1
    assert "close" in err
