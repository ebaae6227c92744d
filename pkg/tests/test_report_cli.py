import json
import subprocess
import sys
from pathlib import Path

import pytest
from conftest import PAPER_F2_COEFF_EXPRS, PAPER_F3_COEFF_EXPRS

from picardtrop import cli
from picardtrop.errors import PicardTropError
from picardtrop.ratfunc import RatFunc, T
from picardtrop.report import (
    build_report,
    fourone_from_roots,
    parse_form_input,
    render_dot,
    render_table,
)
from picardtrop.treeoracle import INFINITY, RootConfig

GOLDEN = Path(__file__).parent / "golden"


def _run(args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "picardtrop.cli", *args],
        capture_output=True,
        text=True,
        input=stdin,
    )


def _quintic_input(coeffs):
    return {"kind": "quintic", "coefficients": coeffs, "backend": {"type": "t-adic"}}


# -- input parsing -------------------------------------------------------


def test_parse_quintic_input():
    fi = parse_form_input(_quintic_input(PAPER_F2_COEFF_EXPRS))
    assert fi.kind == "quintic" and fi.quintic.degree == 5
    assert fi.fourone is None


def test_parse_fourone_input():
    fi = parse_form_input(
        {"kind": "fourone", "q": ["1", "0", "0", "0", "-1"], "ell": ["0", "1"]}
    )
    assert fi.fourone is not None
    assert fi.quintic.degree == 5


def test_parse_roots_input_marked_rules():
    fi = parse_form_input({"kind": "roots", "roots": ["0", "1", "2", "t", "inf"]})
    assert fi.rootconfig.marked == 4  # inf wins by default
    fi = parse_form_input({"kind": "roots", "roots": ["0", "1", "2", "t", "7"]})
    assert fi.rootconfig.marked == 4  # last listed otherwise
    fi = parse_form_input(
        {"kind": "roots", "roots": ["0", "1", "2", "t", "inf"], "marked": "t"}
    )
    assert fi.rootconfig.marked == 3
    fi = parse_form_input(
        {"kind": "roots", "roots": ["0", "1", "2", "t", "inf"], "marked": 1}
    )
    assert fi.rootconfig.marked == 1


def test_parse_input_validation():
    with pytest.raises(PicardTropError):
        parse_form_input({"kind": "quintic", "coefficients": ["1"] * 5})
    with pytest.raises(PicardTropError):
        parse_form_input({"kind": "roots", "roots": ["0", "1", "2", "3"]})
    with pytest.raises(PicardTropError):
        parse_form_input({"kind": "nope"})
    with pytest.raises(PicardTropError):
        parse_form_input({"kind": "quintic", "coefficients": ["1"] * 6, "backend": {"type": "p-adic"}})
    with pytest.raises(PicardTropError):
        parse_form_input(
            {"kind": "roots", "roots": ["0", "1", "2", "3", "4"], "marked": "inf"}
        )


def test_fourone_from_roots_marked_finite():
    rc = RootConfig(
        (RatFunc.from_const(0), RatFunc.from_const(1), INFINITY, T, RatFunc.from_const(3)),
        marked=0,
    )
    qf = fourone_from_roots(rc)
    # ell = x vanishes at 0; q picks up a factor z for the root at infinity
    assert qf.ell.coeffs[1].is_zero
    assert not qf.q(RatFunc.from_const(1), RatFunc.from_const(1))
    assert not qf.q(RatFunc.from_const(1), RatFunc.from_const(0))  # root at infinity


# -- report assembly ------------------------------------------------------


def test_report_stages():
    fi = parse_form_input(_quintic_input(PAPER_F2_COEFF_EXPRS))
    rep = build_report(fi, "invariants")
    assert "invariants" in rep and "tree_type" not in rep
    rep = build_report(fi, "classify")
    assert rep["tree_type"] == "II" and "edge_lengths" not in rep
    rep = build_report(fi, "lengths")
    assert rep["edge_lengths"] == ["2"]
    with pytest.raises(PicardTropError):
        build_report(fi, "picard")  # needs a (4,1)-form


def test_report_picard_roots():
    fi = parse_form_input(
        {"kind": "roots", "roots": ["0", "1", "t", "1+t^2", "inf"]}
    )
    rep = build_report(fi, "picard")
    assert rep["marked_tree_type"] == "III.2"
    assert rep["edge_lengths"] == ["1", "2"]
    sk = rep["picard_skeleton"]
    assert [v["genus"] for v in sk["vertices"]] == [1, 1, 1]
    assert [e["length"] for e in sk["edges"]] == ["1/3", "2/3"]
    assert rep["oracle"]["agrees_marked_type"] is True
    assert rep["oracle"]["agrees_edge_lengths"] is True


def test_report_renderers():
    fi = parse_form_input({"kind": "roots", "roots": ["0", "1", "t", "1+t^2", "inf"]})
    rep = build_report(fi, "picard")
    table = render_table(rep)
    assert "marked tree type: III.2" in table
    assert "first Betti number 0, total genus 3" in table
    dot = render_dot(rep)
    assert dot.startswith("graph picard_skeleton")
    assert dot.count("--") == 2
    oracle_rep = build_report(fi, "oracle")
    tdot = render_dot(oracle_rep)
    assert tdot.startswith("graph metric_tree")


def test_oracle_needs_roots_and_tadic():
    fi = parse_form_input(_quintic_input(PAPER_F2_COEFF_EXPRS))
    with pytest.raises(PicardTropError):
        build_report(fi, "oracle")


# -- CLI surface -----------------------------------------------------------


def test_cli_golden_reports():
    for name, coeffs in (
        ("f2", PAPER_F2_COEFF_EXPRS),
        ("f3", PAPER_F3_COEFF_EXPRS),
    ):
        res = _run(["classify", json.dumps(_quintic_input(coeffs))])
        assert res.returncode == 0, res.stderr
        assert res.stdout == (GOLDEN / f"{name}_classify.json").read_text()


def test_cli_stdin_and_formats():
    payload = json.dumps({"kind": "roots", "roots": ["0", "1", "2", "3", "inf"]})
    res = _run(["oracle", "-", "--format", "table"], stdin=payload)
    assert res.returncode == 0
    assert "oracle tree: star" in res.stdout
    res = _run(["classify", "-", "--format", "table"], stdin=payload)
    assert res.returncode == 0
    assert "marked tree type: I" in res.stdout


def test_cli_exit_codes():
    # 1: usage
    assert _run(["classify"]).returncode == 1
    assert _run(["verify", "--families", "XX", "--samples", "1"]).returncode == 1
    # 2: parse error
    bad = json.dumps(_quintic_input(["0", "1", "$$", "0", "0", "1"]))
    assert _run(["classify", bad]).returncode == 2
    # t with a p-adic backend is a parse error too
    padt = json.dumps(
        {"kind": "quintic", "coefficients": ["1", "t", "0", "0", "0", "1"],
         "backend": {"type": "p-adic", "p": 5}}
    )
    assert _run(["classify", padt]).returncode == 2
    # 3: non-separable input
    nonsep = json.dumps(
        {"kind": "roots", "roots": ["0", "1", "1", "2", "inf"]}
    )
    assert _run(["classify", nonsep]).returncode == 3
    doubled = json.dumps(
        {"kind": "quintic", "coefficients": ["1", "-2", "1", "0", "0", "0"]}
    )
    assert _run(["classify", doubled]).returncode == 3
    # missing input file
    assert _run(["classify", "/nonexistent/input.json"]).returncode == 1


def test_cli_mismatch_exit_code(monkeypatch, capsys):
    from picardtrop.verify import VerifySummary

    def fake_run_verify(families, samples, seed, jobs):
        s = VerifySummary(tuple(families), samples, seed)
        s.total = 1
        s.failures = [{"family": "I", "index": 0}]
        s.per_family["I"] = {"passed": 0, "failed": 1}
        return s

    import picardtrop.verify as verify_mod

    monkeypatch.setattr(verify_mod, "run_verify", fake_run_verify)
    rc = cli.main(["verify", "--families", "I", "--samples", "1"])
    assert rc == 4


def test_cli_padic_classification():
    # integer quintic, 5-adic backend: star type since v5(Delta) = 0
    inp = json.dumps(
        {"kind": "quintic", "coefficients": ["1", "2", "-1", "3", "1", "-2"],
         "backend": {"type": "p-adic", "p": 5}}
    )
    res = _run(["classify", inp])
    assert res.returncode == 0
    rep = json.loads(res.stdout)
    assert rep["tree_type"] == "I"
    assert rep["backend"] == {"p": 5, "type": "p-adic"}


def test_cli_small_verify_runs():
    res = _run(["verify", "--families", "I,II.1", "--samples", "3", "--seed", "9", "--jobs", "1"])
    assert res.returncode == 0, res.stderr
    assert "6/6 samples agree" in res.stdout
