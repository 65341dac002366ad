from __future__ import annotations

import csv
import json
import os
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from solitary.cli import (EXIT_ANALYSIS, EXIT_CERT, EXIT_OK, EXIT_USAGE, RunManifest, canonical_bytes, main,
                          parse_poly, sha256_file)
from solitary.polycore import Polynomial, poly_from_json


def _load(path):
    return json.loads(path.read_text())


def _random_points(rng, n, nvars):
    return [tuple(Fraction(int(rng.integers(-50, 51)), int(rng.integers(1, 20))) for _ in range(nvars))
            for _ in range(n)]


@pytest.mark.parametrize("argv,obj", [
    (["construct", "tchebychev", "--d", "9"], "polynomial"),
    (["construct", "pecker", "--d", "5"], "polynomial"),
    (["construct", "folding", "--d", "3"], "polynomial"),
    (["construct", "real-folding", "--d", "3"], "polynomial"),
    (["construct", "chmutov", "--d", "4", "--real"], "surface"),
    (["construct", "conic-pair"], "polynomial"),
    (["construct", "a2km1-curve", "--d", "5", "--k", "1"], "polynomial"),
    (["construct", "separable", "--f", "x^2 + y^2", "--g=-z^2"], "surface"),
])
def test_construct_round_trip(tmp_path, rng, argv, obj):
    out = tmp_path / "c.json"
    assert main(argv + ["--out", str(out)]) == EXIT_OK
    doc = _load(out)
    assert doc["object"] == obj and doc["certificate"]["passed"]
    polys = [doc["polynomial"]] if obj == "polynomial" else [doc["surface"]["f"], doc["surface"]["g"]]
    for pj in polys:
        p = poly_from_json(pj)
        again = poly_from_json(json.loads(json.dumps(pj)))
        for pt in _random_points(rng, 100, p.nvars):
            assert again.eval(pt) == p.eval(pt)


def test_construct_tchebychev_zero_is_one(tmp_path):
    out = tmp_path / "t0.json"
    assert main(["construct", "tchebychev", "--d", "0", "--out", str(out)]) == EXIT_OK
    assert poly_from_json(_load(out)["polynomial"]) == Polynomial.const(1, ("z",))


def test_construct_degenerate_may_be_float(tmp_path):
    out = tmp_path / "dt.json"
    assert main(["construct", "degenerate-tchebychev", "--d", "7", "--k", "2", "--out", str(out)]) == EXIT_OK
    assert _load(out)["certificate"]["passed"]


@pytest.mark.parametrize("argv", [
    ["construct", "nonsense"],
    ["construct", "pecker"],
    ["construct", "pecker", "--d", "2"],
    ["construct", "separable", "--f", "x^2"],
    ["construct", "separable", "--f", "x^", "--g", "z"],
    ["bounds"],
    ["bounds", "--audit-quadrangle", "k=two"],
    ["analyze"],
    ["frobnicate"],
])
def test_usage_errors_exit_one(argv, capsys):
    assert main(argv) == EXIT_USAGE


def test_construct_certification_failure_exits_two(tmp_path):
    out = tmp_path / "t.json"
    # a negative tolerance cannot be met
    assert main(["construct", "tchebychev", "--d", "5", "--tol", "-1", "--out", str(out)]) == EXIT_CERT
    assert _load(out)["certificate"]["passed"] is False


def test_analyze_cone_expression(tmp_path):
    out = tmp_path / "a.json"
    assert main(["analyze", "--expr", "x^2 + y^2 - z^2", "--out", str(out)]) == EXIT_OK
    assert _load(out)["census"]["counts"]["A1_minus"] == 1


def test_analyze_pecker_sextic_with_plot_data(tmp_path):
    src, out, plot = tmp_path / "p6.json", tmp_path / "r.json", tmp_path / "grid.csv"
    assert main(["construct", "pecker", "--d", "6", "--out", str(src)]) == EXIT_OK
    assert main(["analyze", str(src), "--out", str(out), "--grid", "40", "--emit-plot-data", str(plot)]) == EXIT_OK
    assert _load(out)["census"]["counts"]["solitary"] == 10
    rows = list(csv.reader(plot.open()))
    assert rows[0] == ["x", "y", "value", "sign"]
    assert len(rows) == 1 + 40 * 40


def test_analyze_surface_plot_slices(tmp_path):
    src, out, plot = tmp_path / "c.json", tmp_path / "r.json", tmp_path / "grid.csv"
    main(["construct", "chmutov", "--d", "3", "--real", "--out", str(src)])
    assert main(["analyze", str(src), "--out", str(out), "--grid", "20", "--emit-plot-data", str(plot)]) == EXIT_OK
    rows = list(csv.reader(plot.open()))
    assert rows[0] == ["z", "x", "y", "value", "sign"]
    assert (len(rows) - 1) % 400 == 0


def test_analyze_non_isolated_exits_three(tmp_path):
    out = tmp_path / "a.json"
    assert main(["analyze", "--expr", "(x^2 + y^2 - 1)^2", "--out", str(out)]) == EXIT_ANALYSIS
    assert "error" in _load(out)


def test_analyze_degenerate_point_exits_three(tmp_path):
    out = tmp_path / "a.json"
    assert main(["analyze", "--expr", "x^2 + y^2 + z^3", "--out", str(out)]) == EXIT_ANALYSIS


def test_bounds_table_formats(tmp_path, capsys):
    assert main(["bounds", "--table1", "--format", "csv"]) == EXIT_OK
    text = capsys.readouterr().out
    assert text.splitlines()[0].startswith("degree,")
    assert "63???" in text
    out = tmp_path / "t.json"
    assert main(["bounds", "--table1", "--format", "json", "--out", str(out)]) == EXIT_OK
    assert len(_load(out)["table1"]) == 8


def test_bounds_audit_key_value_syntax(tmp_path):
    out = tmp_path / "q.json"
    assert main(["bounds", "--audit-quadrangle", "k=2", "trials=30", "seed=42", "--out", str(out)]) == EXIT_OK
    audit = _load(out)["audit"]
    assert audit["k"] == 2 and audit["trials"] == 30 and audit["ok"]


def test_deform_and_certificate_determinism(tmp_path):
    digests = []
    for tag in ("a", "b"):
        f, cert = tmp_path / f"f_{tag}.json", tmp_path / f"c_{tag}.json"
        assert main(["deform", "--degree", "3", "--out", str(f), "--certificate", str(cert)]) == EXIT_OK
        digests.append((sha256_file(f), sha256_file(cert)))
    assert digests[0] == digests[1]
    assert _load(tmp_path / "c_a.json")["passed"]


def test_pipeline_manifest(tmp_path):
    out = tmp_path / "run"
    assert main(["pipeline", "3", str(out)]) == EXIT_OK
    man = _load(out / "manifest.json")
    assert man["summary"]["solitary"] >= 1
    assert set(man["certificate_digests"]) == {"deform_certificate.json", "census.json"}
    m = RunManifest(**man)
    assert m.verify() == []
    (out / "census.json").write_text("{}")
    assert m.verify() == [str(out / "census.json")]


def test_canonical_json_is_stable():
    a = canonical_bytes({"b": 1.0, "a": [Fraction(1, 3), float("inf"), np.float64(2.5)]})
    b = canonical_bytes({"a": [Fraction(1, 3), float("inf"), np.float64(2.5)], "b": 1.0})
    assert a == b
    assert json.loads(a)["a"] == ["1/3", "inf", 2.5]


def test_parse_poly():
    x, y = Polynomial.gens("x", "y")
    assert parse_poly("x^2 - 1/3*y + 2", ("x", "y")) == x ** 2 - Fraction(1, 3) * y + 2
    assert parse_poly("(x + y)^2", ("x", "y")) == (x + y) ** 2


def test_module_entry_point_with_thread_cap():
    env = dict(os.environ, FORGE_THREADS="1")
    r = subprocess.run([sys.executable, "-m", "solitary", "--version"], env=env, capture_output=True, text=True)
    assert r.returncode == 0 and "solitary" in r.stdout
    r = subprocess.run([sys.executable, "-c", "import os, solitary.cli; print(os.environ['OPENBLAS_NUM_THREADS'])"],
                       env={k: v for k, v in env.items() if k != "OPENBLAS_NUM_THREADS"},
                       capture_output=True, text=True)
    assert r.stdout.strip() == "1"
