import csv
import io
import json

import pytest

from dunklosc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_hermite_json(capsys):
    code, out, _ = run(
        capsys, "eval", "hermite", "--alpha", "0.5", "--n", "3", "--points", "0.5,1.0,2.0"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "dunklosc/1"
    assert doc["config"]["alpha"] == [0.5]
    assert len(doc["results"]) == 3
    assert doc["summary"]["n_rows"] == 3
    assert all("value" in r for r in doc["results"])


def test_eval_heat_csv(capsys):
    code, out, _ = run(
        capsys,
        "eval", "heat", "--alpha", "0.3,1.7", "--x", "0.6,1.2", "--y", "1.4,0.8",
        "--t", "0.25,0.5", "--format", "csv",
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 2
    assert float(rows[0]["value"]) > 0


def test_eval_kernel_both_routes(capsys):
    code, out, _ = run(
        capsys,
        "eval", "kernel", "--alpha", "0.5", "--eps", "1", "--gamma", "1.0",
        "--x", "1.0", "--y", "2.0", "--route", "both",
    )
    assert code == 0
    doc = json.loads(out)
    rec = doc["results"][0]
    assert rec["route_diff"] < 1e-6
    assert abs(rec["zeta_route"]["re"]) + abs(rec["zeta_route"]["im"]) > 0


def test_bad_alpha_exits_2(capsys):
    code, _, err = run(
        capsys, "eval", "hermite", "--alpha", "-0.6", "--n", "0", "--points", "1.0"
    )
    assert code == 2
    assert "alpha" in err


def test_dimension_mismatch_exits_2(capsys):
    code, _, _ = run(
        capsys, "eval", "hermite", "--alpha", "0.5,0.5", "--n", "1", "--points", "1.0,1.0"
    )
    assert code == 2


def test_unknown_suite_exits_2(capsys):
    code, _, err = run(capsys, "verify", "no-such-suite")
    assert code == 2
    assert "unknown suite" in err


def test_verify_quick_suite_passes(capsys):
    code, out, err = run(capsys, "verify", "orthonormality", "--quick")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["all_passed"] is True
    assert "[PASS]" in err and "[FAIL]" not in err


def test_verify_duality_override(capsys):
    code, out, _ = run(
        capsys, "verify", "duality", "--N", "200", "--gamma", "1.0", "--tol", "0.5"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["config"]["N"] == 200


def test_sweep_requires_alpha(capsys):
    code, _, err = run(capsys, "sweep", "mlem")
    assert code == 2
    assert "alpha" in err


def test_sweep_mlem_json(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"alpha": [0.5], "samples": 500}))
    code, out, _ = run(capsys, "sweep", "mlem", "--config", str(cfg))
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["all_finite"] is True
    assert doc["summary"]["c_emp"] > 0


def test_sweep_growth_small_grid(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"alpha": [0.5], "eps": [0], "gamma": 1.0, "counts": 3}))
    code, out, _ = run(capsys, "sweep", "growth", "--config", str(cfg))
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["all_finite"] is True
    assert len(doc["results"]) == doc["summary"]["n_points"]


def test_fixtures_pass_and_fail(capsys, tmp_path):
    good = {
        "schema": "dunklosc-fixtures/1",
        "generator": "test",
        "fixtures": [
            {"id": "ev", "op": "eigenvalue", "inputs": {"n": [1], "alpha": [0.5]},
             "expected": 5.0, "precision": 17, "rtol": 1e-14, "anchor": "exact"},
        ],
    }
    p = tmp_path / "good.json"
    p.write_text(json.dumps(good))
    code, out, _ = run(capsys, "fixtures", "--file", str(p))
    assert code == 0

    bad = dict(good)
    bad["fixtures"] = [dict(good["fixtures"][0], expected=5.01)]
    p2 = tmp_path / "bad.json"
    p2.write_text(json.dumps(bad))
    code, out, err = run(capsys, "fixtures", "--file", str(p2))
    assert code == 1
    assert "[FAIL]" in err


def test_fixtures_missing_file_exits_2(capsys):
    code, _, _ = run(capsys, "fixtures", "--file", "/nonexistent.json")
    assert code == 2


def test_out_file_writing(capsys, tmp_path):
    dest = tmp_path / "out.json"
    code, out, _ = run(
        capsys, "eval", "hermite", "--alpha", "0.0", "--n", "0",
        "--points", "1.0", "--out", str(dest),
    )
    assert code == 0 and out == ""
    doc = json.loads(dest.read_text())
    assert doc["schema"] == "dunklosc/1"
