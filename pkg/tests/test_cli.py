import json

import pytest

from twistorlines.cli import EXIT_INVARIANT, EXIT_OK, EXIT_REFUSED, EXIT_USAGE, main
from twistorlines.manifest import payload_without_timing
from twistorlines.polyring import PolyForm, j_form


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fiber(capsys):
    code, out, _ = run(["fiber", "--q1", "1/2+1/3i", "--q2", "2"], capsys)
    doc = json.loads(out)
    assert code == EXIT_OK and doc["is_twistor"]
    assert doc["manifest"]["command"] == "fiber"


def test_fiber_rejects_float_literal(capsys):
    code, _, err = run(["fiber", "--q1", "0.5", "--q2", "1"], capsys)
    assert code == EXIT_USAGE and err


def test_unknown_command_is_usage_error(capsys):
    assert run(["frobnicate"], capsys)[0] == EXIT_USAGE


def test_nu_csv_and_json(capsys, tmp_path):
    code, out, _ = run(["nu", "--max-d", "5"], capsys)
    rows = out.strip().splitlines()
    assert code == EXIT_OK and rows[0].startswith("d,nu,")
    assert [int(r.split(",")[1]) for r in rows[1:]] == [1, 3, 4, 6, 9]
    path = tmp_path / "nu.json"
    assert main(["nu", "--max-d", "3", "--format", "json", "--out", str(path)]) == EXIT_OK
    assert [r["nu"] for r in json.loads(path.read_text())["rows"]] == [1, 3, 4]


def test_build_refuses_empty_system(capsys):
    code, _, err = run(["build", "--k", "5", "--d", "3", "--seed", "1"], capsys)
    assert code == EXIT_REFUSED and "h0 = 0" in err


def test_build_refuses_odd_j_invariant(capsys):
    code, _, err = run(["build", "--k", "2", "--d", "3", "--j-invariant"], capsys)
    assert code == EXIT_REFUSED and "odd" in err


def test_build_refuses_even_h0_without_symmetrize(capsys):
    code, _, err = run(["build", "--k", "5", "--d", "4", "--j-invariant", "--seed", "2"], capsys)
    assert code == EXIT_REFUSED and "even" in err
    code, out, _ = run(["build", "--k", "5", "--d", "4", "--j-invariant", "--symmetrize", "--seed", "2"], capsys)
    assert code == EXIT_OK and json.loads(out)["j_invariant"]


def test_build_j_invariant_quartic_and_analyze(tmp_path, capsys):
    path = tmp_path / "quartic.json"
    assert main(["build", "--k", "6", "--d", "4", "--j-invariant", "--seed", "3", "--out", str(path)]) == EXIT_OK
    doc = json.loads(path.read_text())
    assert doc["cohomology"]["h0"] == 5 and doc["j_invariant"] and doc["containment_verified"]
    f = PolyForm.from_json(doc["surface"])
    assert j_form(f) == f
    assert doc["manifest"]["outputs"] == [str(path)]
    out = tmp_path / "report.json"
    code = main(["analyze", "--surface", str(path), "--seed", "0", "--probe-starts", "200", "--out", str(out)])
    assert code == EXIT_OK
    rep = json.loads(out.read_text())["report"]
    assert all(rep["input_lines_found"]) and rep["n_twistor"] >= 6
    assert rep["irreducibility"]["status"] == "Certified"


def test_build_is_deterministic(tmp_path):
    path = tmp_path / "a.json"
    docs = []
    for _ in range(2):
        assert main(["build", "--k", "4", "--d", "3", "--seed", "9", "--out", str(path)]) == EXIT_OK
        docs.append(payload_without_timing(json.loads(path.read_text())))
    assert docs[0] == docs[1]


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("TWISTOR_SEED", "17")
    code, out, _ = run(["build", "--k", "2", "--d", "2"], capsys)
    assert code == EXIT_OK and json.loads(out)["manifest"]["seed"] == 17


def test_analyze_rejects_wrong_order(tmp_path, capsys):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"degree": 2, "order": "lex", "coeffs": []}))
    assert run(["analyze", "--surface", str(path)], capsys)[0] == EXIT_USAGE


def test_verify_quick_subset_reports_failure(monkeypatch, capsys):
    import twistorlines.acceptance as acc

    failing = acc.CheckResult(1, "nu tables", False, "forced")
    monkeypatch.setattr(acc, "run_checks", lambda level: [failing])
    code, _, err = run(["verify", "--level", "quick"], capsys)
    assert code == EXIT_INVARIANT and "1 nu tables" in err
