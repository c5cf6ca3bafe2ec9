import json

import pytest

from parasol.cli import main
from parasol.cli.parasolctl import EXIT_FAILED, EXIT_LOAD_ERROR, EXIT_OK


def _check(specs_dir, name, *flags):
    return main(["check", str(specs_dir / name), *flags])


def test_fixed_soliton_exits_ok(specs_dir, capsys) -> None:
    assert _check(specs_dir, "fix_sol.spec") == EXIT_OK
    out = capsys.readouterr().out
    assert "PARASOL CHECK REPORT" in out
    assert "failing: 0" in out
    assert "expanding" in out


def test_potential_metric_exits_ok(specs_dir, capsys) -> None:
    assert _check(specs_dir, "fix_pot.spec", "--format", "json") == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    statuses = {check["check_name"]: check["status"] for check in document["checks"]}
    assert statuses["frame_ricci"] == "PASS"
    assert statuses["solenoidal_quasi_conformal"] == "DEGENERATE-PARAMS"
    assert document["seed"] == 42


def test_unevaluable_vector_field_exits_failed(specs_dir, capsys) -> None:
    assert _check(specs_dir, "log_domain.spec", "--format", "json") == EXIT_FAILED
    document = json.loads(capsys.readouterr().out)
    statuses = {check["check_name"]: check["status"] for check in document["checks"]}
    assert statuses["axioms"] == "PASS"
    assert statuses["conformal_einstein_soliton"] == "ERROR"
    # listed points carry no seed
    assert document["seed"] is None


def test_json_output_is_reproducible(specs_dir, tmp_path) -> None:
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    for target in (first, second):
        code = _check(specs_dir, "fix_pot.spec", "--format", "json", "--seed", "42", "--output", str(target))
        assert code == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


def test_workers_do_not_change_output(specs_dir, tmp_path) -> None:
    serial, threaded = tmp_path / "serial.json", tmp_path / "threaded.json"
    _check(specs_dir, "fix_pot.spec", "--format", "json", "--output", str(serial))
    _check(specs_dir, "fix_pot.spec", "--format", "json", "--workers", "3", "--output", str(threaded))
    assert serial.read_text() == threaded.read_text()


def test_load_errors_exit_two(specs_dir, tmp_path, capsys) -> None:
    assert _check(tmp_path, "missing.spec") == EXIT_LOAD_ERROR
    bad = tmp_path / "bad.spec"
    bad.write_text("dimension = 5\n", encoding="utf-8")
    assert main(["check", str(bad)]) == EXIT_LOAD_ERROR
    assert "line 1" in capsys.readouterr().err
    assert _check(specs_dir, "flat.spec", "--checks", "axioms,nonsense") == EXIT_LOAD_ERROR
    assert _check(specs_dir, "flat.spec", "--tolerance", "-1") == EXIT_LOAD_ERROR


def test_tolerance_flag_beats_environment(specs_dir, monkeypatch, capsys) -> None:
    monkeypatch.setenv("PARASOL_TOLERANCE", "1e-3")
    _check(specs_dir, "flat.spec", "--format", "json", "--checks", "classification")
    assert json.loads(capsys.readouterr().out)["tolerance"] == 1e-3
    _check(specs_dir, "flat.spec", "--format", "json", "--checks", "classification", "--tolerance", "1e-5")
    assert json.loads(capsys.readouterr().out)["tolerance"] == 1e-5
    monkeypatch.setenv("PARASOL_TOLERANCE", "banana")
    _check(specs_dir, "flat.spec", "--format", "json", "--checks", "classification")
    assert json.loads(capsys.readouterr().out)["tolerance"] == 1e-7


def test_points_and_checks_flags(specs_dir, capsys) -> None:
    code = _check(specs_dir, "fix_pot.spec", "--format", "json", "--points", "3", "--checks", "all")
    assert code == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert len(document["checks"]) == 15
    axioms = document["checks"][0]
    assert axioms["check_name"] == "axioms"
    assert axioms["points_checked"] == 3


def test_eval_ricci_at_origin(specs_dir, capsys) -> None:
    code = main(["eval", str(specs_dir / "fix_pot.spec"), "--point", "0,0,0,0", "--quantity", "ricci"])
    assert code == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["valence"] == [0, 2]
    assert document["components"][0][2] == pytest.approx(-4.0, abs=1e-6)


def test_eval_failures(specs_dir, capsys) -> None:
    spec = str(specs_dir / "log_domain.spec")
    assert main(["eval", spec, "--point", "0,0.1,0.2,0.1", "--quantity", "soliton"]) == EXIT_FAILED
    assert main(["eval", spec, "--point", "0,0.1", "--quantity", "ricci"]) == EXIT_FAILED
    assert main(["eval", spec, "--point", "a,b,c,d", "--quantity", "ricci"]) == EXIT_LOAD_ERROR
    capsys.readouterr()


def test_builtins_listing(capsys) -> None:
    assert main(["builtins"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "flat" in out
    assert "potential" in out
    assert "Families: 2" in out
