import json
import math

import jsonschema
import pytest

from motive_selberg import schemas
from motive_selberg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


@pytest.fixture
def spectrum(tmp_path):
    path = tmp_path / "spec.csv"
    path.write_text("length,multiplicity\n2.0,1\n")
    return str(path)


# -- motive -------------------------------------------------------------------------

def test_motive_examples(capsys):
    code, data = run_json(capsys, "motive", "x + 1")
    assert code == 0
    jsonschema.validate(data, schemas.MOTIVE_REPORT)
    assert data["automorphy"] == {"C": 1, "D": 1} and data["order"] == 0
    code, data = run_json(capsys, "motive", "1 - 2x^-1 + x^-2")
    assert data["automorphy"] == {"C": 1, "D": -2} and data["order"] == 2
    assert data["derivatives_at_one"][:2] == [0, 0]


def test_motive_text_and_degenerate(capsys):
    code, out, _ = run(capsys, "motive", "x + 2")
    assert code == 0 and "not automorphic" in out
    code, data = run_json(capsys, "motive", "0")
    assert data["automorphy"] == "degenerate" and data["order"] == "infinite"


def test_motive_leading_minus(capsys):
    code, out, _ = run(capsys, "motive", "--format", "json", "--", "-x + 1")
    assert code == 0 and json.loads(out)["automorphy"] == {"C": -1, "D": 1}


def test_motive_parse_error(capsys):
    code, _, err = run(capsys, "motive", "x +")
    assert code == 1 and "column 4" in err


# -- certify ------------------------------------------------------------------------

def test_certify_simple(capsys):
    code, data = run_json(capsys, "certify", "so", "1", "2", "--symmetrize", "1")
    assert code == 0
    jsonschema.validate(data, schemas.CERTIFICATE)
    assert data["verdict"] == "simple_fe" and data["reflection"] == {"C": 1, "point": 1}


def test_certify_exit_codes(capsys):
    assert run(capsys, "certify", "so", "1", "2", "--motive", "x + 1")[0] == 2
    assert run(capsys, "certify", "su", "2", "1", "--motive", "x + 2")[0] == 3
    assert run(capsys, "certify", "so", "1", "2")[0] == 1
    assert run(capsys, "certify", "so", "1", "2", "--motive", "1", "--symmetrize", "1")[0] == 1
    assert run(capsys, "certify", "so", "0", "2", "--motive", "1")[0] == 1
    assert run(capsys, "certify", "e8", "1", "1", "--motive", "1")[0] == 1


def test_certify_text(capsys):
    code, out, _ = run(capsys, "certify", "sp", "1", "1", "--symmetrize", "x", "--sym-order", "4")
    assert code == 0
    assert "verdict     : simple_fe" in out and "S_M(f)      = +1" in out


# -- verify -------------------------------------------------------------------------

def test_verify_ladder(capsys):
    code, data = run_json(capsys, "verify", "ladder", "--rmax", "4")
    assert code == 0 and data["passed"]
    jsonschema.validate(data, schemas.SUITE_REPORT)
    assert len(data["cases"]) == 60


def test_verify_failure_exit_code(capsys):
    code, data = run_json(capsys, "verify", "s1", "--tol", "1e-30")
    assert code == 4 and not data["passed"]


def test_verify_errors(capsys):
    assert run(capsys, "verify", "nosuch")[0] == 1
    assert run(capsys, "verify", "s1", "--rmax", "3")[0] == 1
    assert run(capsys, "verify", "s1", "--tol", "-1")[0] == 1


def test_verify_seed_is_deterministic(capsys):
    first = run(capsys, "verify", "s1", "--seed", "7", "--format", "json")[1]
    second = run(capsys, "verify", "s1", "--seed", "7", "--format", "json")[1]
    other = run(capsys, "verify", "s1", "--seed", "8", "--format", "json")[1]
    assert first == second != other


def test_verify_parity(capsys):
    code, out, _ = run(capsys, "verify", "parity")
    assert code == 0 and out.startswith("suite parity: PASS")


# -- space / sf -----------------------------------------------------------------------

def test_space_info(capsys):
    code, data = run_json(capsys, "space", "info", "su", "2", "3")
    assert code == 0
    jsonschema.validate(data, schemas.SPACE_INFO)
    assert data["exponents"] == [1, 4, 1] and data["rho2"] == 2 and data["parity"] == "even"
    code, data = run_json(capsys, "space", "info", "f4", "1")
    assert data["exponents"] == [1, 10, 28, 28, 10, 1] and data["rho2"] == 11
    assert run(capsys, "space", "info", "so", "1")[0] == 1


def test_sf_eval(capsys):
    code, data = run_json(capsys, "sf", "eval", "sine", "1", "0.5")
    assert code == 0
    jsonschema.validate(data, schemas.EVAL_RESULT)
    assert abs(data["value_re"] - 2) <= 1e-12 and data["value_im"] == 0
    code, data = run_json(capsys, "sf", "eval", "hurwitz", "2", "1")
    assert abs(data["value_re"] - math.pi**2 / 6) <= 1e-12
    code, data = run_json(capsys, "sf", "eval", "hurwitz-ds", "0", "1")
    assert abs(data["value_re"] + math.log(2 * math.pi) / 2) <= 1e-12
    code, data = run_json(capsys, "sf", "eval", "log-gamma", "1", "3")
    assert abs(data["value_re"] - (math.log(2) - math.log(2 * math.pi) / 2)) <= 1e-12


def test_sf_eval_errors(capsys):
    assert run(capsys, "sf", "eval", "sine", "2", "2.5")[0] == 1
    assert run(capsys, "sf", "eval", "sine", "1.5", "0.5")[0] == 1
    assert run(capsys, "sf", "eval", "hurwitz", "1", "0.5")[0] == 1
    assert run(capsys, "sf", "eval", "hurwitz", "abc", "0.5")[0] == 1


def test_precision_flag_and_env(capsys, monkeypatch):
    code, data = run_json(capsys, "sf", "eval", "sine", "1", "0.25", "--precision", "high:40")
    assert code == 0 and abs(data["value_re"] - math.sqrt(2)) <= 1e-15
    monkeypatch.setenv("MOTIVE_SELBERG_PRECISION", "30")
    assert run(capsys, "sf", "eval", "sine", "1", "0.25")[0] == 0
    assert run(capsys, "sf", "eval", "sine", "1", "0.25", "--precision", "lots")[0] == 1


# -- zeta -------------------------------------------------------------------------------

def test_zeta(capsys, spectrum):
    code, data = run_json(capsys, "zeta", spectrum, "2", "-N", "0")
    assert code == 0
    jsonschema.validate(data, schemas.ZETA_REPORT)
    assert abs(data["value_re"] - (1 - math.exp(-4))) <= 1e-15
    assert data["length_cut"] is None and not data["divergent"]


def test_zeta_motive(capsys, spectrum):
    code, data = run_json(capsys, "zeta", spectrum, "4", "-N", "0", "--motive", "x")
    jsonschema.validate(data, schemas.ZETA_REPORT)
    assert abs(data["value_re"] - (1 - math.exp(-6))) <= 1e-15


def test_zeta_refuses_outside_region(capsys, spectrum):
    code, _, err = run(capsys, "zeta", spectrum, "0.8")
    assert code == 1 and "--force" in err
    assert run(capsys, "zeta", spectrum, "2.5", "--motive", "x^2")[0] == 1
    code, data = run_json(capsys, "zeta", spectrum, "0.8", "--force")
    assert code == 0 and data["divergent"]


def test_zeta_io_errors(capsys, tmp_path):
    assert run(capsys, "zeta", str(tmp_path / "missing.csv"), "2")[0] == 1
    bad = tmp_path / "bad.csv"
    bad.write_text("length,multiplicity\n-1,1\n")
    code, _, err = run(capsys, "zeta", str(bad), "2")
    assert code == 1 and "line 2" in err


def test_out_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "space", "info", "sp", "2", "1", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["exponents"] == [1, 6, 6, 1]


def test_unknown_command(capsys):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys)[0] == 1
