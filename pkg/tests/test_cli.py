import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from irrcorr.cli import main, parse_state

STATES = Path(__file__).resolve().parents[1] / "demos" / "states"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, spec):
    path = tmp_path / name
    path.write_text(json.dumps(spec))
    return path


def test_decompose_maximally_mixed(capsys):
    code, out, _ = run(capsys, "decompose", STATES / "maximally_mixed.json")
    rep = json.loads(out)
    assert code == 0
    assert all(abs(rep[k]) < 1e-12 for k in ("c2", "c3", "c_total"))


def test_decompose_counterexample_files(capsys):
    _, out, _ = run(capsys, "decompose", STATES / "rho_initial.json")
    assert json.loads(out)["c3"] < 1e-7
    _, out, _ = run(capsys, "decompose", STATES / "rho_final.json", "--json")
    rep = json.loads(out)
    assert rep["c3"] > 1e-6
    assert rep["definition_gap"] < 1e-6
    assert {"iterations", "residual"} <= rep["projections"][0].keys()


def test_decompose_bits(capsys):
    _, nats, _ = run(capsys, "decompose", STATES / "rho_final.json")
    _, bits, _ = run(capsys, "decompose", STATES / "rho_final.json", "--bits")
    assert json.loads(bits)["c_total"] == pytest.approx(json.loads(nats)["c_total"] / np.log(2), rel=1e-10)


def test_verbose_trace(capsys):
    code, _, err = run(capsys, "decompose", STATES / "rho_initial.json", "--verbose-trace")
    assert code == 0 and "residual" in err


def test_nonconvergence_exit(capsys):
    code, _, err = run(capsys, "decompose", STATES / "rho_final.json", "--max-iter", "1")
    assert code == 3 and "residual" in err


def test_convert_round_trip(capsys, tmp_path):
    _, theta_out, _ = run(capsys, "convert", STATES / "rho_initial.json", "--to", "eta")
    eta_file = write(tmp_path, "eta.json", json.loads(theta_out))
    _, back, _ = run(capsys, "convert", eta_file, "--to", "theta")
    theta = json.loads(back)["theta"]
    expected = json.loads((STATES / "rho_initial.json").read_text())["theta"]
    for k in set(theta) | set(expected):
        assert theta.get(k, 0.0) == pytest.approx(expected.get(k, 0.0), abs=1e-9)


def test_convert_matrix_round_trip(capsys, tmp_path):
    _, out, _ = run(capsys, "convert", STATES / "rho_final.json", "--to", "matrix")
    spec = json.loads(out)
    assert len(spec["matrix"]) == 64 and len(spec["matrix"][0]) == 2
    path = write(tmp_path, "m.json", spec)
    _, out2, _ = run(capsys, "convert", path, "--to", "eta")
    eta = json.loads(out2)["eta"]
    assert eta["331"] == pytest.approx(np.tanh(1) ** 3 / np.sqrt(2), abs=1e-9)


def test_convert_final_theta_matches_reference_values(capsys):
    _, out, _ = run(capsys, "convert", STATES / "rho_final.json", "--to", "theta")
    theta = json.loads(out)["theta"]
    for k, v in {"001": 0.650, "033": 0.336, "303": 0.336, "330": 0.543, "331": 0.048}.items():
        assert abs(theta[k] - v) <= 1e-3


def test_invalid_eta(capsys, tmp_path):
    path = write(tmp_path, "bad.json", {"n": 1, "eta": {"3": 2.0}})
    code, _, err = run(capsys, "convert", path, "--to", "theta")
    assert code == 2 and "not a legitimate state" in err


@pytest.mark.parametrize(
    "spec",
    [
        {"n": 1},
        {"n": 1, "theta": {"3": 1}, "eta": {"3": 0.1}},
        {"n": 2, "theta": {"333": 1}},
        {"n": 9, "theta": {}},
        {"n": 1, "matrix": [[1, 0], [0, 0]]},
    ],
)
def test_malformed_specs(capsys, tmp_path, spec):
    code, _, _ = run(capsys, "entropy", write(tmp_path, "s.json", spec))
    assert code == 2


def test_rank_deficient_theta_conversion(capsys, tmp_path):
    path = write(tmp_path, "pure.json", {"n": 1, "matrix": [[1, 0], [0, 0], [0, 0], [0, 0]]})
    code, _, err = run(capsys, "convert", path, "--to", "theta")
    assert code == 2 and "rank deficient" in err


def test_counterexample_command(capsys):
    code, out, _ = run(capsys, "counterexample", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    assert {"c3_before", "c3_after"} <= rep.keys()


def test_counterexample_strict_tolerance(capsys):
    code, _, err = run(capsys, "counterexample", "--tol", "1e-12")
    assert code == 4 and "theta^001" in err


def test_random_command(capsys, tmp_path):
    _, a, _ = run(capsys, "random", "--n", 3, "--seed", 7)
    _, b, _ = run(capsys, "random", "--n", 3, "--seed", 7)
    assert a == b
    rho = parse_state(json.loads(a))
    assert np.linalg.eigvalsh(rho)[0] > 0
    _, zero, _ = run(capsys, "random", "--n", 2, "--scale", 0, "--to", "matrix")
    np.testing.assert_allclose(parse_state(json.loads(zero)), np.eye(4) / 4, atol=1e-15)
    code, _, _ = run(capsys, "random", "--n", 5)
    assert code == 2


def test_project_entropy_relent(capsys, tmp_path):
    code, out, _ = run(capsys, "project", STATES / "rho_final.json", "--order", 2)
    proj = json.loads(out)
    assert code == 0 and proj["residual"] <= 1e-9
    assert all(k.count("0") >= 1 for k in proj["theta"])
    _, out, _ = run(capsys, "entropy", STATES / "maximally_mixed.json", "--bits")
    assert json.loads(out)["entropy"] == pytest.approx(3.0, abs=1e-10)
    _, out, _ = run(capsys, "relent", STATES / "rho_final.json", STATES / "rho_final.json")
    assert json.loads(out)["relative_entropy"] == pytest.approx(0, abs=1e-10)
    half = write(tmp_path, "half.json", {"n": 1, "theta": {}})
    code, _, _ = run(capsys, "relent", STATES / "rho_final.json", half)
    assert code == 2


def test_oracle_command(capsys, tmp_path):
    p = np.arange(1, 9) / 36.0
    spec = {"n": 3, "matrix": [[float(p[i]) if i == j else 0.0, 0.0] for i in range(8) for j in range(8)]}
    code, out, _ = run(capsys, "oracle", write(tmp_path, "d.json", spec))
    res = json.loads(out)
    assert code == 0 and res["c2"] + res["c3"] == pytest.approx(res["c_total"], abs=1e-8)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "irrcorr", "decompose", str(STATES / "maximally_mixed.json")],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(proc.stdout)["c_total"] == 0
