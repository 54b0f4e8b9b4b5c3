import json

import numpy as np
import pytest

from gyrokit import endo
from gyrokit.cli import main
from gyrokit.verify import scaled_shear

from oracles import rodrigues


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_add(capsys):
    code, out, _ = run(capsys, "eval", "add", "[0.5,0,0]", "[0.5,0,0]")
    assert code == 0
    assert np.allclose(json.loads(out), [0.8, 0, 0], atol=1e-15)


def test_eval_gamma_factor(capsys):
    code, out, _ = run(capsys, "eval", "gamma-factor", "[0.6,0,0]")
    assert code == 0 and abs(json.loads(out) - 1.25) < 1e-15


def test_eval_bloch_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "eval", "bloch", "[0,0,0.5]")
    obj = json.loads(out)
    assert code == 0 and obj["kind"] == "density"
    assert obj["matrix"] == [[[0.75, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.25, 0.0]]]
    path = tmp_path / "a.json"
    path.write_text(out)
    code, out, _ = run(capsys, "eval", "bloch-inv", str(path))
    assert code == 0 and json.loads(out) == [0.0, 0.0, 0.5]


def test_eval_matrix_ops(capsys):
    half = "[[0.5,0],[0,0.5]]"
    code, out, _ = run(capsys, "eval", "odot", half, "[[0.75,0],[0,0.25]]")
    m = np.array(json.loads(out)["matrix"])
    assert code == 0 and np.allclose(m[..., 0], np.diag([0.75, 0.25]), atol=1e-15)
    code, out, _ = run(capsys, "eval", "tau", "[[0.75,0],[0,0.25]]")
    m = np.array(json.loads(out)["matrix"])
    assert code == 0 and abs(m[0, 0, 0] * m[1, 1, 0] - 1) < 1e-15
    code, out, _ = run(capsys, "eval", "boxdot", "[[2,0],[0,0.5]]", "[[2,0],[0,0.5]]")
    assert code == 0 and json.loads(out)["kind"] == "unitdet"


def test_eval_errors(capsys):
    code, _, err = run(capsys, "eval", "add", "[1,0,0]", "[0,0,0]")
    assert code == 2 and "OutOfBall" in err
    code, _, err = run(capsys, "eval", "add", "[0,0,0]")
    assert code == 2
    code, _, err = run(capsys, "eval", "bloch", "not json")
    assert code == 2 and "malformed" in err
    code, _, err = run(capsys, "eval", "odot", "[[1,0],[0,1]]", "[[0.5,0],[0,0.5]]")
    assert code == 2 and "NotDensity" in err


def test_verify_deterministic(capsys):
    a = run(capsys, "verify", "kim", "--samples", "200", "--json")
    b = run(capsys, "verify", "kim", "--samples", "200", "--json")
    assert a == b and a[0] == 0
    report = json.loads(a[1])
    assert report["schema"] == 1 and report["seed"] == 42 and report["pass"] is True
    assert all({"name", "max_residual", "tolerance", "pass"} <= set(r) for r in report["invariants"])


def test_verify_table(capsys):
    code, out, _ = run(capsys, "verify", "gyro", "--samples", "100")
    assert code == 0 and "PASS" in out


def test_verify_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("GYROKIT_SEED", "7")
    code, out, _ = run(capsys, "verify", "gyro", "--samples", "50", "--json")
    assert json.loads(out)["seed"] == 7
    monkeypatch.setenv("GYROKIT_SEED", "x")
    code, _, _ = run(capsys, "verify", "gyro", "--samples", "50")
    assert code == 2


def test_verify_bad_args(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "gyro", "--samples", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "gyro", "--tol", "-1"])
    assert exc.value.code == 2


def test_classify_descriptors(capsys):
    code, out, _ = run(capsys, "classify", "--input", '{"form": "BallZero"}')
    assert code == 0 and json.loads(out) == {"verdict": "zero"}
    o = rodrigues([0, 0, 1], np.pi / 2)
    code, out, _ = run(capsys, "classify", "--input", json.dumps(endo.BallOrtho(O=o).to_json()))
    obj = json.loads(out)
    assert code == 0 and obj["verdict"] == "orthogonal"
    assert np.max(np.abs(np.array(obj["matrix"]) - o)) < 1e-10
    code, out, _ = run(capsys, "classify", "--input", '{"form": "DInvConj"}')
    obj = json.loads(out)
    assert code == 0 and obj["density_form"]["form"] == "DInvConj"
    assert np.max(np.abs(np.array(obj["matrix"]) + np.eye(3))) < 1e-9
    code, out, _ = run(capsys, "classify", "--input", '{"form": "P21Conj"}')
    assert code == 0 and json.loads(out)["density_form"]["form"] == "DConj"


def test_classify_probe_tables(capsys, tmp_path):
    rng = np.random.default_rng(3)
    path = tmp_path / "shear.json"
    path.write_text(json.dumps(endo.probe_table(scaled_shear, rng)))
    code, out, _ = run(capsys, "classify", "--input", str(path))
    assert code == 1 and json.loads(out)["verdict"] == "unclassified"
    code, _, err = run(capsys, "classify", "--input", '[{"in": [0, 0, 0]}]')
    assert code == 2


def test_classify_errors(capsys):
    code, _, err = run(capsys, "classify", "--input", '{"form": "JTE1"}')
    assert code == 2 and "StructureMismatch" in err
    code, _, err = run(capsys, "classify", "--input", '{"form": "DConj", "U": [[2, 0], [0, 2]]}')
    assert code == 2
