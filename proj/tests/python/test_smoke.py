import json
import math
import os
import subprocess

import numpy as np
import pytest

import torusmirror as tm

RE = np.zeros((2, 2))
IM = np.eye(2)
ZERO = np.zeros((2, 2), dtype=np.int32)


def test_gcs_invariants_and_mirror():
    re = np.array([[0.2, 0.1], [0.0, -0.3]])
    im = np.array([[1.1, 0.2], [0.2, 0.8]])
    for g in (tm.gcs_from_complex(re, im), tm.gcs_from_kahler(re, im)):
        sq, pair = tm.gcs_defects(tm.mirror(g))
        assert sq < 1e-10 and pair < 1e-10
    period = tm.extract_period_matrix(tm.mirror(tm.gcs_from_kahler(re, im)))
    assert np.allclose(period, 1j * np.linalg.inv(im.T), atol=1e-10)


def test_pfaffian_and_phase():
    a = np.array([[0, 2, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 3], [0, 0, -3, 0]], dtype=complex)
    assert abs(tm.pfaffian(a) - 6) < 1e-12
    assert tm.phase_mod_pi(-1 - 1j) == pytest.approx(3 * math.pi / 4)


def test_objects_and_phases():
    re = np.array([[0.0, 0.5], [0.5, 0.0]])
    nil = np.array([[0, 1], [0, 0]], dtype=np.int32)
    assert not tm.is_holomorphic(re, IM, ZERO, nil)
    assert not tm.is_fukaya_object(re, IM, ZERO, nil)
    eye = np.eye(2, dtype=np.int32)
    assert tm.is_holomorphic(RE, IM, ZERO, eye)
    exists_d, theta_d = tm.dhym_phase(RE, IM, ZERO, eye)
    exists_s, theta_s = tm.slag_phase(RE, IM, ZERO, eye)
    assert exists_d and exists_s
    assert theta_d == pytest.approx(math.pi / 2)
    assert theta_s == pytest.approx(math.pi / 2)
    with pytest.raises(tm.Error, match="NotHolomorphic"):
        tm.dhym_phase(re, IM, ZERO, nil)


def test_mirror_undefined_raises():
    tau = np.array([[0, 1], [-1, 0]], dtype=np.int32)
    with pytest.raises(tm.Error, match="MirrorUndefined"):
        tm.mirror_period(RE, IM, tau)


def test_gerbe_cocycle():
    ok, triples = tm.verify_zero_connection(1, np.array([[2]], dtype=np.int32), "1/24")
    assert ok and triples == 441


def test_run_suite_from_dict():
    report = tm.run_suite({"n": 1, "T": {"re": [[0]], "im": [[1]]}, "random_objects": 2}, "gcs")
    assert report["summary"]["failed"] == 0
    assert "all" in tm.suite_names()


def test_reference_config_objects_suite():
    path = os.environ.get("TORUSMIRROR_REFERENCE_CONFIG")
    if not path:
        pytest.skip("reference config not provided")
    with open(path) as f:
        text = f.read()
    report = tm.run_suite(text, "objects")
    assert report["summary"]["failed"] == 0
    json.loads(tm.mirror_summary(text))


def test_bad_config_raises():
    with pytest.raises(tm.Error, match="positive definite"):
        tm.run_suite({"n": 1, "T": {"re": [[0]], "im": [[-1]]}})


@pytest.mark.parametrize(
    "args,code",
    [
        (["verify", "gcs", "--config", "{ref}"], 0),
        (["verify", "gcs", "--config", "{ref}", "--tol-abs", "1e-30", "--tol-phase", "1e-30"], 1),
        (["verify", "all", "--config", "{data}/bad_im.json"], 2),
        (["verify", "all", "--config", "{data}/does_not_exist.json"], 2),
        (["verify", "nonsense", "--config", "{ref}"], 2),
        (["mirror", "--config", "{ref}", "--json"], 0),
    ],
)
def test_cli_exit_codes(args, code):
    cli = os.environ.get("TORUSMIRROR_CLI")
    ref = os.environ.get("TORUSMIRROR_REFERENCE_CONFIG")
    if not cli or not ref:
        pytest.skip("CLI path not provided")
    data = os.path.join(os.path.dirname(os.path.dirname(__file__)), "data")
    argv = [cli] + [a.format(ref=ref, data=data) for a in args]
    result = subprocess.run(argv, capture_output=True, text=True)
    assert result.returncode == code, result.stdout + result.stderr
