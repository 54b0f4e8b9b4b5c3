import numpy as np
import pytest

from gyrokit import bridges, gyro, matalg
from gyrokit import smallmat as sm
from gyrokit.errors import NotHermitian, NotRotation, NotTraceless, NotUnitary, OutOfBall

from oracles import rodrigues

X = np.array([[0.0, 1.0], [1.0, 0.0]])


def test_bloch_examples():
    assert np.array_equal(bridges.bloch([0, 0, 0]), np.eye(2) / 2)
    assert np.array_equal(bridges.bloch([0, 0, 0.5]), np.diag([0.75, 0.25]))
    assert np.array_equal(bridges.bloch([0.5, 0, 0]), 0.5 * np.array([[1, 0.5], [0.5, 1]]))


def test_bloch_inv_examples():
    assert np.array_equal(bridges.bloch_inv(np.eye(2) / 2), [0, 0, 0])
    assert np.array_equal(bridges.bloch_inv(np.diag([0.75, 0.25])), [0, 0, 0.5])
    v = np.array([0.1, -0.2, 0.3])
    assert np.max(np.abs(bridges.bloch_inv(bridges.bloch(v)) - v)) < 1e-16


def test_bloch_inv_rejects_boundary():
    with pytest.raises(OutOfBall):
        bridges.bloch_inv(np.diag([1.0, 0.0]))


def test_tau_examples():
    assert np.allclose(bridges.tau(np.eye(2) / 2), np.eye(2), atol=1e-15)
    # det = 0.1875, sqrt det = sqrt3 / 4
    want = np.diag([np.sqrt(3), 1 / np.sqrt(3)])
    assert np.max(np.abs(bridges.tau(np.diag([0.75, 0.25])) - want)) < 1e-15


def test_tau_inv_examples(rng):
    assert np.allclose(bridges.tau_inv(np.eye(2)), np.eye(2) / 2, atol=0)
    assert np.max(np.abs(bridges.tau_inv(np.diag([2.0, 0.5])) - np.diag([0.8, 0.2]))) < 1e-16
    a = matalg.sample_density(rng, 1000)
    assert np.max(np.abs(sm.det_herm(bridges.tau(a)) - 1)) < 1e-13
    assert np.max(sm.fro(bridges.tau_inv(bridges.tau(a)) - a)) < 1e-13


def test_gamma_examples():
    assert np.array_equal(bridges.gamma_map([0, 0, 0]), np.zeros((2, 2)))
    assert np.array_equal(bridges.gamma_map([0, 0, 1]), np.diag([1, -1]))
    assert np.array_equal(bridges.gamma_map([1, 0, 0]), X)
    # defined on all of R^3
    assert np.array_equal(bridges.gamma_map([3, 0, 0]), 3 * X)


def test_gamma_inv_examples():
    assert np.array_equal(bridges.gamma_inv(np.zeros((2, 2))), [0, 0, 0])
    assert np.array_equal(bridges.gamma_inv(np.diag([1.0, -1.0])), [0, 0, 1])
    v = np.array([0.2, 0.3, -0.1])
    assert np.array_equal(bridges.gamma_inv(bridges.gamma_map(v)), v)
    with pytest.raises(NotTraceless):
        bridges.gamma_inv(np.eye(2))
    with pytest.raises(NotHermitian):
        bridges.gamma_inv(np.array([[0, 1], [0, 0]]))


def test_adjoint_rotation_examples():
    assert np.allclose(bridges.adjoint_rotation(np.eye(2)), np.eye(3), atol=0)
    assert np.allclose(bridges.adjoint_rotation(X), np.diag([1, -1, -1]), atol=1e-16)
    assert np.allclose(bridges.adjoint_rotation(np.diag([1j, -1j])), np.diag([-1, -1, 1]), atol=1e-16)
    with pytest.raises(NotUnitary):
        bridges.adjoint_rotation(2 * np.eye(2))


def test_adjoint_rotation_matches_rodrigues(rng):
    # exp(-i t/2 n.sigma) acts as the rotation by t about n
    for _ in range(50):
        n = rng.standard_normal(3)
        n /= np.linalg.norm(n)
        t = rng.uniform(0, 2 * np.pi)
        u = np.cos(t / 2) * np.eye(2) - 1j * np.sin(t / 2) * bridges.gamma_map(n)
        assert np.max(np.abs(bridges.adjoint_rotation(u) - rodrigues(n, t))) < 1e-14


def test_su2_lift_examples():
    assert np.allclose(bridges.su2_lift(np.eye(3)), np.eye(2), atol=0)
    u = bridges.su2_lift(np.diag([1.0, -1.0, -1.0]))
    # equals X up to a unit phase
    phase = u[0, 1] / X[0, 1]
    assert abs(abs(phase) - 1) < 1e-15
    assert np.max(np.abs(u - phase * X)) < 1e-15
    assert np.max(np.abs(bridges.adjoint_rotation(u) - np.diag([1, -1, -1]))) < 1e-9


def test_su2_lift_sign_convention(rng):
    r = bridges.sample_rotation(rng, 1000)
    u = bridges.su2_lift(r)
    assert np.all(sm.trace2(u).real >= 0)
    # angle-pi rotation: trace vanishes, first nonzero entry made positive
    u = bridges.su2_lift(rodrigues([0, 1, 1], np.pi))
    flat = u.view(float).ravel()
    assert flat[np.flatnonzero(np.abs(flat) > 1e-12)[0]] > 0


def test_su2_lift_roundtrip_and_rejects(rng):
    for _ in range(100):
        n = rng.standard_normal(3)
        r = rodrigues(n, rng.uniform(0, 2 * np.pi))
        assert np.linalg.norm(bridges.adjoint_rotation(bridges.su2_lift(r)) - r) < 1e-9
    with pytest.raises(NotRotation):
        bridges.su2_lift(-np.eye(3))
    with pytest.raises(NotRotation):
        bridges.su2_lift(np.diag([1.0, 1.0, 1.1]))


def test_proof_identities_seeded(rng):
    u = gyro.sample_velocity(rng, 10_000)
    v = gyro.sample_velocity(rng, 10_000)
    gu, gv = bridges.gamma_map(u), bridges.gamma_map(v)
    assert np.max(np.abs(bridges.herm_inner(gu, gv) - np.sum(u * v, axis=-1))) < 1e-13
    assert np.max(sm.fro(gu - (2 * bridges.bloch(u) - np.eye(2)))) < 1e-14
    inv = sm.inv_herm(bridges.bloch(u))
    lhs = inv / sm.trace2(inv).real[..., None, None]
    assert np.max(sm.fro(lhs - bridges.bloch(-u))) < 1e-12


def test_kim_and_tau_isomorphisms_seeded(rng):
    u = gyro.sample_velocity(rng, 10_000)
    v = gyro.sample_velocity(rng, 10_000)
    a, b = bridges.bloch(u), bridges.bloch(v)
    assert np.max(sm.fro(bridges.bloch(gyro.einstein_add(u, v)) - matalg.odot(a, b))) < 1e-12
    lhs = bridges.tau(matalg.odot(a, b))
    rhs = matalg.boxdot(bridges.tau(a), bridges.tau(b))
    # scale-relative form; the absolute 1e-12 form is an acceptance criterion
    assert np.max(sm.fro(lhs - rhs) / sm.fro(lhs)) < 1e-13


def test_adjoint_is_homomorphism(rng):
    u = bridges.sample_unitary(rng, 1000)
    w = bridges.sample_unitary(rng, 1000)
    ru, rw = bridges.adjoint_rotation(u), bridges.adjoint_rotation(w)
    assert np.max(np.abs(bridges.adjoint_rotation(u @ w) - ru @ rw)) < 1e-12
    assert np.max(np.abs(sm.det3(ru) - 1)) < 1e-12
    # global phase is invisible
    assert np.max(np.abs(bridges.adjoint_rotation(1j * u) - ru)) < 1e-15
