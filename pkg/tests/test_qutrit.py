import numpy as np
import pytest
from hypothesis import given, strategies as st

from holonomic.qutrit import (
    GateSpec,
    InitialState,
    KET_E,
    decompose_initial,
    ket,
    make_dark_bright,
    phase_gauged_distance,
    state_fidelity,
    target_unitary,
    unitarity_defect,
)

angles = st.floats(-2 * np.pi, 2 * np.pi, allow_nan=False, allow_infinity=False)

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def test_ket_rejects_unnormalized():
    with pytest.raises(ValueError):
        ket(1.0, 1.0, 0.0)


def test_ket_accepts_normalized():
    psi = ket(1 / np.sqrt(2), 1j / np.sqrt(2), 0.0)
    assert abs(np.linalg.norm(psi) - 1) < 1e-12


def test_dark_bright_axis_cases():
    f0 = make_dark_bright(0.0, 0.0)
    assert np.allclose(f0.d, [1, 0, 0])
    assert np.allclose(f0.b, [0, -1, 0])
    f1 = make_dark_bright(np.pi / 2, 0.0)
    assert np.allclose(f1.d, np.array([1, 1, 0]) / np.sqrt(2))
    assert np.allclose(f1.b, np.array([1, -1, 0]) / np.sqrt(2))
    f2 = make_dark_bright(np.pi, 0.0)
    assert np.allclose(f2.d, [0, 1, 0], atol=1e-15)
    assert np.allclose(f2.b, [1, 0, 0], atol=1e-15)


@given(theta=angles, phi=angles)
def test_dark_bright_orthonormal(theta, phi):
    frame = make_dark_bright(theta, phi)
    assert abs(np.vdot(frame.d, frame.d) - 1) < 1e-12
    assert abs(np.vdot(frame.b, frame.b) - 1) < 1e-12
    assert abs(np.vdot(frame.d, frame.b)) < 1e-12
    assert frame.d[2] == 0 and frame.b[2] == 0


@given(gamma=angles, theta=angles, phi=angles)
def test_target_unitary_is_unitary_and_fixes_e(gamma, theta, phi):
    u = target_unitary(GateSpec(gamma=gamma, theta=theta, phi=phi))
    assert unitarity_defect(u) < 1e-12
    assert np.allclose(u @ KET_E, KET_E, atol=1e-12)


@given(gamma=angles, theta=angles, phi=angles)
def test_target_unitary_matches_axis_rotation(gamma, theta, phi):
    spec = GateSpec(gamma=gamma, theta=theta, phi=phi)
    u01 = target_unitary(spec)[:2, :2]
    n = spec.axis
    assert abs(np.linalg.norm(n) - 1) < 1e-12
    n_sigma = n[0] * PAULI["x"] + n[1] * PAULI["y"] + n[2] * PAULI["z"]
    expected = np.exp(1j * gamma / 2) * (
        np.cos(gamma / 2) * np.eye(2) - 1j * np.sin(gamma / 2) * n_sigma
    )
    assert np.max(np.abs(u01 - expected)) < 1e-12


def test_target_unitary_identity_at_zero_holonomy():
    u = target_unitary(GateSpec(gamma=0.0, theta=1.2, phi=0.4))
    assert np.max(np.abs(u - np.eye(3))) < 1e-12


def test_target_unitary_inverter_and_quarter_phase():
    u_not = target_unitary(GateSpec(gamma=np.pi, theta=np.pi / 2, phi=0.0))
    out = u_not @ np.array([1, 0, 0], dtype=complex)
    assert abs(abs(out[1]) - 1) < 1e-12
    u_s = target_unitary(GateSpec(gamma=np.pi / 2, theta=0.0, phi=0.0))
    src = np.array([1, 1, 0], dtype=complex) / np.sqrt(2)
    tgt = np.array([1, 1j, 0], dtype=complex) / np.sqrt(2)
    assert state_fidelity(u_s @ src, tgt) > 1 - 1e-12


@given(theta0=angles, phi0=angles, theta=angles, phi=angles)
def test_decompose_recompose(theta0, phi0, theta, phi):
    init = InitialState(theta0=theta0, phi0=phi0)
    c_d, c_b = decompose_initial(init, theta, phi)
    assert abs(abs(c_d) ** 2 + abs(c_b) ** 2 - 1) < 1e-12
    frame = make_dark_bright(theta, phi)
    recomposed = c_d * frame.d + c_b * frame.b
    assert np.max(np.abs(recomposed - init.state())) < 1e-12


def test_decompose_known_values():
    c_d, c_b = decompose_initial(InitialState(0.0, 0.0), 0.0, 0.0)
    assert abs(c_d - 1) < 1e-15 and abs(c_b) < 1e-15
    c_d, c_b = decompose_initial(InitialState(0.0, 0.0), np.pi / 2, 0.0)
    assert abs(c_d - 1 / np.sqrt(2)) < 1e-15 and abs(c_b - 1 / np.sqrt(2)) < 1e-15
    c_d, c_b = decompose_initial(InitialState(np.pi / 4, 0.0), 0.0, 0.0)
    assert abs(c_d - np.cos(np.pi / 4)) < 1e-15
    assert abs(c_b + np.sin(np.pi / 4)) < 1e-15


def test_fidelity_basics():
    psi = np.array([1, 1, 0], dtype=complex) / np.sqrt(2)
    assert abs(state_fidelity(psi, psi) - 1) < 1e-15
    assert state_fidelity(np.array([1, 0, 0], complex), np.array([0, 1, 0], complex)) == 0
    assert abs(state_fidelity(psi, np.array([1, 0, 0], complex)) - 0.5) < 1e-15


@given(theta0=angles, phi0=angles, phase=angles)
def test_fidelity_global_phase_invariant(theta0, phi0, phase):
    psi = InitialState(theta0, phi0).state()
    tgt = InitialState(theta0 / 2, phi0 + 0.3).state()
    f0 = state_fidelity(psi, tgt)
    f1 = state_fidelity(np.exp(1j * phase) * psi, tgt)
    f2 = state_fidelity(psi, np.exp(1j * phase) * tgt)
    assert abs(f0 - f1) < 1e-12 and abs(f0 - f2) < 1e-12
    assert -1e-12 <= f0 <= 1 + 1e-12


def test_phase_gauged_distance_ignores_global_phase():
    u = target_unitary(GateSpec(np.pi / 3, 0.7, 0.2))
    assert phase_gauged_distance(u, np.exp(0.77j) * u) < 1e-12
    assert phase_gauged_distance(u, np.eye(3)) > 0.1
