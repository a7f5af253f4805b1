"""Complex three-level state and operator algebra.

The qutrit lives in the bare basis (|0>, |1>, |e>), index order (0, 1, 2).
The qubit is encoded in span{|0>, |1>}; |e> is the auxiliary excited state.
All Hamiltonian entries are angular frequencies (rad/us), time is in us,
and hbar = 1 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

BASIS_LABELS = ("0", "1", "e")

KET_0 = np.array([1.0, 0.0, 0.0], dtype=complex)
KET_1 = np.array([0.0, 1.0, 0.0], dtype=complex)
KET_E = np.array([0.0, 0.0, 1.0], dtype=complex)

NORM_ATOL = 1e-12


def ket(c0: complex, c1: complex, ce: complex) -> np.ndarray:
    """Build a normalized qutrit state vector, checking the norm on entry."""
    psi = np.array([c0, c1, ce], dtype=complex)
    nrm = np.linalg.norm(psi)
    if abs(nrm - 1.0) > NORM_ATOL:
        raise ValueError(f"state norm {nrm!r} deviates from 1 by more than {NORM_ATOL}")
    return psi


def state_fidelity(psi: np.ndarray, target: np.ndarray) -> float:
    """|<target|psi>|^2 for normalized pure states."""
    return float(abs(np.vdot(target, psi)) ** 2)


def is_hermitian(h: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(h - h.conj().T)) < tol)


def unitarity_defect(u: np.ndarray) -> float:
    """max-norm of U^dag U - I."""
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def phase_gauged_distance(u: np.ndarray, v: np.ndarray) -> float:
    """max-norm distance min_phi ||U - e^{i phi} V||.

    The gauge phase is taken from tr(V^dag U), which is optimal in the
    Frobenius sense and indistinguishable at the tolerances used here.
    """
    tr = np.trace(v.conj().T @ u)
    phase = tr / abs(tr) if abs(tr) > 0 else 1.0
    return float(np.max(np.abs(u - phase * v)))


@dataclass(frozen=True)
class GateSpec:
    """Holonomic gate parameters: holonomy gamma and rotation axis (theta, phi)."""

    gamma: float
    theta: float
    phi: float

    @property
    def axis(self) -> np.ndarray:
        """Unit rotation axis n = (sin t cos p, sin t sin p, cos t)."""
        return np.array(
            [
                np.sin(self.theta) * np.cos(self.phi),
                np.sin(self.theta) * np.sin(self.phi),
                np.cos(self.theta),
            ]
        )


@dataclass(frozen=True)
class InitialState:
    """Computational-subspace initial state cos(t0)|0> + sin(t0) e^{i p0}|1>."""

    theta0: float
    phi0: float

    def state(self) -> np.ndarray:
        return np.array(
            [np.cos(self.theta0), np.sin(self.theta0) * np.exp(1j * self.phi0), 0.0],
            dtype=complex,
        )


@dataclass(frozen=True, eq=False)
class DarkBrightFrame:
    """Dark/bright pair for a drive frame (theta, phi).

    d = cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>
    b = sin(theta/2)|0> - cos(theta/2) e^{i phi}|1>
    """

    theta: float
    phi: float
    d: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)


def make_dark_bright(theta: float, phi: float) -> DarkBrightFrame:
    """Construct the orthonormal dark/bright frame for angles (theta, phi)."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    ph = np.exp(1j * phi)
    d = np.array([c, s * ph, 0.0], dtype=complex)
    b = np.array([s, -c * ph, 0.0], dtype=complex)
    return DarkBrightFrame(theta=theta, phi=phi, d=d, b=b)


def target_unitary(spec: GateSpec) -> np.ndarray:
    """Ideal gate U = |d><d| + e^{i gamma}|b><b| + |e><e|.

    Restricted to the computational subspace this is
    e^{i gamma/2} e^{-i (gamma/2) n.sigma}; the global phase is irrelevant
    for the magnitude-squared fidelity used everywhere in this package.
    """
    frame = make_dark_bright(spec.theta, spec.phi)
    u = (
        np.outer(frame.d, frame.d.conj())
        + np.exp(1j * spec.gamma) * np.outer(frame.b, frame.b.conj())
        + np.outer(KET_E, KET_E.conj())
    )
    return u


def decompose_initial(init: InitialState, theta: float, phi: float) -> tuple[complex, complex]:
    """Amplitudes (c_d, c_b) of the initial state in the (d, b) frame."""
    rel = np.exp(1j * (init.phi0 - phi))
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    c0, s0 = np.cos(init.theta0), np.sin(init.theta0)
    c_d = c0 * c + s0 * s * rel
    c_b = c0 * s - s0 * c * rel
    return complex(c_d), complex(c_b)
