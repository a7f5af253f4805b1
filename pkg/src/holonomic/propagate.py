"""Schrodinger propagation of the driven qutrit under systematic errors.

The full rotating-frame Hamiltonian for a stage with frame (theta, phi) is

    H = (Delta(t) + delta)|e><e|
        + (1 + eps) [Omega_P(t)|0><e| + Omega_S(t)|1><e| + h.c.]

with Omega_P = Omega sin(theta/2) e^{-i xi} and
Omega_S = -Omega cos(theta/2) e^{i phi} e^{-i xi}.  Integration is
fixed-step fourth-order Runge-Kutta; step nodes coincide with the waveform
samples and half-steps interpolate the waveform linearly.  Fixed stepping
keeps results bit-stable run to run, which the regression suite relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pulses import DriveWaveform


class IntegratorError(RuntimeError):
    pass


@dataclass(frozen=True)
class ErrorModel:
    """Systematic Rabi fraction eps and detuning offset delta (rad/us)."""

    epsilon: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        if not self.epsilon > -1.0:
            raise ValueError("epsilon must exceed -1 (total amplitude stays positive)")


@dataclass(frozen=True, eq=False)
class SimConfig:
    """Stage list plus stepping controls.

    Each stage's waveform must be sampled on the step grid (steps intervals
    per stage) so that RK4 nodes are exact and only half-steps interpolate.
    """

    stages: tuple[DriveWaveform, ...]
    steps: int = 20000
    record_stride: int = 100

    def __post_init__(self):
        if self.steps < 1000:
            raise ValueError("steps must be at least 1000")
        if self.steps % self.record_stride:
            raise ValueError("record_stride must divide steps")
        for wf in self.stages:
            if wf.steps != self.steps:
                raise ValueError(
                    f"waveform sampled at {wf.steps} steps, config expects {self.steps}"
                )


@dataclass(eq=False)
class TrajectoryTrace:
    """Recorded populations and running fidelity against the final target."""

    times: np.ndarray
    p0: np.ndarray
    p1: np.ndarray
    pe: np.ndarray
    fidelity: np.ndarray
    states: np.ndarray
    final_state: np.ndarray
    norm_drift: float


def _drive_matrix(omega, xi, theta: float, phi: float) -> np.ndarray:
    """Bare-basis coupling matrix for sampled (omega, xi); shape (..., 3, 3)."""
    omega = np.asarray(omega)
    envelope = omega * np.exp(-1j * np.asarray(xi))
    op = envelope * np.sin(theta / 2)
    os = -envelope * np.cos(theta / 2) * np.exp(1j * phi)
    out = np.zeros(omega.shape + (3, 3), dtype=complex)
    out[..., 0, 2] = op
    out[..., 1, 2] = os
    out[..., 2, 0] = np.conj(op)
    out[..., 2, 1] = np.conj(os)
    return out


def assemble_hamiltonian(t: float, wf: DriveWaveform, err: ErrorModel) -> np.ndarray:
    """Hamiltonian at stage-local time t, interpolating the waveform linearly."""
    ts = wf.t
    if t < ts[0] - 1e-12 or t > ts[-1] + 1e-12:
        raise ValueError(f"t = {t} outside the waveform grid [{ts[0]}, {ts[-1]}]")
    omega = np.interp(t, ts, wf.omega)
    xi = np.interp(t, ts, wf.xi)
    delta_ideal = np.interp(t, ts, wf.delta)
    h = (1.0 + err.epsilon) * _drive_matrix(omega, xi, wf.theta, wf.phi)
    h[2, 2] += delta_ideal + err.delta
    return h


class _StageTables:
    """Node/midpoint drive matrices and detunings precomputed for stepping."""

    def __init__(self, wf: DriveWaveform):
        om, xi, dl = wf.omega, wf.xi, wf.delta
        self.d_node = _drive_matrix(om, xi, wf.theta, wf.phi)
        self.d_mid = _drive_matrix(
            0.5 * (om[:-1] + om[1:]), 0.5 * (xi[:-1] + xi[1:]), wf.theta, wf.phi
        )
        self.dl_node = dl
        self.dl_mid = 0.5 * (dl[:-1] + dl[1:])
        self.h = wf.t[1] - wf.t[0]
        self.n = len(dl) - 1


def _rk4_stage(psis: np.ndarray, tab: _StageTables, eps: np.ndarray, delta: np.ndarray,
               on_node=None) -> np.ndarray:
    """Advance a batch of states (m, 3) through one stage in place."""
    if len(eps) == 1:
        return _rk4_stage_single(psis, tab, float(eps[0]), float(delta[0]), on_node)
    scale = (1.0 + eps)[:, None]
    h = tab.h

    def rhs(d_mat, dl, psi):
        core = psi @ d_mat.T
        core *= scale
        core[:, 2] += (dl + delta) * psi[:, 2]
        return -1j * core

    for k in range(tab.n):
        k1 = rhs(tab.d_node[k], tab.dl_node[k], psis)
        k2 = rhs(tab.d_mid[k], tab.dl_mid[k], psis + (h / 2) * k1)
        k3 = rhs(tab.d_mid[k], tab.dl_mid[k], psis + (h / 2) * k2)
        k4 = rhs(tab.d_node[k + 1], tab.dl_node[k + 1], psis + h * k3)
        psis += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        if on_node is not None:
            on_node(k + 1, psis)
    return psis


def _rk4_stage_single(psis: np.ndarray, tab: _StageTables, eps: float, delta: float,
                      on_node=None) -> np.ndarray:
    """Single-error-model stage: fold (eps, delta) into the tables up front."""
    h = tab.h
    pe = np.zeros((3, 3), dtype=complex)
    pe[2, 2] = 1.0
    gen_node = -1j * ((1.0 + eps) * tab.d_node + (tab.dl_node + delta)[:, None, None] * pe)
    gen_mid = -1j * ((1.0 + eps) * tab.d_mid + (tab.dl_mid + delta)[:, None, None] * pe)
    psi = psis[0]
    for k in range(tab.n):
        k1 = gen_node[k] @ psi
        k2 = gen_mid[k] @ (psi + (h / 2) * k1)
        k3 = gen_mid[k] @ (psi + (h / 2) * k2)
        k4 = gen_node[k + 1] @ (psi + h * k3)
        psi += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        if on_node is not None:
            on_node(k + 1, psis)
    return psis


def evolve(
    init: np.ndarray,
    config: SimConfig,
    err: ErrorModel,
    target: np.ndarray,
) -> TrajectoryTrace:
    """Integrate i dpsi/dt = H psi across all stages, recording a trace.

    Fidelity is recorded against the final target throughout (one curve
    over both stages); populations are bare-basis magnitudes.  Final norm
    drift above 1e-6 raises IntegratorError suggesting step doubling.
    """
    if not config.stages:
        raise ValueError("stage list is empty")
    psi = np.array(init, dtype=complex).reshape(1, 3)

    times = [0.0]
    records = [psi[0].copy()]
    t_offset = 0.0
    for wf in config.stages:
        tab = _StageTables(wf)
        stride = config.record_stride

        def recorder(k, psis, base=t_offset, h=tab.h):
            if k % stride == 0:
                times.append(base + k * h)
                records.append(psis[0].copy())

        _rk4_stage(psi, tab, np.array([err.epsilon]), np.array([err.delta]), recorder)
        t_offset += wf.tau

    states = np.array(records)
    norms = np.sum(np.abs(states) ** 2, axis=1)
    drift = float(np.max(np.abs(norms - 1.0)))
    if drift > 1e-6:
        raise IntegratorError(
            f"norm drift {drift:.3e} exceeds 1e-6; rerun with steps={2 * config.steps}"
        )
    fid = np.abs(states @ target.conj()) ** 2
    return TrajectoryTrace(
        times=np.array(times),
        p0=np.abs(states[:, 0]) ** 2,
        p1=np.abs(states[:, 1]) ** 2,
        pe=np.abs(states[:, 2]) ** 2,
        fidelity=fid,
        states=states,
        final_state=states[-1],
        norm_drift=drift,
    )


def evolve_final_batch(
    init: np.ndarray,
    config: SimConfig,
    eps: np.ndarray,
    delta: np.ndarray,
    target: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Final fidelities and norm drifts for a batch of error models.

    eps and delta are equal-length 1-D arrays; all batch members share the
    waveforms, so an entire sweep advances in lockstep through the grid.
    """
    eps = np.asarray(eps, dtype=float)
    delta = np.asarray(delta, dtype=float)
    psis = np.tile(np.asarray(init, dtype=complex), (len(eps), 1))
    for wf in config.stages:
        _rk4_stage(psis, _StageTables(wf), eps, delta)
    norms = np.sum(np.abs(psis) ** 2, axis=1)
    fid = np.abs(psis @ target.conj()) ** 2
    return fid, np.abs(norms - 1.0)


def accumulate_propagator(config: SimConfig, err: ErrorModel) -> np.ndarray:
    """Numerical propagator over all stages (columns = evolved basis kets)."""
    psis = np.eye(3, dtype=complex)
    for wf in config.stages:
        _rk4_stage(psis, _StageTables(wf), np.full(3, err.epsilon), np.full(3, err.delta))
    return psis.T


@dataclass(frozen=True)
class ConvergenceReport:
    f_coarse: float
    f_fine: float
    difference: float
    passed: bool


def convergence_probe(
    init: np.ndarray,
    stage_builder,
    err: ErrorModel,
    target: np.ndarray,
    steps: int = 20000,
    tol: float = 1e-9,
) -> ConvergenceReport:
    """Compare final fidelity at `steps` and `2*steps`.

    ``stage_builder(n)`` must return the stage tuple sampled at n steps; an
    empty tuple reports a trivial pass.
    """
    coarse = tuple(stage_builder(steps))
    if not coarse:
        return ConvergenceReport(1.0, 1.0, 0.0, True)
    fine = tuple(stage_builder(2 * steps))
    eps = np.array([err.epsilon])
    dlt = np.array([err.delta])
    f_c, _ = evolve_final_batch(init, SimConfig(stages=coarse, steps=steps), eps, dlt, target)
    f_f, _ = evolve_final_batch(
        init, SimConfig(stages=fine, steps=2 * steps), eps, dlt, target
    )
    diff = float(abs(f_c[0] - f_f[0]))
    return ConvergenceReport(float(f_c[0]), float(f_f[0]), diff, diff < tol)
