"""Experiment harness: gate catalog, single runs, sweeps, CSV emission.

Unit convention at the boundary: the CLI and sweep requests take the
detuning error in MHz as a linear frequency and convert internally via
delta_rad_per_us = 2 pi * delta_mhz (tau in us).  CSV output records both
the raw and converted values, and carries a config hash instead of any
wall-clock data so repeated runs are byte-identical.
"""

from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass, field, replace

import numpy as np

from .oracle import StageChannels, accumulated_phases, analytic_fidelity, stage_channels
from .propagate import ErrorModel, SimConfig, evolve, evolve_final_batch
from .pulses import (
    AngleSchedule,
    DriveWaveform,
    PulseFamily,
    compensation_stage,
    family_for_holonomy,
    inverse_engineer,
)
from .qutrit import GateSpec, InitialState, decompose_initial, state_fidelity

MHZ_TO_RAD_PER_US = 2.0 * np.pi

DEFAULT_TAU_US = 0.1
DEFAULT_STEPS = 20000
DEFAULT_A = 4.0
DEFAULT_B = 4.0


@dataclass(frozen=True, eq=False)
class GateCatalogEntry:
    name: str
    spec: GateSpec
    init: InitialState
    target: np.ndarray


def _entry(name, theta0, phi0, gamma, theta, phi, target) -> GateCatalogEntry:
    return GateCatalogEntry(
        name=name,
        spec=GateSpec(gamma=gamma, theta=theta, phi=phi),
        init=InitialState(theta0=theta0, phi0=phi0),
        target=np.asarray(target, dtype=complex),
    )


_SQ2 = 1.0 / np.sqrt(2.0)

CATALOG: dict[str, GateCatalogEntry] = {
    "not": _entry("not", 0.0, 0.0, np.pi, np.pi / 2, 0.0, [0, 1, 0]),
    "hadamard": _entry("hadamard", 0.0, 0.0, np.pi, np.pi / 4, 0.0, [_SQ2, _SQ2, 0]),
    "s": _entry("s", np.pi / 4, 0.0, np.pi / 2, 0.0, 0.0, [_SQ2, 1j * _SQ2, 0]),
    "t": _entry(
        "t", np.pi / 4, 0.0, np.pi / 4, 0.0, 0.0,
        [_SQ2, _SQ2 * np.exp(1j * np.pi / 4), 0],
    ),
}


@dataclass(frozen=True, eq=False)
class GateSetup:
    """Everything needed to simulate and cross-check one gate configuration."""

    entry: GateCatalogEntry
    stages: tuple[DriveWaveform, ...]
    schedules: tuple[AngleSchedule, ...]
    c_d: complex
    c_b: complex
    gate_channels: StageChannels
    comp_channels: StageChannels | None


def build_setup(
    gate: str,
    a: float = DEFAULT_A,
    b: float = DEFAULT_B,
    cp: bool = True,
    tau: float = DEFAULT_TAU_US,
    steps: int = DEFAULT_STEPS,
) -> GateSetup:
    """Inverse-engineer the stage waveforms and precompute oracle channels."""
    if gate not in CATALOG:
        raise KeyError(f"unknown gate {gate!r}; catalog: {sorted(CATALOG)}")
    entry = CATALOG[gate]
    spec = entry.spec
    fam = family_for_holonomy(spec.gamma, a, b, tau)
    sched = fam.schedule()
    wf = inverse_engineer(sched, n=steps, theta=spec.theta, phi=spec.phi, stage="gate")
    phases = accumulated_phases(sched, wf)
    ch_gate = stage_channels(sched, wf, phases)

    stages: tuple[DriveWaveform, ...] = (wf,)
    schedules: tuple[AngleSchedule, ...] = (sched,)
    ch_comp = None
    if cp:
        comp_fam, theta_c, phi_c = compensation_stage(fam, spec.theta, spec.phi)
        sched_c = comp_fam.schedule()
        wf_c = inverse_engineer(
            sched_c, n=steps, theta=theta_c, phi=phi_c, stage="compensation"
        )
        phases_c = accumulated_phases(sched_c, wf_c)
        ch_comp = stage_channels(sched_c, wf_c, phases_c)
        stages = (wf, wf_c)
        schedules = (sched, sched_c)

    c_d, c_b = decompose_initial(entry.init, spec.theta, spec.phi)
    return GateSetup(
        entry=entry,
        stages=stages,
        schedules=schedules,
        c_d=c_d,
        c_b=c_b,
        gate_channels=ch_gate,
        comp_channels=ch_comp,
    )


def oracle_fidelity(setup: GateSetup, eps: float, delta: float) -> float:
    """Second-order analytic fidelity for one error point."""
    res = analytic_fidelity(
        setup.c_d, setup.c_b, setup.gate_channels, setup.comp_channels,
        ErrorModel(epsilon=eps, delta=delta),
    )
    return res.p_2tau if setup.comp_channels is not None else res.p_tau


def run_gate(
    gate: str,
    a: float = DEFAULT_A,
    b: float = DEFAULT_B,
    cp: bool = True,
    eps: float = 0.0,
    delta_mhz: float = 0.0,
    tau: float = DEFAULT_TAU_US,
    steps: int = DEFAULT_STEPS,
    record_stride: int = 100,
):
    """Simulate one gate run; returns (trace, summary dict)."""
    setup = build_setup(gate, a=a, b=b, cp=cp, tau=tau, steps=steps)
    delta = delta_mhz * MHZ_TO_RAD_PER_US
    err = ErrorModel(epsilon=eps, delta=delta)
    config = SimConfig(stages=setup.stages, steps=steps, record_stride=record_stride)
    trace = evolve(setup.entry.init.state(), config, err, setup.entry.target)
    f_sim = float(trace.fidelity[-1])
    summary = {
        "gate": gate,
        "a": a,
        "b": b,
        "cp": cp,
        "eps": eps,
        "delta_mhz": delta_mhz,
        "delta_rad_per_us": delta,
        "tau_us": tau,
        "steps": steps,
        "fidelity_sim": f_sim,
        "fidelity_oracle": oracle_fidelity(setup, eps, delta),
        "infidelity_sim": 1.0 - f_sim,
        "norm_drift": trace.norm_drift,
    }
    return trace, summary


@dataclass(frozen=True)
class SweepRequest:
    """Axis specification for a deterministic fidelity sweep.

    kind: "eps" (delta held 0), "delta" (eps held 0), or "grid" (row-major
    over ascending eps then delta).
    """

    gate: str
    kind: str
    eps_values: tuple[float, ...] = (0.0,)
    delta_mhz_values: tuple[float, ...] = (0.0,)
    a: float = DEFAULT_A
    b: float = DEFAULT_B
    cp: bool = True
    tau: float = DEFAULT_TAU_US
    steps: int = DEFAULT_STEPS

    def __post_init__(self):
        if self.kind not in ("eps", "delta", "grid"):
            raise ValueError(f"unknown sweep kind {self.kind!r}")
        for axis in (self.eps_values, self.delta_mhz_values):
            if any(y <= x for x, y in zip(axis, axis[1:])):
                raise ValueError("axis values must be strictly increasing")
        if len(self.eps_values) * len(self.delta_mhz_values) > 10**6:
            raise ValueError("grid exceeds 10^6 points")

    def points(self) -> list[tuple[float, float]]:
        if self.kind == "eps":
            return [(e, 0.0) for e in self.eps_values]
        if self.kind == "delta":
            return [(0.0, d) for d in self.delta_mhz_values]
        return [(e, d) for e in self.eps_values for d in self.delta_mhz_values]


@dataclass(eq=False)
class SweepResult:
    request: SweepRequest
    eps: np.ndarray
    delta_mhz: np.ndarray
    delta_rad: np.ndarray
    fidelity_sim: np.ndarray
    fidelity_oracle: np.ndarray
    status: list[str]
    meta: dict = field(default_factory=dict)


def sweep(req: SweepRequest) -> SweepResult:
    """Evaluate simulated and oracle fidelities over the requested points.

    All points share the stage waveforms, so the simulation advances the
    whole batch in lockstep; ordering is the deterministic row-major order
    of the request regardless of internal scheduling.
    """
    setup = build_setup(req.gate, a=req.a, b=req.b, cp=req.cp, tau=req.tau, steps=req.steps)
    pts = req.points()
    eps = np.array([p[0] for p in pts])
    dmhz = np.array([p[1] for p in pts])
    drad = dmhz * MHZ_TO_RAD_PER_US

    config = SimConfig(stages=setup.stages, steps=req.steps,
                       record_stride=req.steps)
    f_sim, drift = evolve_final_batch(
        setup.entry.init.state(), config, eps, drad, setup.entry.target
    )
    status = ["ok" if d < 1e-6 else f"error:norm-drift={d:.3e}" for d in drift]
    f_oracle = np.array([oracle_fidelity(setup, e, d) for e, d in zip(eps, drad)])

    meta = {
        "gate": req.gate,
        "kind": req.kind,
        "a": _fmt(req.a),
        "b": _fmt(req.b),
        "cp": str(req.cp).lower(),
        "tau_us": _fmt(req.tau),
        "steps": str(req.steps),
        "delta_convention": "delta_rad_per_us=2*pi*delta_mhz",
        "eps_axis": ",".join(_fmt(v) for v in req.eps_values),
        "delta_mhz_axis": ",".join(_fmt(v) for v in req.delta_mhz_values),
    }
    meta["config_hash"] = _hash_meta(meta)
    return SweepResult(
        request=req,
        eps=eps,
        delta_mhz=dmhz,
        delta_rad=drad,
        fidelity_sim=np.asarray(f_sim),
        fidelity_oracle=f_oracle,
        status=status,
        meta=meta,
    )


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _hash_meta(meta: dict) -> str:
    canon = "\n".join(f"{k}={meta[k]}" for k in sorted(meta))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]


def render_sweep_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    for key in sorted(result.meta):
        buf.write(f"# {key}={result.meta[key]}\n")
    buf.write("eps,delta_mhz,delta_rad_per_us,fidelity_sim,fidelity_oracle,"
              "infidelity_sim,status\n")
    for i in range(len(result.eps)):
        buf.write(
            ",".join(
                [
                    _fmt(result.eps[i]),
                    _fmt(result.delta_mhz[i]),
                    _fmt(result.delta_rad[i]),
                    _fmt(result.fidelity_sim[i]),
                    _fmt(result.fidelity_oracle[i]),
                    _fmt(1.0 - result.fidelity_sim[i]),
                    result.status[i],
                ]
            )
            + "\n"
        )
    return buf.getvalue()


def emit_csv(result: SweepResult, path) -> None:
    """Write the sweep CSV (UTF-8, LF endings, 12 significant digits)."""
    text = render_sweep_csv(result)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def render_trace_csv(trace, summary: dict) -> str:
    buf = io.StringIO()
    meta = {
        k: (_fmt(v) if isinstance(v, float) else str(v).lower() if isinstance(v, bool) else str(v))
        for k, v in summary.items()
    }
    meta["config_hash"] = _hash_meta(meta)
    for key in sorted(meta):
        buf.write(f"# {key}={meta[key]}\n")
    buf.write("t_us,p0,p1,pe,fidelity\n")
    for i in range(len(trace.times)):
        buf.write(
            ",".join(
                _fmt(v)
                for v in (
                    trace.times[i],
                    trace.p0[i],
                    trace.p1[i],
                    trace.pe[i],
                    trace.fidelity[i],
                )
            )
            + "\n"
        )
    return buf.getvalue()


def emit_trace_csv(trace, summary: dict, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_trace_csv(trace, summary))


def high_fidelity_area(
    gate: str,
    a: float,
    b: float,
    cp: bool,
    eps_axis: np.ndarray,
    delta_mhz_axis: np.ndarray,
    tau: float = DEFAULT_TAU_US,
    steps: int = DEFAULT_STEPS,
    threshold: float = 0.99,
) -> int:
    """Number of grid points with simulated fidelity >= threshold."""
    req = SweepRequest(
        gate=gate,
        kind="grid",
        eps_values=tuple(eps_axis),
        delta_mhz_values=tuple(delta_mhz_axis),
        a=a,
        b=b,
        cp=cp,
        tau=tau,
        steps=steps,
    )
    res = sweep(req)
    return int(np.sum(res.fidelity_sim >= threshold))
