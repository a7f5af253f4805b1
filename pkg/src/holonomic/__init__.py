"""Robust non-adiabatic holonomic single-qubit gates on a three-level system."""

from .lab import CATALOG, SweepRequest, build_setup, emit_csv, run_gate, sweep
from .oracle import (
    ErrorIntegrals,
    accumulated_phases,
    analytic_fidelity,
    analytic_fidelity_cp,
    analytic_fidelity_gate,
    error_integrals,
    stage_channels,
)
from .propagate import ErrorModel, SimConfig, convergence_probe, evolve, evolve_final_batch
from .pulses import (
    AngleSchedule,
    DriveWaveform,
    PulseDesignError,
    PulseFamily,
    alpha_profile,
    beta_profile,
    compensation_stage,
    family_for_holonomy,
    inverse_engineer,
    phase_decomposition,
)
from .qutrit import (
    GateSpec,
    InitialState,
    decompose_initial,
    make_dark_bright,
    state_fidelity,
    target_unitary,
)

__all__ = [
    "CATALOG",
    "AngleSchedule",
    "DriveWaveform",
    "ErrorIntegrals",
    "ErrorModel",
    "GateSpec",
    "InitialState",
    "PulseDesignError",
    "PulseFamily",
    "SimConfig",
    "SweepRequest",
    "accumulated_phases",
    "alpha_profile",
    "analytic_fidelity",
    "analytic_fidelity_cp",
    "analytic_fidelity_gate",
    "beta_profile",
    "build_setup",
    "compensation_stage",
    "convergence_probe",
    "decompose_initial",
    "emit_csv",
    "error_integrals",
    "evolve",
    "evolve_final_batch",
    "family_for_holonomy",
    "inverse_engineer",
    "make_dark_bright",
    "phase_decomposition",
    "run_gate",
    "stage_channels",
    "state_fidelity",
    "sweep",
    "target_unitary",
]
