"""Acceptance criteria, shared by the pytest suite and `holonomic selftest`.

Each criterion returns a CriterionResult; run_all prints one pass/fail line
per criterion.  Two criteria encode external reference constants that the
simulation demonstrably contradicts (see the failure details); they are
implemented as stated and left red rather than loosened.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
from scipy.special import j0

from .lab import CATALOG, MHZ_TO_RAD_PER_US, build_setup, high_fidelity_area, oracle_fidelity
from .oracle import ErrorModel, accumulated_phases, error_integrals, matrix_elements
from .propagate import SimConfig, accumulate_propagator, evolve, evolve_final_batch
from .pulses import family_for_holonomy, phase_decomposition
from .qutrit import make_dark_bright, unitarity_defect

TAU = 0.1

# Independent closed forms for the pulse-shape integrals (Bessel reductions
# of the quadratures, used as frozen cross-checks):
#   O13_delta = tau / 2
#   Q = (tau / 2) J0(pi/2)
#   W = (tau / 4) [J0(3 pi/2) + J0(5 pi/2)]    (n = 2)
O13_OVER_TAU = 0.5
Q_OVER_TAU = j0(np.pi / 2) / 2.0
W_OVER_TAU = (j0(3 * np.pi / 2) + j0(5 * np.pi / 2)) / 4.0

# Reference infidelity coefficients for the plain two-plateau scheme
# (1 - F = eps^2 * f).  The hadamard entry reproduces an external table
# value that both perturbation theory and simulation contradict by exactly
# a factor of two; it is kept as stated so the discrepancy stays visible.
EPS_COEFF_TABLE = {
    "not": np.pi**2 / 2,
    "hadamard": (np.pi**2 / 2) * np.sin(np.pi / 8) ** 2,
    "s": np.pi**2 / 4,
    "t": (np.pi**2 / 4) * (1 - np.sqrt(2) / 2),
}


@dataclass
class CriterionResult:
    name: str
    passed: bool
    detail: str


def _gate_list():
    return ["not", "hadamard", "s", "t"]


def _final_fidelity(setup, eps, delta, steps):
    config = SimConfig(stages=setup.stages, steps=steps, record_stride=steps)
    f, _ = evolve_final_batch(
        setup.entry.init.state(), config, np.atleast_1d(eps), np.atleast_1d(delta),
        setup.entry.target,
    )
    return f


def a1_ideal_gates(steps: int = 20000) -> CriterionResult:
    """Ideal a=b=4 gate stage maps each catalog input to its target."""
    details = []
    ok = True
    for gate in _gate_list():
        setup = build_setup(gate, cp=False, tau=TAU, steps=steps)
        t0 = time.perf_counter()
        f = float(_final_fidelity(setup, 0.0, 0.0, steps)[0])
        dt = time.perf_counter() - t0
        good = f >= 1 - 1e-9 and dt < 1.0
        ok &= good
        details.append(f"{gate}: 1-F={1-f:.2e} ({dt:.2f}s)")
    return CriterionResult("A1 ideal-gate correctness", ok, "; ".join(details))


def a2_rabi_coefficients(steps: int = 20000) -> CriterionResult:
    """Two-plateau-scheme infidelity/eps^2 against the reference constants."""
    eps = np.array([0.01, 0.02, 0.05])
    tols = {0.01: 0.05, 0.02: 0.075, 0.05: 0.15}
    details = []
    ok = True
    for gate in _gate_list():
        setup = build_setup(gate, a=0.0, b=0.0, cp=False, tau=TAU, steps=steps)
        f = _final_fidelity(setup, eps, np.zeros_like(eps), steps)
        coeffs = (1.0 - f) / eps**2
        ref = EPS_COEFF_TABLE[gate]
        rel = np.abs(coeffs - ref) / ref
        good = all(r <= tols[e] for e, r in zip(eps, rel))
        ok &= good
        details.append(
            f"{gate}: measured/ref={coeffs[0] / ref:.3f} at eps=0.01"
            + ("" if good else " [exceeds tolerance]")
        )
    return CriterionResult("A2 Rabi-error coefficients (a=b=0)", ok, "; ".join(details))


def a3_rabi_elimination(steps: int = 20000) -> CriterionResult:
    """a=b=4 infidelity is quartic in eps and the eps-integrals vanish."""
    eps = np.geomspace(0.01, 0.1, 7)
    details = []
    ok = True
    for gate in _gate_list():
        setup = build_setup(gate, cp=False, tau=TAU, steps=steps)
        f = _final_fidelity(setup, eps, np.zeros_like(eps), steps)
        slope = float(np.polyfit(np.log(eps), np.log(1.0 - f), 1)[0])
        good = abs(slope - 4.0) <= 0.3
        ok &= good
        details.append(f"{gate}: slope={slope:.2f}")
        sched = setup.schedules[0]
        wf = setup.stages[0]
        ints = error_integrals(sched, accumulated_phases(sched, wf), n_half=2.0)
        if abs(ints.O12_eps) >= 1e-6 * TAU or abs(ints.O13_eps) >= 1e-6 * TAU:
            ok = False
            details.append(
                f"{gate}: |O12_eps|={abs(ints.O12_eps):.1e} |O13_eps|={abs(ints.O13_eps):.1e}"
            )
    return CriterionResult("A3 Rabi-error elimination (a=b=4)", ok, "; ".join(details))


def a4_detuning_ratios(steps: int = 20000) -> CriterionResult:
    """O13_delta/|W| near 32 and Q/|W| near 15 (within 10%), two-resolution pin."""
    setup = build_setup("not", cp=False, tau=TAU, steps=steps)
    sched = setup.schedules[0]
    vals = []
    for n in (steps, 2 * steps):
        wf = build_setup("not", cp=False, tau=TAU, steps=n).stages[0]
        ints = error_integrals(sched, accumulated_phases(sched, wf), n_half=2.0)
        vals.append((ints.O13_delta / abs(ints.W), ints.Q / abs(ints.W)))
    (r1, r2), (r1b, r2b) = vals
    pinned1 = O13_OVER_TAU / abs(W_OVER_TAU)
    pinned2 = Q_OVER_TAU / abs(W_OVER_TAU)
    ok = (
        28.8 <= r1 <= 35.2
        and 13.5 <= r2 <= 16.5
        and abs(r1 - r1b) < 1e-8 * r1
        and abs(r2 - r2b) < 1e-8 * r2
        and abs(r1 - pinned1) < 1e-6
        and abs(r2 - pinned2) < 1e-6
    )
    return CriterionResult(
        "A4 detuning ratio claims",
        ok,
        f"O13/|W|={r1:.4f} (pinned {pinned1:.4f}), Q/|W|={r2:.4f} (pinned {pinned2:.4f})",
    )


def a5_compensation_cancellation(steps: int = 20000) -> CriterionResult:
    """Pointwise sign flip of the 13 element, zero summed contribution, and
    the simulated compensated infidelity delta^2 W^2 / 2 for the inverter."""
    setup = build_setup("not", cp=True, tau=TAU, steps=steps)
    sched_g, sched_c = setup.schedules
    wf_g, wf_c = setup.stages
    ph_g = accumulated_phases(sched_g, wf_g)
    ph_c = accumulated_phases(sched_c, wf_c)
    err = ErrorModel(epsilon=0.0, delta=1.0)
    ok = True
    worst = 0.0
    for tloc in np.linspace(0.0, TAU, 41):
        _, h13_g = matrix_elements(
            tloc, wf_g, sched_g, ph_g, err, setup.c_d, setup.c_b
        )
        _, h13_c = matrix_elements(
            tloc, wf_c, sched_c, ph_c, err, setup.c_d, setup.c_b,
            link=setup.gate_channels,
        )
        worst = max(worst, abs(h13_c + h13_g))
    ok &= worst < 1e-9

    summed = abs(
        setup.c_d.conjugate() * setup.c_b.conjugate()
        * (setup.gate_channels.j13_delta - setup.comp_channels.j13_delta)
    ) ** 2
    ok &= summed < 1e-10 * TAU**2

    dts = np.array([0.005, 0.01, 0.02])
    delta = dts / TAU
    f = _final_fidelity(setup, np.zeros_like(delta), delta, steps)
    w = abs(W_OVER_TAU) * TAU
    ref = delta**2 * w**2 / 2
    rel = np.abs((1.0 - f) - ref) / ref
    ok &= bool(np.all(rel <= 0.15))
    return CriterionResult(
        "A5 compensation cancellation",
        bool(ok),
        f"pointwise |H13+H13~|max={worst:.1e}, summed={summed:.1e}, "
        f"max rel dev vs delta^2 W^2/2: {float(np.max(rel)):.3f}",
    )


def a6_oracle_agreement(steps: int = 4000) -> CriterionResult:
    """|F_sim - F_oracle| <= 10 max(eps, delta tau)^3 across the catalog."""
    eps_vals = np.array([0.0125, 0.025, 0.0375, 0.05])
    dt_vals = np.array([0.01, 0.02, 0.03, 0.04, 0.05])
    pts = [(e, dt) for e in eps_vals for dt in dt_vals]
    details = []
    ok = True
    for gate in _gate_list():
        for a in (0.0, 4.0):
            for cp in (False, True):
                setup = build_setup(gate, a=a, b=a, cp=cp, tau=TAU, steps=steps)
                eps = np.array([p[0] for p in pts])
                delta = np.array([p[1] / TAU for p in pts])
                f_sim = _final_fidelity(setup, eps, delta, steps)
                f_or = np.array(
                    [oracle_fidelity(setup, e, d) for e, d in zip(eps, delta)]
                )
                bound = 10.0 * np.maximum(eps, delta * TAU) ** 3
                excess = np.abs(f_sim - f_or) / bound
                if np.max(excess) > 1.0:
                    ok = False
                    details.append(
                        f"{gate} a=b={a:g} cp={cp}: worst ratio {np.max(excess):.2f}"
                    )
    detail = "; ".join(details) if details else "all 16 configurations within bound"
    return CriterionResult("A6 oracle-simulator agreement", ok, detail)


def a7_headline_fidelity(steps: int = 40000) -> CriterionResult:
    """Compensated inverter at eps=0.2, delta=2 MHz, tau=0.1 us: F >= 0.999.

    The quartic Rabi residual at eps=0.2 is about 1.09e-3 on its own and is
    independent of tau, so this threshold is not reachable by this scheme;
    the measured value is reported as the pinned regression reference.
    """
    setup = build_setup("not", cp=True, tau=TAU, steps=steps)
    delta = 2.0 * MHZ_TO_RAD_PER_US
    f = float(_final_fidelity(setup, 0.2, delta, steps)[0])
    return CriterionResult(
        "A7 headline fidelity",
        f >= 0.999,
        f"F(2 tau) = {f:.8f} (threshold 0.999; delta = 2 MHz -> {delta:.4f} rad/us)",
    )


def a8_exact_invariants(steps: int = 20000) -> CriterionResult:
    details = []
    ok = True

    setup = build_setup("not", cp=False, tau=TAU, steps=steps)
    frame = make_dark_bright(np.pi / 2, 0.0)
    config = SimConfig(stages=setup.stages, steps=steps, record_stride=100)
    err = ErrorModel(epsilon=0.2, delta=2.0 * MHZ_TO_RAD_PER_US)
    trace = evolve(frame.d, config, err, frame.d)
    dark_dev = float(np.max(1.0 - trace.fidelity))
    ok &= dark_dev < 1e-10
    details.append(f"dark-state leakage {dark_dev:.1e}")

    u = accumulate_propagator(config, err)
    udef = unitarity_defect(u)
    ok &= udef < 1e-7
    details.append(f"unitarity defect {udef:.1e}")

    ok &= trace.norm_drift < 1e-8
    details.append(f"norm drift {trace.norm_drift:.1e}")

    ns = [2500, 5000, 10000, 20000]
    fids = []
    for n in ns:
        s = build_setup("not", cp=False, tau=TAU, steps=n)
        fids.append(float(_final_fidelity(s, 0.0, 0.0, n)[0]))
    errs = [abs(fids[i] - fids[i + 1]) for i in range(len(ns) - 1)]
    slope = float(np.polyfit(np.log(ns[:-1]), np.log(errs), 1)[0])
    ok &= abs(-slope - 4.0) <= 0.2
    details.append(f"RK4 order {-slope:.2f}")

    for gate in _gate_list():
        spec = CATALOG[gate].spec
        for a in (0.0, 4.0):
            fam = family_for_holonomy(spec.gamma, a, a, TAU)
            dec = phase_decomposition(fam.schedule(), n=steps)
            if abs(dec.gamma_d) >= 1e-6 or abs(dec.gamma_g - spec.gamma) >= 1e-6:
                ok = False
                details.append(
                    f"{gate} a=b={a:g}: gamma_g={dec.gamma_g:.8f}, gamma_d={dec.gamma_d:.1e}"
                )
    details.append("phase decomposition matches designed holonomy for all a=b schemes")
    return CriterionResult("A8 exact invariants", bool(ok), "; ".join(details))


def a9_region_ordering(steps: int = 2000, n_axis: int = 51) -> CriterionResult:
    """F >= 0.99 area grows from a=b=0 to a=b=4 to a=b=4 with compensation."""
    eps_axis = np.linspace(-0.2, 0.2, n_axis)
    dmhz_axis = np.linspace(-4.0, 4.0, n_axis)
    details = []
    ok = True
    for gate in ("not", "s"):
        areas = []
        for a, cp in ((0.0, False), (4.0, False), (4.0, True)):
            areas.append(
                high_fidelity_area(
                    gate, a, a, cp, eps_axis, dmhz_axis, tau=TAU, steps=steps
                )
            )
        good = areas[0] < areas[1] < areas[2]
        ok &= good
        details.append(f"{gate}: areas {areas[0]} < {areas[1]} < {areas[2]}: {good}")
    return CriterionResult("A9 region ordering", bool(ok), "; ".join(details))


ALL_CRITERIA = [
    a1_ideal_gates,
    a2_rabi_coefficients,
    a3_rabi_elimination,
    a4_detuning_ratios,
    a5_compensation_cancellation,
    a6_oracle_agreement,
    a7_headline_fidelity,
    a8_exact_invariants,
    a9_region_ordering,
]


def run_all() -> list[CriterionResult]:
    results = []
    for fn in ALL_CRITERIA:
        res = fn()
        results.append(res)
        print(f"[{'PASS' if res.passed else 'FAIL'}] {res.name}: {res.detail}")
    return results
