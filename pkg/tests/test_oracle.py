import numpy as np
import pytest
from scipy.special import j0

from holonomic.lab import build_setup
from holonomic.oracle import (
    ErrorModel,
    accumulated_phases,
    analytic_fidelity,
    analytic_fidelity_cp,
    analytic_fidelity_gate,
    error_integrals,
    matrix_elements,
    stage_channels,
    table_coefficient,
)
from holonomic.pulses import family_for_holonomy, inverse_engineer

TAU = 0.1

# Closed-form reductions of the pulse-shape quadratures (independent oracle):
# substituting alpha = pi sin^2(pi t / tau) turns each integral into Bessel
# J0 evaluations.  Frozen here and compared against the quadrature.
O13_EXACT = TAU / 2
Q_EXACT = TAU * j0(np.pi / 2) / 2
W_EXACT = TAU * (j0(3 * np.pi / 2) + j0(5 * np.pi / 2)) / 4


def stage_data(gamma=np.pi, a=4.0, n=8000, theta=np.pi / 2, phi=0.0):
    fam = family_for_holonomy(gamma, a, a, TAU)
    sched = fam.schedule()
    wf = inverse_engineer(sched, n=n, theta=theta, phi=phi)
    phases = accumulated_phases(sched, wf)
    return sched, wf, phases


def test_phases_start_at_zero_and_reach_designed_holonomy():
    sched, wf, phases = stage_data(gamma=np.pi / 2, a=4.0)
    assert phases.segments[0].phi_plus[0] == 0.0
    assert phases.segments[0].phi_minus[0] == 0.0
    # phi_+(tau) is the realized holonomy; phi_-(tau) the excited-frame phase.
    assert abs(phases.phi_plus_end - np.pi / 2) < 1e-8
    assert abs(phases.phi_minus_end - 0.0) < 1e-8


def test_phase_difference_tracks_suppression_exponent():
    # First half of an a = b = 2n design: phi_+ - phi_- = 2 n alpha(t).
    sched, wf, phases = stage_data(gamma=np.pi, a=4.0)
    seg = phases.segments[0]
    al = sched.alpha(seg.t)
    dev = seg.phi_plus - seg.phi_minus - 4.0 * al
    assert np.max(np.abs(dev)) < 1e-5


def test_bessel_pins_for_shape_integrals():
    sched, wf, phases = stage_data()
    ints = error_integrals(sched, phases, n_half=2.0)
    assert abs(ints.O13_delta - O13_EXACT) < 1e-10
    assert abs(ints.Q - Q_EXACT) < 1e-10
    assert abs(ints.W - W_EXACT) < 1e-10
    assert abs(ints.W.imag) < 1e-12
    assert ints.O13_delta > 0


def test_rabi_error_integrals_vanish_for_doubled_even_slope():
    sched, wf, phases = stage_data(a=4.0)
    ints = error_integrals(sched, phases, n_half=2.0)
    assert abs(ints.O12_eps) < 1e-6 * TAU
    assert abs(ints.O13_eps) < 1e-6 * TAU


@pytest.mark.parametrize("a,gamma", [(0.0, np.pi), (1.0, np.pi)])
def test_rabi_error_integral_contrast(a, gamma):
    # The two-plateau and unit-slope families keep an order-one O12_eps.
    sched, wf, phases = stage_data(gamma=gamma, a=a)
    ints = error_integrals(sched, phases, n_half=a / 2)
    assert abs(ints.O12_eps) > 1.0
    # O13_eps = (pi/4)(a - b) vanishes for every equal-slope family.
    assert abs(ints.O13_eps) < 1e-8


def test_oss_o12_eps_closed_form():
    # Two-plateau scheme: O12_eps = -i pi (1 - e^{i (beta2 - beta1)}).
    for gamma in (np.pi, np.pi / 2, np.pi / 4):
        sched, wf, phases = stage_data(gamma=gamma, a=0.0)
        ints = error_integrals(sched, phases, n_half=0.0)
        expected = -1j * np.pi * (1 - np.exp(-1j * gamma))
        assert abs(ints.O12_eps - expected) < 1e-8


def test_symmetric_alpha_identity():
    # O12_delta = W (1 + e^{-i gamma}) for the mirror-symmetric polar profile.
    for gamma in (np.pi, np.pi / 2, np.pi / 4):
        sched, wf, phases = stage_data(gamma=gamma, a=4.0)
        ints = error_integrals(sched, phases, n_half=2.0)
        assert abs(ints.O12_delta - ints.W * (1 + np.exp(-1j * gamma))) < 1e-6 * TAU


def test_integrals_stable_under_grid_doubling():
    vals = []
    for n in (8000, 16000):
        sched, wf, phases = stage_data(gamma=np.pi / 2, a=4.0, n=n)
        ints = error_integrals(sched, phases, n_half=2.0)
        vals.append((ints.O12_delta, ints.O12_eps, ints.O13_delta, ints.W, ints.Q))
    # relative where the value is nonzero, absolute at the stage-time scale
    # for integrals that vanish identically
    for v1, v2 in zip(*vals):
        assert abs(v1 - v2) <= 1e-8 * max(TAU, abs(v2))


def test_channel_integrals_match_schedule_route():
    # The waveform-based channel integrals must agree with the closed
    # schedule-based definitions (same quantities via different routes).
    sched, wf, phases = stage_data(gamma=np.pi / 2, a=4.0)
    ints = error_integrals(sched, phases, n_half=2.0)
    ch = stage_channels(sched, wf, phases)
    assert abs(ch.j12_delta - ints.O12_delta) < 1e-9
    assert abs(ch.j12_eps - ints.O12_eps) < 1e-9
    assert abs(ch.j13_delta - ints.O13_delta) < 1e-9
    assert abs(ch.j13_eps - (-ints.O13_eps)) < 1e-9


def test_matrix_elements_gate_stage():
    setup = build_setup("s", a=4.0, b=4.0, cp=False, tau=TAU, steps=8000)
    sched, wf = setup.schedules[0], setup.stages[0]
    phases = accumulated_phases(sched, wf)
    err = ErrorModel(epsilon=0.0, delta=1.0)
    t = 0.37 * TAU
    h12, h13 = matrix_elements(t, wf, sched, phases, err, setup.c_d, setup.c_b)
    al = float(sched.alpha(t))
    expected13 = np.conj(setup.c_d) * np.conj(setup.c_b) * np.sin(al / 2) ** 2
    assert abs(h13 - expected13) < 1e-9
    t0 = 0.0
    h12_0, h13_0 = matrix_elements(t0, wf, sched, phases, err, setup.c_d, setup.c_b)
    assert abs(h12_0) < 1e-12 and abs(h13_0) < 1e-12


def test_matrix_elements_compensation_sign_flip():
    setup = build_setup("not", a=4.0, b=4.0, cp=True, tau=TAU, steps=8000)
    (sched_g, sched_c), (wf_g, wf_c) = setup.schedules, setup.stages
    ph_g = accumulated_phases(sched_g, wf_g)
    ph_c = accumulated_phases(sched_c, wf_c)
    err = ErrorModel(epsilon=0.0, delta=1.0)
    for t in np.linspace(0, TAU, 17):
        _, h13_g = matrix_elements(t, wf_g, sched_g, ph_g, err, setup.c_d, setup.c_b)
        _, h13_c = matrix_elements(
            t, wf_c, sched_c, ph_c, err, setup.c_d, setup.c_b,
            link=setup.gate_channels,
        )
        assert abs(h13_c + h13_g) < 1e-10
    with pytest.raises(ValueError):
        matrix_elements(0.0, wf_c, sched_c, ph_c, err, setup.c_d, setup.c_b)


def test_analytic_fidelity_gate_reference_points():
    # Two-plateau scheme, pure Rabi error: 1 - P = eps^2 pi^2 |c_b|^2 sin^2(g/2).
    cases = {
        "not": np.pi**2 / 2,
        "s": np.pi**2 / 4,
        "t": (np.pi**2 / 4) * (1 - np.sqrt(2) / 2),
        # Perturbation theory gives twice the externally tabulated value here.
        "hadamard": np.pi**2 * np.sin(np.pi / 8) ** 2,
    }
    for gate, coeff in cases.items():
        setup = build_setup(gate, a=0.0, b=0.0, cp=False, tau=TAU, steps=8000)
        sched, wf = setup.schedules[0], setup.stages[0]
        phases = accumulated_phases(sched, wf)
        ints = error_integrals(sched, phases, n_half=0.0)
        eps = 0.01
        res = analytic_fidelity_gate(
            setup.c_d, setup.c_b, ints, ErrorModel(epsilon=eps), setup.entry.spec.gamma
        )
        assert abs((1 - res.p_tau) / eps**2 - coeff) < 1e-6
        assert res.p_tau <= 1.0


def test_analytic_fidelity_perfect_at_zero_error():
    setup = build_setup("not", cp=False, tau=TAU, steps=8000)
    res = analytic_fidelity(setup.c_d, setup.c_b, setup.gate_channels, None, ErrorModel())
    assert res.p_tau == 1.0


def test_symmetric_specialization_matches_general():
    setup = build_setup("s", a=4.0, b=4.0, cp=False, tau=TAU, steps=8000)
    sched, wf = setup.schedules[0], setup.stages[0]
    phases = accumulated_phases(sched, wf)
    ints = error_integrals(sched, phases, n_half=2.0)
    delta = 0.2
    res = analytic_fidelity_gate(
        setup.c_d, setup.c_b, ints, ErrorModel(delta=delta), setup.entry.spec.gamma
    )
    assert abs(res.p_tau_symmetric - res.p_tau) < 1e-10


def test_breakdown_sums_to_infidelity():
    setup = build_setup("s", a=4.0, b=4.0, cp=True, tau=TAU, steps=8000)
    res = analytic_fidelity(
        setup.c_d, setup.c_b, setup.gate_channels, setup.comp_channels,
        ErrorModel(epsilon=0.01, delta=0.3),
    )
    total = res.breakdown["channel12"] + res.breakdown["channel13"]
    assert abs((1 - res.p_2tau) - total) < 1e-12
    assert res.breakdown["channel13_delta"] < 1e-30


def test_compensated_detuning_coefficients():
    # 1 - P(2 tau) = delta^2 W^2 * {1/2, cos^2(pi/8), 1/4, (1 - sqrt2/2)/4}
    # for the inverter, half-axis, quarter-phase, eighth-phase gates.
    expected = {
        "not": 0.5,
        "hadamard": np.cos(np.pi / 8) ** 2,
        "s": 0.25,
        "t": (1 - np.sqrt(2) / 2) / 4,
    }
    delta = 0.1
    for gate, coeff in expected.items():
        setup = build_setup(gate, a=4.0, b=4.0, cp=True, tau=TAU, steps=8000)
        res = analytic_fidelity_cp(
            setup.c_d, setup.c_b, setup.gate_channels, setup.comp_channels,
            delta, setup.entry.spec.gamma,
        )
        measured = (1 - res.p_2tau) / (delta * W_EXACT) ** 2
        assert abs(measured - coeff) < 1e-6


def test_table_coefficients_no_compensation():
    # Detuning coefficients assemble from the shape integrals:
    # inverter: O13^2/4; quarter-phase: (O13^2 + Q^2)/4 at zero slope and
    # (O13^2 + W^2)/4 at slope four.
    s_not = build_setup("not", a=0.0, b=0.0, cp=False, tau=TAU, steps=8000)
    f = table_coefficient(s_not.c_d, s_not.c_b, s_not.gate_channels, None, "delta")
    assert abs(f - O13_EXACT**2 / 4) < 1e-9

    s_s0 = build_setup("s", a=0.0, b=0.0, cp=False, tau=TAU, steps=8000)
    f = table_coefficient(s_s0.c_d, s_s0.c_b, s_s0.gate_channels, None, "delta")
    assert abs(f - (O13_EXACT**2 + Q_EXACT**2) / 4) < 1e-9

    s_s4 = build_setup("s", a=4.0, b=4.0, cp=False, tau=TAU, steps=8000)
    f = table_coefficient(s_s4.c_d, s_s4.c_b, s_s4.gate_channels, None, "delta")
    assert abs(f - (O13_EXACT**2 + W_EXACT**2) / 4) < 1e-9

    f_eps = table_coefficient(s_not.c_d, s_not.c_b, s_not.gate_channels, None, "eps")
    assert abs(f_eps - np.pi**2 / 2) < 1e-6
    with pytest.raises(ValueError):
        table_coefficient(s_not.c_d, s_not.c_b, s_not.gate_channels, None, "bogus")


def test_compensated_two_plateau_uses_q():
    # Zero-slope compensated runs trade W for Q: inverter Q^2/2.
    setup = build_setup("not", a=0.0, b=0.0, cp=True, tau=TAU, steps=8000)
    f = table_coefficient(
        setup.c_d, setup.c_b, setup.gate_channels, setup.comp_channels, "delta"
    )
    assert abs(f - Q_EXACT**2 / 2) < 1e-9
