import numpy as np
import pytest
from hypothesis import given, strategies as st

from holonomic.propagate import ErrorModel, SimConfig, evolve
from holonomic.pulses import (
    PulseDesignError,
    PulseFamily,
    alpha_profile,
    beta_profile,
    compensation_stage,
    family_for_holonomy,
    inverse_engineer,
    phase_decomposition,
)
from holonomic.qutrit import make_dark_bright, phase_gauged_distance
from holonomic.propagate import accumulate_propagator

TAU = 0.1


def test_alpha_profile_values():
    assert alpha_profile(0.0, TAU) == 0.0
    assert abs(alpha_profile(TAU / 2, TAU) - np.pi) < 1e-15
    assert abs(alpha_profile(TAU / 4, TAU) - np.pi / 2) < 1e-15
    with pytest.raises(ValueError):
        alpha_profile(1.1 * TAU, TAU)


@given(st.floats(0, 1))
def test_alpha_profile_range(frac):
    val = float(alpha_profile(frac * TAU, TAU))
    assert -1e-12 <= val <= np.pi + 1e-12


def test_beta_profile_plateaus_and_smooth_family():
    oss = PulseFamily(a=0.0, b=0.0, beta1=0.0, beta2=np.pi, tau=TAU)
    assert beta_profile(0.7 * TAU, oss) == np.pi
    assert beta_profile(0.2 * TAU, oss) == 0.0
    fam = PulseFamily(a=4.0, b=4.0, beta1=0.0, beta2=np.pi, tau=TAU)
    assert beta_profile(0.0, fam) == 0.0
    just_after = TAU / 2 + 1e-9 * TAU
    assert abs(beta_profile(just_after, fam) - np.pi) < 1e-6


def test_beta_profile_domain_error():
    fam = PulseFamily(a=0.0, b=0.0, beta1=0.0, beta2=np.pi, tau=TAU)
    with pytest.raises(ValueError):
        beta_profile(-0.1 * TAU, fam)


def test_family_warns_on_unequal_slopes():
    with pytest.warns(UserWarning):
        PulseFamily(a=1.0, b=2.0, beta1=0.0, beta2=0.0, tau=TAU)


def test_family_rejects_nonpositive_tau():
    with pytest.raises(ValueError):
        PulseFamily(a=0.0, b=0.0, beta1=0.0, beta2=0.0, tau=0.0)


def test_oss_waveform_matches_closed_form():
    # For the plain two-plateau scheme the drive reduces to Omega = |alpha_dot|/2
    # with xi = beta +- pi/2, peaking at pi^2 / (2 tau).
    fam = PulseFamily(a=0.0, b=0.0, beta1=0.0, beta2=np.pi, tau=TAU)
    sched = fam.schedule()
    wf = inverse_engineer(sched, n=2000)
    expected = np.abs(sched.dalpha(wf.t)) / 2
    assert np.max(np.abs(wf.omega - expected)) < 1e-12
    assert abs(np.max(wf.omega) - np.pi**2 / (2 * TAU)) < 1e-8
    seg0, seg1 = wf.segments
    interior0 = slice(1, -1)
    assert np.allclose(seg0.xi[interior0], 0.0 + np.pi / 2)
    assert np.allclose(seg1.xi[interior0], np.pi - np.pi / 2)


def test_waveform_endpoint_zeros_and_sign():
    for a in (0.0, 2.0, 4.0):
        fam = family_for_holonomy(np.pi / 2, a, a, TAU)
        wf = inverse_engineer(fam.schedule(), n=2000)
        assert wf.omega[0] == 0.0
        assert wf.omega[-1] == 0.0
        assert np.all(wf.omega >= 0.0)


def test_inverse_engineer_rejects_coarse_grids():
    fam = family_for_holonomy(np.pi, 4.0, 4.0, TAU)
    with pytest.raises(ValueError):
        inverse_engineer(fam.schedule(), n=400)


def test_inverse_engineer_flags_genuine_singularity():
    # A constant nonzero detuning leaves (Delta + beta_dot) finite where
    # cos(alpha) vanishes, so the required amplitude diverges.
    fam = family_for_holonomy(np.pi, 0.0, 0.0, TAU)
    with pytest.raises(PulseDesignError):
        inverse_engineer(fam.schedule(), delta=5.0, n=2000)


@pytest.mark.parametrize("a", [0.0, 2.0, 4.0])
def test_round_trip_tracks_bright_ladder(a):
    # Master consistency check: the engineered drive must transport |b>
    # exactly along cos(alpha/2)|b> + sin(alpha/2) e^{i beta}|e> as a
    # projector, for every recorded time.
    theta, phi = np.pi / 2, 0.0
    fam = family_for_holonomy(np.pi, a, a, TAU)
    sched = fam.schedule()
    wf = inverse_engineer(sched, n=8000, theta=theta, phi=phi)
    frame = make_dark_bright(theta, phi)
    config = SimConfig(stages=(wf,), steps=8000, record_stride=40)
    trace = evolve(frame.b, config, ErrorModel(), frame.b)
    e_ket = np.array([0, 0, 1], dtype=complex)
    worst = 0.0
    for t, psi in zip(trace.times, trace.states):
        al = float(sched.alpha(min(t, TAU)))
        be = float(sched.beta(min(t, TAU)))
        chi = np.cos(al / 2) * frame.b + np.sin(al / 2) * np.exp(1j * be) * e_ket
        dev = np.max(np.abs(np.outer(psi, psi.conj()) - np.outer(chi, chi.conj())))
        worst = max(worst, dev)
    assert worst < 1e-5


def test_compensation_stage_swaps_frame():
    fam = family_for_holonomy(np.pi / 2, 4.0, 4.0, TAU)
    comp, theta_c, phi_c = compensation_stage(fam, np.pi / 2, 0.0)
    assert theta_c == np.pi / 2 and phi_c == np.pi
    assert comp.beta1 == 0.0 and comp.beta2 == 0.0 and comp.a == fam.a
    comp2, theta_c2, phi_c2 = compensation_stage(fam, 0.0, 0.0)
    assert theta_c2 == np.pi and phi_c2 == np.pi
    swapped = make_dark_bright(theta_c2, phi_c2)
    orig = make_dark_bright(0.0, 0.0)
    assert abs(abs(np.vdot(swapped.d, orig.b)) - 1) < 1e-12
    assert abs(abs(np.vdot(swapped.b, orig.d)) - 1) < 1e-12


def test_compensation_stage_is_identity_when_error_free():
    fam = family_for_holonomy(np.pi / 2, 4.0, 4.0, TAU)
    comp, theta_c, phi_c = compensation_stage(fam, 0.0, 0.0)
    wf = inverse_engineer(comp.schedule(), n=8000, theta=theta_c, phi=phi_c,
                          stage="compensation")
    u = accumulate_propagator(SimConfig(stages=(wf,), steps=8000), ErrorModel())
    assert phase_gauged_distance(u, np.eye(3)) < 1e-6


@pytest.mark.parametrize(
    "a,beta1,beta2,expect_g",
    [
        (0.0, 0.0, np.pi, -np.pi),
        (4.0, 0.0, -np.pi / 2, np.pi / 2),
        (4.0, 0.0, np.pi / 2, -np.pi / 2),
        (0.0, 0.3, 0.3, 0.0),
    ],
)
def test_phase_decomposition_values(a, beta1, beta2, expect_g):
    fam = PulseFamily(a=a, b=a, beta1=beta1, beta2=beta2, tau=TAU)
    dec = phase_decomposition(fam.schedule(), n=8000)
    # Holonomy orientation: one cycle multiplies |b> by e^{i (beta1 - beta2)}.
    assert abs((dec.gamma_g - expect_g + np.pi) % (2 * np.pi) - np.pi) < 1e-8
    assert abs(dec.gamma_d) < 1e-8


def test_phase_decomposition_unequal_slopes():
    with pytest.warns(UserWarning):
        fam = PulseFamily(a=2.0, b=0.0, beta1=0.0, beta2=0.0, tau=TAU)
    dec = phase_decomposition(fam.schedule(), n=8000)
    # gamma_d = (a - b) pi / 4 for this azimuth family.
    assert abs(dec.gamma_d - np.pi / 2) < 1e-8
    assert abs(dec.gamma_g - (2.0 - 0.0) * np.pi / 4) < 1e-8
