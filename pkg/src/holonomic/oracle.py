"""Analytic second-order error integrals and closed-form fidelities.

Everything here is quadrature over the designed schedules; nothing is
propagated.  The machinery follows the error-picture perturbation series:
the unperturbed propagator over a stage is

    U0(t, 0) = |d><d| + e^{i phi+(t)}|chi+(t)><b| - e^{i phi-(t)}|chi-(t)><e|

with accumulated phases phi+- obtained by quadrature of
i<chi|chi_dot> - <chi|H0|chi>.  Second-order infidelity is a sum over the
two open channels (bright<->excited "12" and dark/bright "13") of the
squared time-integrated perturbation matrix elements.  For a two-stage run
(gate + compensation) the basis is continued through the stage boundary, so
channel amplitudes from both stages add coherently before squaring; the
detuning part of channel 13 cancels identically between stages, which is
the compensation mechanism.

Conventions: a stage family (a, b, beta1, beta2) realizes the holonomy
gamma = beta1 - beta2 on |b>, and all stage-boundary phases below are
computed, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson, simpson

from .propagate import ErrorModel
from .pulses import AngleSchedule, DriveWaveform


@dataclass(frozen=True, eq=False)
class PhaseSegment:
    t: np.ndarray
    phi_plus: np.ndarray
    phi_minus: np.ndarray


@dataclass(frozen=True, eq=False)
class PhaseTrack:
    """Accumulated phases of |chi+-> over one stage, phi(stage start) = 0."""

    segments: tuple[PhaseSegment, ...]
    stage: str

    @property
    def phi_plus_end(self) -> float:
        return float(self.segments[-1].phi_plus[-1])

    @property
    def phi_minus_end(self) -> float:
        return float(self.segments[-1].phi_minus[-1])


def accumulated_phases(sched: AngleSchedule, wf: DriveWaveform) -> PhaseTrack:
    """Quadrature of the phase integrands on the waveform grid.

    The azimuth jump d_beta at alpha = pi adds -d_beta * sin^2(alpha/2) to
    phi+ and -d_beta * cos^2(alpha/2) to phi- analytically (the former is
    -d_beta, the latter zero, when the jump sits at alpha = pi).
    """
    if wf.schedule.family != sched.family:
        raise ValueError("waveform was engineered from a different schedule")
    segs = []
    off_p = off_m = 0.0
    for wseg in wf.segments:
        ts = wseg.t
        al = sched.alpha(ts)
        dbe = sched.dbeta(ts, segment=wseg.segment)
        om_cos_u = wseg.omega * np.cos(sched.beta_seg(ts, wseg.segment) - wseg.xi)
        sin_a = np.sin(al)
        s2, c2 = np.sin(al / 2) ** 2, np.cos(al / 2) ** 2
        dot_p = -dbe * s2 - om_cos_u * sin_a - wseg.delta * s2
        dot_m = -dbe * c2 + om_cos_u * sin_a - wseg.delta * c2
        phi_p = off_p + cumulative_simpson(dot_p, x=ts, initial=0.0)
        phi_m = off_m + cumulative_simpson(dot_m, x=ts, initial=0.0)
        segs.append(PhaseSegment(t=ts, phi_plus=phi_p, phi_minus=phi_m))
        off_p, off_m = phi_p[-1], phi_m[-1]
        t_end = ts[-1]
        for tj in sched.discontinuities:
            if abs(tj - t_end) < 1e-15 and wseg.segment == 0:
                aj = float(sched.alpha(tj))
                off_p += -sched.beta_jump * np.sin(aj / 2) ** 2
                off_m += -sched.beta_jump * np.cos(aj / 2) ** 2
    return PhaseTrack(segments=tuple(segs), stage=wf.stage)


@dataclass(frozen=True)
class ErrorIntegrals:
    """Second-order quadratures over one gate stage.

    Units: delta-type integrals carry time (us); eps-type are dimensionless.
    I12_tilde is populated only when a compensation track was supplied.
    """

    O12_delta: complex
    O12_eps: complex
    O13_delta: float
    O13_eps: float
    W: complex
    Q: float
    I12: complex
    I12_tilde: complex | None = None


def _pv_half_ratio(sched: AngleSchedule, n: int) -> float:
    """Principal value of (1/2) int beta_dot sin(a) tan(a) dt by pairing.

    Samples at t and tau - t are summed before integrating, cancelling the
    cos(alpha) = 0 pole for a = b families; the ratio beta_dot/cos(alpha)
    is formed against the same cos(alpha) used inside beta_dot, so the
    quotient stays exact where the cosine underflows.
    """
    tau = sched.tau
    ts = np.linspace(0.0, tau / 2, n // 2 + 1)

    def f(t, seg):
        return (
            sched.dbeta(t, segment=seg)
            / np.cos(sched.alpha(t))
            * np.sin(sched.alpha(t)) ** 2
        )

    paired = f(ts, 0) + f(tau - ts, 1)
    if not np.all(np.isfinite(paired)):
        raise FloatingPointError("principal-value quadrature did not converge")
    return float(0.5 * simpson(paired, x=ts))


def error_integrals(
    sched: AngleSchedule, phases: PhaseTrack, n_half: float
) -> ErrorIntegrals:
    """Compute the stage error integrals by composite Simpson quadrature.

    n_half is the suppression index n of the a = b = 2n design; it only
    enters W's reference exponent e^{-i 2 n alpha}.
    """
    o12d = 0.0 + 0.0j
    o12e = 0.0 + 0.0j
    o13d = 0.0
    grids = sched.segment_grid(sum(len(s.t) - 1 for s in phases.segments))
    for (ts, seg), pseg in zip(grids, phases.segments):
        if len(ts) != len(pseg.t):
            raise ValueError("phase track inconsistent with schedule grid")
        al = sched.alpha(ts)
        dphase = np.exp(-1j * (pseg.phi_plus - pseg.phi_minus))
        sin_a = np.sin(al)
        o12d += complex(simpson(dphase * sin_a, x=ts))
        o12e += complex(
            -simpson(dphase * (sched.dbeta(ts, segment=seg) * sin_a
                               + 1j * sched.dalpha(ts)), x=ts)
        )
        o13d += float(simpson(np.sin(al / 2) ** 2, x=ts))

    n_samples = sum(len(s.t) - 1 for s in phases.segments)
    o13e = _pv_half_ratio(sched, n_samples)

    ts0, _ = grids[0]
    al0 = sched.alpha(ts0)
    w = complex(simpson(np.exp(-2j * n_half * al0) * np.sin(al0), x=ts0))
    q = float(simpson(np.sin(al0), x=ts0))

    return ErrorIntegrals(
        O12_delta=o12d,
        O12_eps=o12e,
        O13_delta=o13d,
        O13_eps=o13e,
        W=w,
        Q=q,
        I12=o12d,
    )


@dataclass(frozen=True, eq=False)
class StageChannels:
    """Per-unit-error channel integrals of one stage, with boundary phases.

    j12_* multiply |c_b| e^{-i beta_start} / 2 in the channel amplitude;
    j13_* multiply c_d* c_b*.  beta/phi boundary values feed the basis
    continuation into a following compensation stage.
    """

    j12_delta: complex
    j12_eps: complex
    j13_delta: complex
    j13_eps: complex
    beta_start: float
    beta_end: float
    phi_minus_end: float
    stage: str


def stage_channels(
    sched: AngleSchedule, wf: DriveWaveform, phases: PhaseTrack
) -> StageChannels:
    """Channel integrals evaluated from the inverse-engineered waveform."""
    j12d = j12e = 0.0 + 0.0j
    j13d = j13e = 0.0 + 0.0j
    for wseg, pseg in zip(wf.segments, phases.segments):
        ts = wseg.t
        al = sched.alpha(ts)
        sin_a, cos_a = np.sin(al), np.cos(al)
        u = sched.beta_seg(ts, wseg.segment) - wseg.xi
        x = cos_a * np.cos(u) + 1j * np.sin(u)
        dphase = np.exp(-1j * (pseg.phi_plus - pseg.phi_minus))
        j12d += complex(simpson(dphase * sin_a, x=ts))
        j12e += complex(simpson(2.0 * dphase * wseg.omega * x, x=ts))
        j13d += complex(simpson(np.sin(al / 2) ** 2, x=ts))
        j13e += complex(simpson(wseg.omega * sin_a * np.cos(u), x=ts))
    fam = sched.family
    return StageChannels(
        j12_delta=j12d,
        j12_eps=j12e,
        j13_delta=j13d,
        j13_eps=j13e,
        beta_start=fam.beta1,
        beta_end=fam.beta2,
        phi_minus_end=phases.phi_minus_end,
        stage=wf.stage,
    )


@dataclass(frozen=True, eq=False)
class AnalyticFidelity:
    """Second-order fidelity with its per-channel breakdown.

    breakdown values sum to the total infidelity; for a compensated run the
    'channel13_delta' entry isolates the detuning part of channel 13, which
    the compensation stage cancels identically.
    """

    p_tau: float
    p_2tau: float | None
    breakdown: dict
    p_tau_symmetric: float | None = None


def _amplitudes(c_d, c_b, ch: StageChannels, eps: float, delta: float):
    mag_b = abs(c_b)
    a12 = mag_b * np.exp(-1j * ch.beta_start) * (delta * ch.j12_delta + eps * ch.j12_eps) / 2.0
    a13 = np.conj(c_d) * np.conj(c_b) * (delta * ch.j13_delta + eps * ch.j13_eps)
    return a12, a13


def _comp_amplitudes(c_d, c_b, gate: StageChannels, comp: StageChannels,
                     eps: float, delta: float):
    # Basis continuation through the boundary: the excited-channel ket picks
    # up the full stage-1 phase of |e> and keeps the stage-1 normalization
    # phase c_b/|c_b|; the 13-channel ket continues with an overall sign flip
    # of its chi+ part, hence the minus.
    phase_b = c_b / abs(c_b) if abs(c_b) > 1e-300 else 1.0
    link = np.exp(1j * (gate.phi_minus_end + gate.beta_end - gate.beta_start))
    b12 = (
        phase_b
        * np.conj(c_d)
        * link
        * np.exp(-1j * comp.beta_start)
        * (delta * comp.j12_delta + eps * comp.j12_eps)
        / 2.0
    )
    b13 = -np.conj(c_d) * np.conj(c_b) * (delta * comp.j13_delta + eps * comp.j13_eps)
    return b12, b13


def analytic_fidelity(
    c_d: complex,
    c_b: complex,
    gate: StageChannels,
    comp: StageChannels | None,
    err: ErrorModel,
) -> AnalyticFidelity:
    """Second-order fidelity for a gate stage, optionally with compensation."""
    eps, delta = err.epsilon, err.delta
    a12, a13 = _amplitudes(c_d, c_b, gate, eps, delta)
    if comp is None:
        loss12, loss13 = abs(a12) ** 2, abs(a13) ** 2
        breakdown = {"channel12": loss12, "channel13": loss13}
        return AnalyticFidelity(
            p_tau=1.0 - loss12 - loss13, p_2tau=None, breakdown=breakdown
        )
    b12, b13 = _comp_amplitudes(c_d, c_b, gate, comp, eps, delta)
    loss12 = abs(a12 + b12) ** 2
    loss13 = abs(a13 + b13) ** 2
    cancelled = abs(
        np.conj(c_d) * np.conj(c_b) * delta * (gate.j13_delta - comp.j13_delta)
    ) ** 2
    breakdown = {
        "channel12": loss12,
        "channel13": loss13,
        "channel13_delta": cancelled,
    }
    return AnalyticFidelity(
        p_tau=1.0 - abs(a12) ** 2 - abs(a13) ** 2,
        p_2tau=1.0 - loss12 - loss13,
        breakdown=breakdown,
    )


def analytic_fidelity_gate(
    c_d: complex,
    c_b: complex,
    ints: ErrorIntegrals,
    err: ErrorModel,
    gamma: float,
) -> AnalyticFidelity:
    """Gate-stage fidelity from the tabulated integrals.

    The channel-13 eps integral enters with the sign the error-picture
    matrix element actually carries (minus the tabulated O13_eps); both
    vanish for a = b designs.  The symmetric-alpha specialization

        1 - delta^2 |c_b|^2 [ |W|^2 (1 + cos gamma) / 2 + |c_d|^2 O13d^2 ]

    uses O12_delta = W (1 + e^{-i gamma}) and is exposed alongside.
    """
    eps, delta = err.epsilon, err.delta
    loss12 = abs(c_b) ** 2 * abs(delta * ints.O12_delta + eps * ints.O12_eps) ** 2 / 4.0
    loss13 = abs(c_d * c_b) ** 2 * abs(delta * ints.O13_delta - eps * ints.O13_eps) ** 2
    sym = 1.0 - delta**2 * abs(c_b) ** 2 * (
        abs(ints.W) ** 2 * (1.0 + np.cos(gamma)) / 2.0
        + abs(c_d) ** 2 * ints.O13_delta**2
    )
    return AnalyticFidelity(
        p_tau=1.0 - loss12 - loss13,
        p_2tau=None,
        breakdown={"channel12": loss12, "channel13": loss13},
        p_tau_symmetric=float(sym),
    )


def analytic_fidelity_cp(
    c_d: complex,
    c_b: complex,
    gate: StageChannels,
    comp: StageChannels,
    delta: float,
    gamma: float,
) -> AnalyticFidelity:
    """Two-stage fidelity for a pure detuning error (the compensated case)."""
    return analytic_fidelity(
        c_d, c_b, gate, comp, ErrorModel(epsilon=0.0, delta=delta)
    )


def matrix_elements(
    t: float,
    wf: DriveWaveform,
    sched: AngleSchedule,
    phases: PhaseTrack,
    err: ErrorModel,
    c_d: complex,
    c_b: complex,
    link: StageChannels | None = None,
):
    """Error-picture elements (H'_12, H'_13) at stage-local time t.

    For a compensation-stage waveform, ``link`` must carry the preceding
    gate stage's boundary phases so the basis continuation is applied.
    """
    seg_idx = 0 if t <= sched.tau / 2 else 1
    wseg = wf.segments[seg_idx]
    pseg = phases.segments[seg_idx]
    al = float(sched.alpha(t))
    omega = float(np.interp(t, wseg.t, wseg.omega))
    xi = float(np.interp(t, wseg.t, wseg.xi))
    dphi = float(
        np.interp(t, pseg.t, pseg.phi_plus) - np.interp(t, pseg.t, pseg.phi_minus)
    )
    u = float(sched.beta_seg(t, seg_idx)) - xi
    x = np.cos(al) * np.cos(u) + 1j * np.sin(u)
    g12 = (err.delta / 2.0) * np.sin(al) + err.epsilon * omega * x
    g13 = err.delta * np.sin(al / 2) ** 2 + err.epsilon * omega * np.sin(al) * np.cos(u)

    if wf.stage == "gate":
        h12 = abs(c_b) * np.exp(-1j * sched.family.beta1) * np.exp(-1j * dphi) * g12
        h13 = np.conj(c_d) * np.conj(c_b) * g13
        return complex(h12), complex(h13)
    if link is None:
        raise ValueError("compensation-stage elements need the gate stage's boundary data")
    phase_b = c_b / abs(c_b) if abs(c_b) > 1e-300 else 1.0
    cont = np.exp(1j * (link.phi_minus_end + link.beta_end - link.beta_start))
    h12 = (
        phase_b
        * np.conj(c_d)
        * cont
        * np.exp(-1j * sched.family.beta1)
        * np.exp(-1j * dphi)
        * g12
    )
    h13 = -np.conj(c_d) * np.conj(c_b) * g13
    return complex(h12), complex(h13)


def table_coefficient(
    c_d: complex,
    c_b: complex,
    gate: StageChannels,
    comp: StageChannels | None,
    kind: str,
) -> float:
    """Infidelity coefficient f such that 1 - P = error^2 * f.

    kind is "eps" or "delta"; the coefficient is assembled from the
    quadrature channel integrals at unit error.
    """
    if kind == "eps":
        err = ErrorModel(epsilon=1.0, delta=0.0)
    elif kind == "delta":
        err = ErrorModel(epsilon=0.0, delta=1.0)
    else:
        raise ValueError(f"unknown coefficient kind {kind!r}")
    res = analytic_fidelity(c_d, c_b, gate, comp, err)
    p = res.p_2tau if comp is not None else res.p_tau
    return float(1.0 - p)
