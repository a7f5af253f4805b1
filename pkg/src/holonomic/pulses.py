"""Bloch-angle schedules and inverse-engineered drive waveforms.

A pulse family fixes the polar profile alpha(t) = pi sin^2(pi t / tau) and a
piecewise azimuth

    beta(t) = a sin(alpha) + beta1   on [0, tau/2]
    beta(t) = b sin(alpha) + beta2   on (tau/2, tau]

The drive (Omega, xi) is recovered from the transitionless-tracking
constraints

    Omega sin(beta - xi) = -alpha_dot / 2
    Omega cos(beta - xi) = -(Delta + beta_dot) sin(alpha) / (2 cos(alpha))

evaluated with a two-argument arctangent so the branch is correct through
alpha in {0, pi} and beta_dot = 0, with Omega >= 0 by convention (the sign
lives in xi).  The azimuth jump beta1 -> beta2 happens at tau/2 where
alpha = pi and Omega = 0, so the jump never enters the Hamiltonian; it
contributes to the geometric phase analytically.

Holonomy orientation: propagating |b> through one cycle multiplies it by
e^{i (beta1 - beta2)} (dynamical phase vanishing for a = b).  A gate with
holonomy gamma is therefore realized with beta1 = 0, beta2 = -gamma.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import simpson


class PulseShape(enum.Enum):
    SIN_SQUARED = "sin_squared"


class PulseDesignError(ValueError):
    """Raised when the inverse engineering hits a non-removable singularity."""


def alpha_profile(t, tau: float):
    """Polar angle pi sin^2(pi t / tau); t may be scalar or array in [0, tau]."""
    t = np.asarray(t, dtype=float)
    if np.any(t < -1e-15) or np.any(t > tau * (1 + 1e-15)):
        raise ValueError(f"t outside [0, {tau}]")
    return np.pi * np.sin(np.pi * t / tau) ** 2


def dalpha_profile(t, tau: float):
    t = np.asarray(t, dtype=float)
    return (np.pi**2 / tau) * np.sin(2 * np.pi * t / tau)


@dataclass(frozen=True)
class PulseFamily:
    """Azimuth-family parameters; a = b = 2n gives the Rabi-error-free design."""

    a: float
    b: float
    beta1: float
    beta2: float
    tau: float
    shape: PulseShape = PulseShape.SIN_SQUARED

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError("tau must be positive")
        if self.a != self.b:
            warnings.warn(
                "a != b: the dynamical phase no longer vanishes and the "
                "holonomy is not beta1 - beta2; proceeding for exploration",
                stacklevel=3,
            )

    def schedule(self) -> "AngleSchedule":
        return AngleSchedule(family=self)


def beta_profile(t, fam: PulseFamily):
    """Piecewise azimuth; with a = b = 0 this is the plain two-plateau scheme."""
    t = np.asarray(t, dtype=float)
    if np.any(t < -1e-15) or np.any(t > fam.tau * (1 + 1e-15)):
        raise ValueError(f"t outside [0, {fam.tau}]")
    al = alpha_profile(t, fam.tau)
    first = t <= fam.tau / 2
    return np.where(first, fam.a * np.sin(al) + fam.beta1, fam.b * np.sin(al) + fam.beta2)


@dataclass(frozen=True)
class AngleSchedule:
    """Callable view of (alpha, beta) with the azimuth jump made explicit.

    The single discontinuity sits at tau/2, which belongs to the first
    segment's closure.  ``segment`` selects the closure used for the shared
    node: 0 for [0, tau/2], 1 for [tau/2, tau].
    """

    family: PulseFamily

    @property
    def tau(self) -> float:
        return self.family.tau

    @property
    def discontinuities(self) -> tuple[float, ...]:
        return (self.family.tau / 2,)

    @property
    def beta_jump(self) -> float:
        return self.family.beta2 - self.family.beta1

    def alpha(self, t):
        return alpha_profile(t, self.family.tau)

    def dalpha(self, t):
        return dalpha_profile(t, self.family.tau)

    def beta(self, t):
        return beta_profile(t, self.family)

    def _coef(self, t, segment: int | None):
        if segment is None:
            return np.where(np.asarray(t) <= self.family.tau / 2, self.family.a, self.family.b)
        return self.family.a if segment == 0 else self.family.b

    def beta_seg(self, t, segment: int):
        off = self.family.beta1 if segment == 0 else self.family.beta2
        return self._coef(t, segment) * np.sin(self.alpha(t)) + off

    def dbeta(self, t, segment: int | None = None):
        """Smooth part of beta_dot; the tau/2 jump is handled analytically."""
        return self._coef(t, segment) * self.dalpha(t) * np.cos(self.alpha(t))

    def segment_grid(self, n: int) -> list[tuple[np.ndarray, int]]:
        """Uniform grids covering [0, tau/2] and [tau/2, tau], n samples total."""
        if n < 1000:
            raise ValueError("need at least 1000 samples per stage")
        if n % 4:
            raise ValueError("sample count must be divisible by 4")
        half = n // 2
        tau = self.family.tau
        return [
            (np.linspace(0.0, tau / 2, half + 1), 0),
            (np.linspace(tau / 2, tau, half + 1), 1),
        ]


@dataclass(frozen=True, eq=False)
class WaveformSegment:
    t: np.ndarray
    omega: np.ndarray
    xi: np.ndarray
    delta: np.ndarray
    segment: int


@dataclass(frozen=True, eq=False)
class DriveWaveform:
    """Sampled drive controls for one evolution stage.

    ``segments`` keep both one-sided closures at the azimuth jump; the flat
    ``t/omega/xi/delta`` views use the first segment's value at the shared
    node (where Omega = 0, so the choice never reaches the Hamiltonian).
    """

    schedule: AngleSchedule
    segments: tuple[WaveformSegment, ...]
    theta: float
    phi: float
    stage: str = "gate"

    @property
    def tau(self) -> float:
        return self.schedule.tau

    def _flat(self, name: str) -> np.ndarray:
        parts = [getattr(self.segments[0], name)]
        for seg in self.segments[1:]:
            parts.append(getattr(seg, name)[1:])
        return np.concatenate(parts)

    @property
    def t(self) -> np.ndarray:
        return self._flat("t")

    @property
    def omega(self) -> np.ndarray:
        return self._flat("omega")

    @property
    def xi(self) -> np.ndarray:
        return self._flat("xi")

    @property
    def delta(self) -> np.ndarray:
        return self._flat("delta")

    @property
    def steps(self) -> int:
        return len(self.t) - 1


def _segment_drive(ts, seg_idx, sched: AngleSchedule, delta_fn):
    """Evaluate (Omega, xi) on one segment's grid with stable branches."""
    al = sched.alpha(ts)
    da = sched.dalpha(ts)
    dbe = sched.dbeta(ts, segment=seg_idx)
    dlt = delta_fn(ts)
    sin_a, cos_a = np.sin(al), np.cos(al)

    a_comp = -da / 2.0
    with np.errstate(divide="ignore", invalid="ignore"):
        b_comp = -(dlt + dbe) * sin_a / (2.0 * cos_a)

    omega = np.hypot(a_comp, b_comp)
    # A removable node keeps Omega near the design scale; a genuine pole
    # (Delta + beta_dot nonzero where cos(alpha) = 0) blows up as 1/cos(alpha).
    fam = sched.family
    scale = (np.pi**2 / fam.tau) * (1.0 + max(abs(fam.a), abs(fam.b)))
    bad = ~np.isfinite(omega) | (omega > 1e8 * scale)
    if np.any(bad):
        t_bad = float(ts[np.argmax(bad)])
        raise PulseDesignError(
            f"drive amplitude diverges at t = {t_bad:.9g}: "
            "(Delta + beta_dot) does not vanish where cos(alpha) = 0"
        )
    u = np.arctan2(a_comp, b_comp)

    # Nodes where alpha_dot = 0 and the azimuth rate vanishes are removable:
    # Omega -> 0 there and u takes its one-sided interior limit.
    degenerate = (np.abs(a_comp) < 1e-12) & (np.abs(b_comp) < 1e-12)
    if np.any(degenerate):
        omega = np.where(degenerate, 0.0, omega)
        idx = np.flatnonzero(degenerate)
        good = np.flatnonzero(~degenerate)
        if good.size == 0:
            u = np.zeros_like(u)
        else:
            nearest = good[np.searchsorted(good, idx).clip(max=good.size - 1)]
            prev = good[(np.searchsorted(good, idx) - 1).clip(min=0)]
            pick = np.where(np.abs(nearest - idx) < np.abs(idx - prev), nearest, prev)
            u[idx] = u[pick]

    xi = sched.beta_seg(ts, seg_idx) - u
    return omega, xi, dlt


def inverse_engineer(
    sched: AngleSchedule,
    delta: Callable[[np.ndarray], np.ndarray] | float | None = None,
    n: int = 20000,
    theta: float = 0.0,
    phi: float = 0.0,
    stage: str = "gate",
) -> DriveWaveform:
    """Sample the drive (Omega, xi, Delta) that realizes the schedule.

    Parameters
    ----------
    sched : AngleSchedule
        Cyclic (alpha, beta) schedule.
    delta : callable, float or None
        Ideal detuning Delta(t) in rad/us; None means resonant (0).
    n : int
        Samples per stage (>= 1000, divisible by 4); the azimuth jump
        splits the grid at tau/2.
    theta, phi : float
        Dark/bright frame the waveform is meant to drive (carried as
        metadata for the propagator).
    """
    if delta is None:
        delta_fn = lambda ts: np.zeros_like(ts)
    elif callable(delta):
        delta_fn = delta
    else:
        dval = float(delta)
        delta_fn = lambda ts: np.full_like(ts, dval)

    segs = []
    for ts, idx in sched.segment_grid(n):
        omega, xi, dlt = _segment_drive(ts, idx, sched, delta_fn)
        segs.append(WaveformSegment(t=ts, omega=omega, xi=xi, delta=dlt, segment=idx))
    return DriveWaveform(
        schedule=sched, segments=tuple(segs), theta=theta, phi=phi, stage=stage
    )


def compensation_stage(
    fam: PulseFamily, theta: float, phi: float
) -> tuple[PulseFamily, float, float]:
    """Swap dark and bright roles and zero the holonomy for the second stage.

    Returns the compensation family (same a, b; beta1 = beta2 = 0, so the
    stage is an identity on the swapped frame) and the swapped frame angles
    theta_c = pi - theta, phi_c = pi + phi.
    """
    comp = PulseFamily(
        a=fam.a, b=fam.b, beta1=0.0, beta2=0.0, tau=fam.tau, shape=fam.shape
    )
    return comp, np.pi - theta, np.pi + phi


@dataclass(frozen=True)
class PhaseDecomposition:
    gamma_g: float
    gamma_d: float


def phase_decomposition(sched: AngleSchedule, n: int = 20000) -> PhaseDecomposition:
    """Geometric and dynamical phase of |chi_+> over one resonant cycle.

    gamma_g = -int beta_dot sin^2(alpha/2) dt, with each azimuth jump
    d_beta at alpha = pi contributing -d_beta analytically.  gamma_d is the
    half-integral of beta_dot sin^2(alpha)/cos(alpha), taken as a
    symmetric-pair principal value around tau/2 (the integrand of an a = b
    family is odd under t -> tau - t, so the pairs cancel through the
    cos(alpha) = 0 points).
    """
    fam = sched.family
    tau = fam.tau

    gamma_g = 0.0
    for ts, idx in sched.segment_grid(n):
        integrand = -sched.dbeta(ts, segment=idx) * np.sin(sched.alpha(ts) / 2) ** 2
        gamma_g += simpson(integrand, x=ts)
    for tj in sched.discontinuities:
        gamma_g += -sched.beta_jump * np.sin(sched.alpha(tj) / 2) ** 2

    def ratio(ts, idx):
        # beta_dot / cos(alpha): beta_dot carries the same cos(alpha) factor,
        # so the quotient is exact even where cos(alpha) underflows.
        return sched.dbeta(ts, segment=idx) / np.cos(sched.alpha(ts))

    half = n // 2
    ts1 = np.linspace(0.0, tau / 2, half + 1)
    paired = 0.5 * (ratio(ts1, 0) * np.sin(sched.alpha(ts1)) ** 2
                    + ratio(tau - ts1, 1) * np.sin(sched.alpha(tau - ts1)) ** 2)
    if not np.all(np.isfinite(paired)):
        raise FloatingPointError("principal value for the dynamical phase did not converge")
    gamma_d = 0.5 * simpson(2.0 * paired, x=ts1)

    return PhaseDecomposition(gamma_g=float(gamma_g), gamma_d=float(gamma_d))


def family_for_holonomy(gamma: float, a: float, b: float, tau: float) -> PulseFamily:
    """Pulse family realizing gate holonomy gamma (beta1 = 0, beta2 = -gamma)."""
    return PulseFamily(a=a, b=b, beta1=0.0, beta2=-gamma, tau=tau)
