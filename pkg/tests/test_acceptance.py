"""Acceptance criteria, one test per criterion.

Each check prints its pass/fail line via holonomic.acceptance.  Two checks
are expected to stay red (see their failure messages and the regression
tests pinning the measured values): the a=b=0 Hadamard coefficient check
inside A2, whose reference constant is half the value both perturbation
theory and simulation produce, and the A7 0.999 threshold, which the
quartic Rabi residual at eps = 0.2 makes unreachable for any tau.
"""

import numpy as np
import pytest

from holonomic import acceptance
from holonomic.lab import build_setup
from holonomic.propagate import SimConfig, evolve_final_batch


def _check(result):
    print(f"[{'PASS' if result.passed else 'FAIL'}] {result.name}: {result.detail}")
    assert result.passed, f"{result.name}: {result.detail}"


def test_a1_ideal_gate_correctness():
    _check(acceptance.a1_ideal_gates())


def test_a2_rabi_error_coefficients():
    _check(acceptance.a2_rabi_coefficients())


def test_a3_rabi_error_elimination():
    _check(acceptance.a3_rabi_elimination())


def test_a4_detuning_ratio_claims():
    _check(acceptance.a4_detuning_ratios())


def test_a5_compensation_cancellation():
    _check(acceptance.a5_compensation_cancellation())


def test_a6_oracle_simulator_agreement():
    _check(acceptance.a6_oracle_agreement())


def test_a7_headline_fidelity():
    _check(acceptance.a7_headline_fidelity())


def test_a8_exact_invariants():
    _check(acceptance.a8_exact_invariants())


def test_a9_region_ordering():
    _check(acceptance.a9_region_ordering())


# --- pinned regression values for the red criteria ----------------------


def test_headline_value_regression():
    # What the compensated inverter actually reaches at eps=0.2,
    # delta = 2 MHz (2 pi convention), tau = 0.1 us, 40000 steps.
    setup = build_setup("not", cp=True, tau=0.1, steps=40000)
    config = SimConfig(stages=setup.stages, steps=40000, record_stride=40000)
    f, _ = evolve_final_batch(
        setup.entry.init.state(), config,
        np.array([0.2]), np.array([4 * np.pi]), setup.entry.target,
    )
    assert abs(float(f[0]) - 0.9985880759431331) < 5e-9


@pytest.mark.parametrize(
    "gate,pinned",
    [
        ("not", 1.331431054741e-04),
        ("hadamard", 3.899763061965e-05),
        ("s", 6.657171698587e-05),
        ("t", 1.949851202132e-05),
    ],
)
def test_quartic_residual_regression(gate, pinned):
    # Residual infidelity of the slope-four design at eps = 0.1 (the
    # constant behind the A3 quartic scaling), pinned at 20000 steps.
    setup = build_setup(gate, cp=False, tau=0.1, steps=20000)
    config = SimConfig(stages=setup.stages, steps=20000, record_stride=20000)
    f, _ = evolve_final_batch(
        setup.entry.init.state(), config,
        np.array([0.1]), np.array([0.0]), setup.entry.target,
    )
    assert abs((1 - float(f[0])) - pinned) < 1e-9 + 1e-4 * pinned
