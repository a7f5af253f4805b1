#!/usr/bin/env python3
"""Step-doubling convergence report for the gate catalog.

Prints |F_N - F_2N| per gate and error model, plus the observed RK4 order
from consecutive step doublings.
"""

import argparse
import sys

import numpy as np

from holonomic.lab import CATALOG, build_setup
from holonomic.propagate import ErrorModel, SimConfig, evolve_final_batch


def final_fidelity(gate: str, err: ErrorModel, steps: int, cp: bool) -> float:
    setup = build_setup(gate, cp=cp, steps=steps)
    config = SimConfig(stages=setup.stages, steps=steps, record_stride=steps)
    f, _ = evolve_final_batch(
        setup.entry.init.state(), config,
        np.array([err.epsilon]), np.array([err.delta]), setup.entry.target,
    )
    return float(f[0])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=4000)
    ap.add_argument("--cp", action=argparse.BooleanOptionalAction, default=False)
    args = ap.parse_args(argv)

    models = {
        "ideal": ErrorModel(),
        "rabi 0.2": ErrorModel(epsilon=0.2),
        "detuning 2MHz": ErrorModel(delta=4 * np.pi),
    }
    print(f"{'gate':10s} {'model':14s} {'|F_N - F_2N|':>14s} {'order':>7s}")
    for gate in sorted(CATALOG):
        for label, err in models.items():
            f1 = final_fidelity(gate, err, args.steps, args.cp)
            f2 = final_fidelity(gate, err, 2 * args.steps, args.cp)
            f4 = final_fidelity(gate, err, 4 * args.steps, args.cp)
            d12, d24 = abs(f1 - f2), abs(f2 - f4)
            order = np.log2(d12 / d24) if d24 > 0 else float("nan")
            print(f"{gate:10s} {label:14s} {d12:14.3e} {order:7.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
