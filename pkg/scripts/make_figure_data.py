#!/usr/bin/env python3
"""Generate the CSV inputs consumed by the plotting frontend.

Writes population/fidelity traces, eps and delta fidelity curves, and
(eps, delta) fidelity grids for the gate catalog.  Everything is
deterministic; rerunning into the same directory reproduces identical
files.  Use --steps/--grid-steps to trade accuracy for speed.
"""

import argparse
import pathlib
import sys

import numpy as np

from holonomic.lab import SweepRequest, emit_csv, emit_trace_csv, run_gate, sweep


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out_dir", type=pathlib.Path)
    ap.add_argument("--steps", type=int, default=4000, help="steps for traces/curves")
    ap.add_argument("--grid-steps", type=int, default=2000, help="steps for grids")
    ap.add_argument("--grid-points", type=int, default=51, help="grid axis length")
    args = ap.parse_args(argv)
    out = args.out_dir
    out.mkdir(parents=True, exist_ok=True)

    # Two-stage traces for the inverter: ideal and with typical errors.
    for tag, eps, dmhz in (("ideal", 0.0, 0.0), ("errors", 0.2, 2.0)):
        trace, summary = run_gate(
            "not", cp=True, eps=eps, delta_mhz=dmhz, steps=args.steps,
            record_stride=max(1, args.steps // 400),
        )
        emit_trace_csv(trace, summary, out / f"trace_not_{tag}.csv")
        print(f"trace_not_{tag}.csv  F={summary['fidelity_sim']:.6f}")

    # Fidelity vs Rabi error for every gate, both azimuth slopes.
    eps_axis = tuple(np.linspace(-0.2, 0.2, 41))
    for gate in ("not", "hadamard", "s", "t"):
        for a in (0.0, 4.0):
            req = SweepRequest(
                gate=gate, kind="eps", eps_values=eps_axis,
                a=a, b=a, cp=False, steps=args.steps,
            )
            name = f"sweep_eps_{gate}_ab{a:g}.csv"
            emit_csv(sweep(req), out / name)
            print(name)

    # Fidelity vs detuning for the inverter and quarter-phase gates.
    dmhz_axis = tuple(np.linspace(-4.0, 4.0, 41))
    for gate in ("not", "s"):
        for a, cp in ((0.0, False), (0.0, True), (4.0, False), (4.0, True)):
            req = SweepRequest(
                gate=gate, kind="delta", delta_mhz_values=dmhz_axis,
                a=a, b=a, cp=cp, steps=args.steps,
            )
            name = f"sweep_delta_{gate}_ab{a:g}{'_cp' if cp else ''}.csv"
            emit_csv(sweep(req), out / name)
            print(name)

    # (eps, delta) fidelity grids for the contour maps.
    n = args.grid_points
    eps_grid = tuple(np.linspace(-0.2, 0.2, n))
    dmhz_grid = tuple(np.linspace(-4.0, 4.0, n))
    for gate in ("not", "s"):
        for a, cp in ((0.0, False), (4.0, False), (4.0, True)):
            req = SweepRequest(
                gate=gate, kind="grid", eps_values=eps_grid,
                delta_mhz_values=dmhz_grid, a=a, b=a, cp=cp,
                steps=args.grid_steps,
            )
            name = f"grid_{gate}_ab{a:g}{'_cp' if cp else ''}.csv"
            emit_csv(sweep(req), out / name)
            print(name)
    return 0


if __name__ == "__main__":
    sys.exit(main())
