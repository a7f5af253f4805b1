"""Command-line interface.

Subcommands: run, sweep-eps, sweep-delta, grid, tables, selftest.
Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 I/O failure.
Detuning is taken in MHz (linear frequency) and converted internally via
delta_rad_per_us = 2 pi delta_mhz; see the README for the full convention.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .lab import (
    CATALOG,
    DEFAULT_A,
    DEFAULT_B,
    DEFAULT_STEPS,
    DEFAULT_TAU_US,
    SweepRequest,
    build_setup,
    emit_csv,
    emit_trace_csv,
    run_gate,
    sweep,
)
from .oracle import table_coefficient
from .propagate import IntegratorError
from .pulses import PulseDesignError

USAGE_ERROR = 1
NUMERICAL_ERROR = 2
IO_ERROR = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parse_axis(text: str) -> tuple[float, ...]:
    """Either a single value or start:stop:count."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise _UsageError(f"bad range {text!r}; expected start:stop:count")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise _UsageError("range count must be positive")
        return tuple(np.linspace(start, stop, count))
    return (float(text),)


def _load_config(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise _UsageError(f"{path}:{line_no}: expected key=value")
            key, val = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_")] = val
    return values


_CONFIG_CASTS = {
    "gate": str,
    "a": float,
    "b": float,
    "cp": lambda s: s.lower() in ("1", "true", "yes", "on"),
    "eps": str,
    "delta_mhz": str,
    "tau_us": float,
    "steps": int,
    "out": str,
}


def _add_common(p: _Parser, with_axes: bool = True):
    p.add_argument("--gate", choices=sorted(CATALOG), default=None)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--cp", action=argparse.BooleanOptionalAction, default=None)
    if with_axes:
        p.add_argument("--eps", default=None, help="value or start:stop:count")
        p.add_argument("--delta-mhz", default=None, help="value or start:stop:count")
    p.add_argument("--tau-us", type=float, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--config", default=None)


def _merged(args, key, fallback):
    cli_val = getattr(args, key, None)
    if cli_val is not None:
        return cli_val
    cfg = getattr(args, "_config_values", {})
    if key in cfg:
        return _CONFIG_CASTS[key](cfg[key])
    return fallback


def _common_values(args):
    return {
        "gate": _merged(args, "gate", "not"),
        "a": _merged(args, "a", DEFAULT_A),
        "b": _merged(args, "b", DEFAULT_B),
        "cp": _merged(args, "cp", True),
        "tau": _merged(args, "tau_us", DEFAULT_TAU_US),
        "steps": _merged(args, "steps", DEFAULT_STEPS),
    }


def _cmd_run(args) -> int:
    vals = _common_values(args)
    eps_axis = _parse_axis(_merged(args, "eps", "0.0"))
    dmhz_axis = _parse_axis(_merged(args, "delta_mhz", "0.0"))
    if len(eps_axis) != 1 or len(dmhz_axis) != 1:
        raise _UsageError("run takes single --eps and --delta-mhz values")
    trace, summary = run_gate(
        vals["gate"], a=vals["a"], b=vals["b"], cp=vals["cp"],
        eps=eps_axis[0], delta_mhz=dmhz_axis[0],
        tau=vals["tau"], steps=vals["steps"],
    )
    for key in (
        "gate", "a", "b", "cp", "eps", "delta_mhz", "delta_rad_per_us",
        "tau_us", "steps", "fidelity_sim", "fidelity_oracle", "infidelity_sim",
    ):
        print(f"{key} = {summary[key]}")
    print(f"final populations p0={trace.p0[-1]:.6g} p1={trace.p1[-1]:.6g} "
          f"pe={trace.pe[-1]:.6g}")
    out = _merged(args, "out", None)
    if out:
        emit_trace_csv(trace, summary, out)
        print(f"trace written to {out}")
    return 0


def _run_sweep(args, kind: str) -> int:
    vals = _common_values(args)
    eps_axis = (0.0,)
    dmhz_axis = (0.0,)
    if kind in ("eps", "grid"):
        eps_axis = _parse_axis(_merged(args, "eps", "-0.2:0.2:41"))
    if kind in ("delta", "grid"):
        dmhz_axis = _parse_axis(_merged(args, "delta_mhz", "-4:4:41"))
    req = SweepRequest(
        gate=vals["gate"], kind=kind,
        eps_values=eps_axis, delta_mhz_values=dmhz_axis,
        a=vals["a"], b=vals["b"], cp=vals["cp"],
        tau=vals["tau"], steps=vals["steps"],
    )
    result = sweep(req)
    out = _merged(args, "out", None)
    if not out:
        raise _UsageError(f"{kind} sweep requires --out")
    emit_csv(result, out)
    print(f"{len(result.eps)} points written to {out} "
          f"(config hash {result.meta['config_hash']})")
    return 0


def _cmd_tables(args) -> int:
    vals = _common_values(args)
    print("infidelity coefficients f (1 - F = error^2 * f), computed by quadrature")
    header = f"{'gate':10s} {'scheme':7s} {'eps-type':>14s} {'delta-type':>14s} {'delta-type+cp':>14s}"
    print(header)
    for gate in sorted(CATALOG):
        for a in (0.0, 4.0):
            nocp = build_setup(gate, a=a, b=a, cp=False, tau=vals["tau"], steps=vals["steps"])
            withcp = build_setup(gate, a=a, b=a, cp=True, tau=vals["tau"], steps=vals["steps"])
            f_eps = table_coefficient(nocp.c_d, nocp.c_b, nocp.gate_channels, None, "eps")
            f_del = table_coefficient(nocp.c_d, nocp.c_b, nocp.gate_channels, None, "delta")
            f_cp = table_coefficient(
                withcp.c_d, withcp.c_b, withcp.gate_channels, withcp.comp_channels, "delta"
            )
            print(f"{gate:10s} a=b={a:<3g} {f_eps:14.6g} {f_del:14.6g} {f_cp:14.6g}")
    print("delta-type coefficients are in us^2 (delta in rad/us); eps-type dimensionless")
    return 0


def _cmd_selftest(args) -> int:
    from .acceptance import run_all

    results = run_all()
    return 0 if all(r.passed for r in results) else NUMERICAL_ERROR


def build_parser() -> _Parser:
    parser = _Parser(prog="holonomic", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate one gate and print a summary")
    _add_common(p_run)
    p_run.set_defaults(func=_cmd_run)

    for name, kind in (("sweep-eps", "eps"), ("sweep-delta", "delta"), ("grid", "grid")):
        p = sub.add_parser(name, help=f"{kind} fidelity sweep to CSV")
        _add_common(p)
        p.set_defaults(func=lambda a, k=kind: _run_sweep(a, k))

    p_tab = sub.add_parser("tables", help="print computed infidelity coefficients")
    _add_common(p_tab, with_axes=False)
    p_tab.set_defaults(func=_cmd_tables)

    p_self = sub.add_parser("selftest", help="run the acceptance criteria")
    p_self.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "config", None):
            args._config_values = _load_config(args.config)
        else:
            args._config_values = {}
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (PulseDesignError, IntegratorError, FloatingPointError, ValueError, KeyError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return NUMERICAL_ERROR
    except OSError as exc:
        print(f"i/o failure ({getattr(exc, 'filename', '?')}): {exc}", file=sys.stderr)
        return IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
