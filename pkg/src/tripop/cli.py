"""Command-line surface: machine-readable tables, traces, scans, and checks.

Subcommands
-----------
table       transfer-condition table (integers, action, coupling ratio)
trace       analytic and RK4 populations over a harmonic drive
verify      per-condition self-checks; nonzero exit on any failure
leakage     measured deficits vs perturbative estimates over a splitting grid
conditions  inverse lookup of (alpha, beta, area) in the transfer family
kick        ideal-kick populations vs finite-width Gaussian kicks

All commands write CSV or JSON files.  Floats are serialized with their
shortest round-trip representation, and no timestamps or environment data
enter the output, so identical invocations produce byte-identical files.
The TRIPOP_STEPS environment variable overrides the integrator's default
steps per period where --steps-per-period is not given.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .conditions import (
    OddPair,
    classify_cases,
    condition_from_odd_pair,
    enumerate_conditions,
    populations_closed_form_array,
    validate_condition,
)
from .dressed import CouplingRatios, build_dressed_basis, populations_general_array
from .errors import TripopError
from .leakage import delta_p2_at_t0, leakage_scan
from .propagate import (
    IntegratorConfig,
    LevelEnergies,
    default_steps_per_period,
    integrate,
    propagate_kick,
)
from .pulses import Pulse, harmonic_for_condition
from .verification import verify_conditions


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _write_rows(path: str, fmt: str, command: str, params: dict, header: list[str], rows: list[list]) -> None:
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
        return
    payload = {
        "meta": {"command": command, "parameters": params, "version": __version__},
        "rows": [dict(zip(header, row)) for row in rows],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _steps(args) -> int:
    if args.steps_per_period is not None:
        return args.steps_per_period
    return default_steps_per_period()


# -- subcommand implementations ---------------------------------------------


def cmd_table(args) -> int:
    header = [
        "n1", "n2", "n_e", "n_o", "n_op",
        "k_case_i", "kp_case_i", "k_case_ii", "kp_case_ii", "k_case_iii", "kp_case_iii",
        "A_t0", "alpha",
    ]
    rows = []
    for cond in enumerate_conditions(args.max_product):
        cases = classify_cases(cond)
        rows.append(
            [
                cond.n1, cond.n2, cond.pair.n_o + cond.pair.n_op,
                cond.pair.n_o, cond.pair.n_op,
                *cases.case_i, *cases.case_ii, *cases.case_iii,
                cond.action_t0, cond.alpha,
            ]
        )
    _write_rows(args.out, args.format, "table", {"max_product": args.max_product}, header, rows)
    return 0


def cmd_trace(args) -> int:
    omega = 1.0
    ratios = CouplingRatios(alpha=args.alpha, beta=args.beta)
    basis = build_dressed_basis(ratios)
    pulse = Pulse.harmonic(v0=args.area, omega=omega)  # A(T/4) = v0/omega
    t_end = args.periods * pulse.period
    config = IntegratorConfig(steps_per_period=_steps(args))
    trace = integrate(ratios, LevelEnergies.degenerate(), pulse, t_end, config)
    actions = np.array([pulse.area(t).a for t in trace.times])
    analytic = populations_general_array(basis, actions)
    header = ["t", "p1", "p2", "p3", "p1_num", "p2_num", "p3_num"]
    rows = [
        [t, *analytic[i], *trace.populations[i]]
        for i, t in enumerate(trace.times)
    ]
    params = {
        "alpha": args.alpha, "beta": args.beta, "area": args.area,
        "periods": args.periods, "steps_per_period": config.steps_per_period,
    }
    _write_rows(args.out, args.format, "trace", params, header, rows)
    return 0


def cmd_verify(args) -> int:
    checks = verify_conditions(args.max_product, steps_per_period=_steps(args))
    header = ["n1", "n2", "analytic_error", "ode_deviation", "cases_ok", "status"]
    rows = [
        [
            c.condition.n1, c.condition.n2, c.analytic_error, c.ode_deviation,
            c.cases_ok, "pass" if c.passed else "fail",
        ]
        for c in checks
    ]
    params = {"max_product": args.max_product}
    _write_rows(args.out, args.format, "verify", params, header, rows)
    for c in checks:
        line = "pass" if c.passed else "FAIL"
        print(f"{line} (n1={c.condition.n1}, n2={c.condition.n2}) "
              f"analytic={c.analytic_error:.2e} ode={c.ode_deviation:.2e}")
    return 0 if all(c.passed for c in checks) else 1


def _parse_grid(spec: str) -> list[tuple[float, float]]:
    """Grid spec 'omega12:<v|start:stop:count>,omega13:<...>' -> splitting pairs."""
    axes: dict[str, list[float]] = {}
    for part in spec.split(","):
        fields = part.split(":")
        name = fields[0].strip()
        if name not in ("omega12", "omega13"):
            raise ValueError(f"unknown grid axis {name!r}")
        if len(fields) == 2:
            axes[name] = [float(fields[1])]
        elif len(fields) == 4:
            start, stop, count = float(fields[1]), float(fields[2]), int(fields[3])
            if count < 1:
                raise ValueError("grid count must be >= 1")
            axes[name] = [float(v) for v in np.linspace(start, stop, count)]
        else:
            raise ValueError(f"malformed grid axis {part!r}")
    if set(axes) != {"omega12", "omega13"}:
        raise ValueError("grid must define both omega12 and omega13")
    return [(w12, w13) for w12 in axes["omega12"] for w13 in axes["omega13"]]


def cmd_leakage(args) -> int:
    pair = OddPair(args.n_o, args.n_op)
    cond = condition_from_odd_pair(pair)
    grid = _parse_grid(args.grid)  # absolute splittings
    ratios = [(w12 / args.omega, w13 / args.omega) for w12, w13 in grid]
    config = IntegratorConfig(steps_per_period=_steps(args))
    measured = leakage_scan(cond, args.beta, ratios, config=config, omega=args.omega)
    header = ["omega12_ratio", "omega13_ratio", "deficit", "estimate"]
    rows = [
        [r12, r13, deficit, delta_p2_at_t0(cond, args.beta, r12, r13).delta_p2]
        for (r12, r13), deficit in measured
    ]
    params = {
        "n_o": args.n_o, "n_op": args.n_op, "beta": args.beta,
        "omega": args.omega, "grid": args.grid,
    }
    _write_rows(args.out, args.format, "leakage", params, header, rows)
    return 0


def cmd_conditions(args) -> int:
    match = validate_condition(args.alpha, args.beta, args.area, tol=args.tol)
    header = ["n1", "n2", "n_o", "n_op", "sign", "A_t0", "alpha", "beta"]
    rows = []
    if match is not None:
        rows.append(
            [
                match.n1, match.n2, match.pair.n_o, match.pair.n_op, match.sign,
                match.action_t0, match.alpha, match.beta,
            ]
        )
    params = {"alpha": args.alpha, "beta": args.beta, "area": args.area, "tol": args.tol}
    _write_rows(args.out, args.format, "conditions", params, header, rows)
    return 0


def cmd_kick(args) -> int:
    widths = [float(w) for w in args.widths.split(",")] if args.widths else []
    if any(w <= 0 for w in widths):
        raise ValueError("kick widths must be positive")
    if any(w1 <= w2 for w1, w2 in zip(widths, widths[1:])):
        raise ValueError("kick widths must be strictly decreasing")
    ratios = CouplingRatios(alpha=args.alpha, beta=args.beta)
    basis = build_dressed_basis(ratios)
    ideal = propagate_kick(basis, args.area).populations()
    header = ["kind", "width", "p1", "p2", "p3"]
    rows = [["ideal", 0.0, ideal.p1, ideal.p2, ideal.p3]]
    energies = LevelEnergies.from_splittings(args.omega12, args.omega13)
    for w in widths:
        center = 10.0 * w  # Gaussian support (8 widths) sits inside the window
        window = 20.0 * w
        pulse = Pulse.gaussian_kick(args.area, center, w)
        config = IntegratorConfig(dt=window / _steps(args))
        trace = integrate(ratios, energies, pulse, window, config)
        rows.append(["gaussian", w, *trace.populations[-1]])
    params = {
        "alpha": args.alpha, "beta": args.beta, "area": args.area,
        "widths": args.widths, "omega12": args.omega12, "omega13": args.omega13,
    }
    _write_rows(args.out, args.format, "kick", params, header, rows)
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tripop",
        description="Complete population transfer in a degenerate three-level atom.",
    )
    parser.add_argument("--version", action="version", version=f"tripop {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", required=True, help="output file path")
        p.add_argument("--steps-per-period", type=int, default=None)

    p = sub.add_parser("table", help="enumerate transfer conditions")
    p.add_argument("--max-product", type=int, required=True)
    add_common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("trace", help="analytic vs RK4 populations for a harmonic drive")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--area", type=float, required=True, help="quarter-period action A(t0)")
    p.add_argument("--periods", type=float, default=1.0)
    add_common(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("verify", help="check every family member against both paths")
    p.add_argument("--max-product", type=int, required=True)
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("leakage", help="measured deficit vs estimates over a splitting grid")
    p.add_argument("--n-o", type=int, required=True, dest="n_o")
    p.add_argument("--n-op", type=int, required=True, dest="n_op")
    p.add_argument("--beta", type=int, choices=(-1, 1), default=1)
    p.add_argument("--omega", type=float, default=1.0, help="drive frequency")
    p.add_argument("--grid", required=True,
                   help="absolute splittings, e.g. 'omega12:0:0.1:5,omega13:0'")
    add_common(p)
    p.set_defaults(func=cmd_leakage)

    p = sub.add_parser("conditions", help="inverse lookup of (alpha, beta, area)")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--area", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    add_common(p)
    p.set_defaults(func=cmd_conditions)

    p = sub.add_parser("kick", help="ideal kick vs finite-width Gaussian kicks")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--area", type=float, required=True, help="kick area A0")
    p.add_argument("--widths", default="0.1,0.05,0.025",
                   help="comma-separated decreasing Gaussian widths")
    p.add_argument("--omega12", type=float, default=1.0, help="level splitting E1-E2")
    p.add_argument("--omega13", type=float, default=1.0, help="level splitting E1-E3")
    add_common(p)
    p.set_defaults(func=cmd_kick)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TripopError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
