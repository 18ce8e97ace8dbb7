"""Command-line entry point: ``ma-ee motor-curve | solve | sweep``.

Precedence is flags > config file > built-in defaults.  The config file comes
from ``--config`` or, failing that, ``$MA_EE_CONFIG``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace
from pathlib import Path

from .bench import SWEEP_PARAMS, SweepSpec, fmt, monte_carlo_sweep
from .channel import sample_realization
from .config import load_config
from .errors import ConfigError
from .motor import torque_speed_curve
from .solver import Scheme, solve

SOLUTION_FIELDS = ("scheme", "x_t_star", "x_index", "P_star", "v_star", "ee_star", "tau",
                   "dinkelbach_iters", "seed")


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_motor_curve(args, cfg) -> int:
    omega, torque, power = torque_speed_curve(cfg.motor, args.points)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["omega_rad_s", "torque_nm", "power_w"])
    for row in zip(omega, torque, power):
        w.writerow([fmt(float(x)) for x in row])
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_solve(args, cfg) -> int:
    seed = cfg.seed_base if args.seed is None else args.seed
    cr = sample_realization(cfg.channel, seed)
    if args.dump_realization:
        Path(args.dump_realization).write_text(cr.to_csv())
    sol = solve(cfg.system, cfg.motor, cr, cfg.channel, cfg.solver.eps, keep_traces=args.trace)
    record = {
        "scheme": sol.scheme.value, "x_t_star": sol.x_t_star, "x_index": sol.x_index,
        "P_star": sol.P_star, "v_star": sol.v_star, "ee_star": sol.ee_star, "tau": sol.tau,
        "dinkelbach_iters": sol.dinkelbach_iters, "seed": seed,
    }
    if args.json:
        text = json.dumps(record) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SOLUTION_FIELDS)
        w.writerow([fmt(v) if isinstance(v, float) else v for v in record.values()])
        text = buf.getvalue()
    _emit(text, args.out)

    if args.trace:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["candidate", "iteration", "eta", "power_w", "converged"])
        for j in sorted(sol.traces):
            tr = sol.traces[j]
            for it, (eta, p) in enumerate(zip(tr.etas, tr.powers)):
                w.writerow([j, it, fmt(eta), fmt(p), int(tr.converged)])
        if args.out:
            Path(str(args.out) + ".trace.csv").write_text(buf.getvalue())
        else:
            sys.stderr.write(buf.getvalue())
    return 0


def cmd_sweep(args, cfg) -> int:
    base = cfg.sweep
    param = args.param or (base.swept_param if base else None)
    if param is None:
        raise ConfigError("sweep: --param is required (or a sweep section in the config)")
    if args.values is not None:
        try:
            values = [float(v) for v in args.values.split(",") if v.strip()]
        except ValueError as exc:
            raise ConfigError(f"--values: {exc}") from exc
    elif base is not None and base.swept_param == param:
        values = list(base.values)
    else:
        raise ConfigError("sweep: --values is required")
    realizations = args.realizations or (base.realizations if base else 200)
    seed = args.seed if args.seed is not None else (base.seed_base if base else cfg.seed_base)
    schemes = (tuple(Scheme(s) for s in args.schemes.split(",")) if args.schemes
               else (base.schemes if base else tuple(Scheme)))
    spec = SweepSpec(param, tuple(values), realizations, seed, schemes)
    result = monte_carlo_sweep(spec, replace(cfg, sweep=spec))
    _emit(result.to_csv(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ma-ee", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON config file (default: $MA_EE_CONFIG)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("motor-curve", help="emit omega, pull-out torque and power as CSV")
    p.add_argument("--points", type=int, default=1001)
    p.add_argument("--out")
    p.set_defaults(func=cmd_motor_curve)

    p = sub.add_parser("solve", help="solve one channel realization")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true", help="JSON record instead of CSV")
    p.add_argument("--trace", action="store_true", help="dump per-candidate Dinkelbach traces")
    p.add_argument("--dump-realization", metavar="PATH", help="write the sampled channel as CSV")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="Monte-Carlo sweep over one parameter")
    p.add_argument("--param", choices=SWEEP_PARAMS)
    p.add_argument("--values", help="comma-separated ascending values (SI units)")
    p.add_argument("--realizations", type=int)
    p.add_argument("--seed", type=int, help="seed of the first realization")
    p.add_argument("--schemes", help="comma-separated subset of " +
                   ",".join(s.value for s in Scheme))
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)
    for name in ("motor-curve", "solve", "sweep"):
        sub.choices[name].add_argument("--config", default=argparse.SUPPRESS,
                                       help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"ma-ee: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
