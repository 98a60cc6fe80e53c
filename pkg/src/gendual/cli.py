"""Command-line front end.

Subcommands: simulate, sweep, lmax, decompose, montecarlo, consistency.
Reports are JSON on stdout (or ``--out``); sweeps are CSV with a
``<out>.manifest.json`` sidecar.  Exit status 2 signals a usage or
validation error.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bound import l_max
from .consistency import consistency_report
from .decompose import factorize_unitary, recomposition_residual
from .interferometer import (
    BALANCED,
    InterferometerConfig,
    detection_probability,
    final_bloch,
    predictability,
    visibility_closed_form,
    visibility_scan,
)
from .landscape import duality_sum, spherical_axis
from .montecarlo import RNG_NAME, ExperimentPlan, fit_fringe, sample_counts
from .qubit import as_axis, rotation_unitary, unitarity_residual
from .sweep import ANGLE_PARAMS, PRESETS, Range, SweepSpec, sweep_grid

# options whose value may legitimately start with '-'
_VALUE_OPTS = {
    "--bloch", "--sx", "--axis", "--spherical", "--omega", "--phi",
    "--unitary", "--axis-angle", "--range", "--fix", "--seed",
}


class UsageError(ValueError):
    pass


def _floats(text: str, n: int, what: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"{what}: expected {n} comma-separated numbers, got {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"{what}: expected {n} comma-separated numbers, got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"{what}: values must be finite")
    return vals


def _angle(value: float, args) -> float:
    return math.radians(value) if args.degrees else value


def _clean(obj):
    """Make a report JSON-safe: numpy scalars to floats, non-finite to null."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    return obj


def _dumps(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=True, indent=2) + "\n"


def manifest(command: str, parameters: dict, seed: int | None = None) -> dict:
    m = {
        "command": command,
        "parameters": parameters,
        "tool_version": f"gendual {__version__}",
        "timestamp": _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat(),
    }
    if seed is not None:
        m["rng_name"] = RNG_NAME
        m["seed"] = seed
    return m


def _emit(report: dict, args) -> None:
    text = _dumps(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# shared configuration flags
# --------------------------------------------------------------------------


def _add_config_flags(p: argparse.ArgumentParser, need_state: bool = True) -> None:
    if need_state:
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--bloch", help="input Bloch vector x,y,z")
        g.add_argument("--sx", type=float, help="input state sx * e_x")
    a = p.add_mutually_exclusive_group(required=True)
    a.add_argument("--axis", help="middle rotation axis mx,my,mz (normalized)")
    a.add_argument("--spherical", help="middle axis as theta,xi")
    p.add_argument("--omega", type=float, default=None, help="beam-splitter angle (default pi/2)")


def _config(args, need_state: bool = True) -> InterferometerConfig:
    if args.axis is not None:
        axis = as_axis(_floats(args.axis, 3, "--axis"), normalize=True)
    else:
        theta, xi = (_angle(v, args) for v in _floats(args.spherical, 2, "--spherical"))
        axis = spherical_axis(theta, xi)
    omega = BALANCED if args.omega is None else _angle(args.omega, args)
    if not need_state:
        return InterferometerConfig(omega=omega, axis=axis)
    if args.bloch is not None:
        state = _floats(args.bloch, 3, "--bloch")
    else:
        state = [args.sx, 0.0, 0.0]
    return InterferometerConfig(omega=omega, axis=axis, input=state)


def _config_params(cfg: InterferometerConfig) -> dict:
    return {"omega": cfg.omega, "axis": list(cfg.axis), "input": list(cfg.input)}


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_simulate(args) -> int:
    cfg = _config(args)
    phi = _angle(args.phi, args)
    res = duality_sum(cfg)
    report = {
        "manifest": manifest("simulate", {**_config_params(cfg), "phi": phi}),
        "final_bloch": list(final_bloch(cfg, phi)),
        "detection_probability": detection_probability(cfg, phi),
        "predictability": predictability(cfg),
        "visibility_closed_form": visibility_closed_form(cfg) if cfg.balanced else None,
        "visibility_scan": visibility_scan(cfg),
        "visibility": res.visibility,
        "sum": res.sum,
    }
    _emit(report, args)
    return 0


def _sweep_spec(args) -> SweepSpec:
    if args.preset:
        if args.function or args.range or args.fix:
            raise UsageError("--preset cannot be combined with --function/--range/--fix")
        return PRESETS[args.preset]
    if not args.function:
        raise UsageError("sweep needs --function or --preset")
    ranges, fixed = {}, {}
    for item in args.range or []:
        name, _, text = item.partition("=")
        if not text:
            raise UsageError(f"malformed --range {item!r}; expected name=start:end:count")
        r = Range.parse(text)
        if args.degrees and name in ANGLE_PARAMS:
            r = r.scaled(math.pi / 180)
        if name in ranges:
            raise UsageError(f"duplicate range for {name!r}")
        ranges[name] = r
    for item in args.fix or []:
        name, _, text = item.partition("=")
        try:
            value = float(text)
        except ValueError:
            raise UsageError(f"malformed --fix {item!r}; expected name=value") from None
        fixed[name] = _angle(value, args) if name in ANGLE_PARAMS else value
    return SweepSpec(args.function, ranges, fixed)


def cmd_sweep(args) -> int:
    spec = _sweep_spec(args)
    table = sweep_grid(spec)
    params = spec.as_dict()
    if args.preset:
        params["preset"] = args.preset
    man = manifest("sweep", params)
    man["extrema"] = table.extrema()
    man["columns"] = [*table.columns, "value"]
    if args.out:
        out = Path(args.out)
        out.write_text(table.to_csv())
        man["output"] = out.name
        Path(f"{out}.manifest.json").write_text(_dumps(man))
        sys.stdout.write(_dumps(man))
    elif args.json:
        rows = [[*map(float, c), None if np.isnan(v) else float(v)] for c, v in zip(table.coords, table.values)]
        sys.stdout.write(_dumps({"manifest": man, "rows": rows}))
    else:
        sys.stdout.write(table.to_csv())
    return 0


def cmd_lmax(args) -> int:
    cfg = _config(args, need_state=False)
    bound = l_max(cfg.axis, cfg.omega, grid_points=args.grid)
    params = {"omega": cfg.omega, "axis": list(cfg.axis), "grid": args.grid}
    _emit({"manifest": manifest("lmax", params), **bound.as_dict()}, args)
    return 0


def cmd_decompose(args) -> int:
    if args.unitary is not None:
        v = _floats(args.unitary, 8, "--unitary")
        u = np.array([complex(v[i], v[i + 1]) for i in range(0, 8, 2)]).reshape(2, 2)
        params = {"unitary": v}
    else:
        mx, my, mz, phi = _floats(args.axis_angle, 4, "--axis-angle")
        axis = as_axis([mx, my, mz], normalize=True)
        phi = _angle(phi, args)
        u = rotation_unitary(axis, phi)
        params = {"axis": list(axis), "angle": phi}
    f = factorize_unitary(u)
    report = {
        "manifest": manifest("decompose", params),
        **f.as_dict(),
        "unitarity_residual": unitarity_residual(u),
        "residual": recomposition_residual(u, f),
    }
    _emit(report, args)
    return 0


def cmd_montecarlo(args) -> int:
    if args.points < 3:
        raise UsageError("--points must be >= 3")
    if args.shots < 1:
        raise UsageError("--shots must be >= 1")
    cfg = _config(args)
    plan = ExperimentPlan(cfg, args.points, args.shots, args.seed)
    counts = sample_counts(plan)
    fit = fit_fringe(counts)
    analytic = duality_sum(cfg).visibility
    err = fit.std_error
    discrepancy = (fit.visibility_hat - analytic) / err if err > 0 and math.isfinite(err) else None
    params = {**_config_params(cfg), "points": args.points, "shots": args.shots}
    man = manifest("montecarlo", params, seed=args.seed)
    report = {
        "manifest": man,
        "fit": fit.as_dict(),
        "visibility_analytic": analytic,
        "discrepancy_in_std_errors": discrepancy,
    }
    if args.counts:
        path = Path(args.counts)
        lines = ["phi,successes,shots,frequency"]
        lines += [f"{phi:.17g},{k},{n},{k / n:.17g}" for phi, k, n in counts]
        path.write_text("\n".join(lines) + "\n")
        Path(f"{path}.manifest.json").write_text(_dumps(man))
    _emit(report, args)
    return 0


def cmd_consistency(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    report = consistency_report(args.samples, args.seed)
    _emit({"manifest": manifest("consistency", {"samples": args.samples}, seed=args.seed), **report}, args)
    return 0


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result to this file")
    common.add_argument("--seed", type=int, default=0, help="PRNG seed (default 0)")
    common.add_argument("--degrees", action="store_true", help="angles are given in degrees")
    common.add_argument("--json", action="store_true", help="JSON output where CSV is the default")

    parser = argparse.ArgumentParser(prog="gendual", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"gendual {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="one configuration")
    _add_config_flags(p)
    p.add_argument("--phi", type=float, default=0.0, help="phase of the middle unitary")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", parents=[common], help="figure-data grids")
    p.add_argument("--function", help="landscape function to evaluate")
    p.add_argument("--range", action="append", help="name=start:end:count[:closed]")
    p.add_argument("--fix", action="append", help="name=value")
    p.add_argument("--preset", choices=sorted(PRESETS), help="predefined figure sweep")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("lmax", parents=[common], help="maximum duality sum over input states")
    _add_config_flags(p, need_state=False)
    p.add_argument("--grid", type=int, default=10_000, help="sphere lattice size")
    p.set_defaults(func=cmd_lmax)

    p = sub.add_parser("decompose", parents=[common], help="factorize a 2x2 unitary")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--unitary", help="re,im,re,im,re,im,re,im (row-major)")
    g.add_argument("--axis-angle", help="mx,my,mz,phi")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("montecarlo", parents=[common], help="simulated fringe measurement")
    _add_config_flags(p)
    p.add_argument("--points", type=int, default=48)
    p.add_argument("--shots", type=int, default=10_000)
    p.add_argument("--counts", help="also write per-phase counts as CSV")
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("consistency", parents=[common], help="closed forms vs matrix oracle")
    p.add_argument("--samples", type=int, default=10_000)
    p.set_defaults(func=cmd_consistency)
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--axis -1,0,0`` into ``--axis=-1,0,0`` so argparse accepts it."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (
            tok in _VALUE_OPTS
            and nxt is not None
            and len(nxt) > 1
            and nxt[0] == "-"
            and (nxt[1].isdigit() or nxt[1] == ".")
        ):
            out.append(f"{tok}={nxt}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(argv))
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"gendual {args.command}: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
