"""Command-line interface.

Subcommands::

    fracwave dispersion   sweep a dispersion relation, report attenuation
    fracwave simulate     run a time-domain solver, dump snapshots
    fracwave check-bound  evaluate the order bound for (lambda, beta)
    fracwave media        list / convert / invert the attenuation table
    fracwave verify       run the end-to-end verification criteria

Delimited output uses 17 significant digits so reruns are byte-stable;
wall-clock timestamps appear only in the simulate manifest.  Report
paths can additionally render figures next to the delimited files.

Exit codes: 0 success, 1 bound violated / criteria failed, 2 bad flags
or parse errors, 3 convergence or instability failures.
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .analysis import compare_dispersion, measure_spatial_attenuation
from .core import FdweParams, Field, Grid1D, Medium, check_order_bound
from .dispersion import dispersion_sweep
from .errors import (
    ConvergenceError,
    FracwaveError,
    InstabilityError,
    MediaFileError,
    TransientError,
)
from .media import (
    builtin_media,
    default_media_file,
    from_si,
    load_media,
    lookup_medium,
    medium_from_power_law,
    to_si,
)
from .solvers import (
    PointSource,
    SolverConfig,
    solve_fdwe,
    solve_fractional_burgers,
    solve_lossy_wave,
)
from .verify import RUNTIME_BUDGETS, run_all

USAGE_ERROR = 2
NUMERIC_ERROR = 3


def _fmt(value) -> str:
    if value is None:
        return ""
    return f"{float(value) + 0.0:.17g}"  # +0.0 normalizes -0.0


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".fracwave-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out:
        _atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _extra_media(path: str | None):
    path = path or default_media_file()
    if path is None:
        return None, None
    return dict(load_media(path)), path


def _medium_from_args(args) -> Medium:
    if args.medium:
        extra, _ = _extra_media(args.media_file)
        clinical = lookup_medium(args.medium, extra)
        alpha0_si, y = to_si(clinical)
        return medium_from_power_law(alpha0_si, y, args.c0, args.eta)
    return Medium(name="cli", c0=args.c0, gamma=args.gamma, eta=args.eta, s=args.s)


def cmd_dispersion(args) -> int:
    medium = _medium_from_args(args)
    if args.omega_min <= 0.0 or args.omega_max <= args.omega_min:
        raise argparse.ArgumentTypeError("need 0 < omega-min < omega-max")
    if args.points < 3:
        raise argparse.ArgumentTypeError("need at least 3 sweep points")
    omegas = np.geomspace(args.omega_min, args.omega_max, args.points)
    table = compare_dispersion(medium, omegas)
    points = dispersion_sweep(medium, omegas)

    lines = ["omega,k_re,k_im,alpha_root,alpha_asymptotic,rel_gap"]
    for row, pt in zip(table.rows, points):
        lines.append(",".join([
            _fmt(row.omega), _fmt(pt.k.real), _fmt(pt.k.imag),
            _fmt(row.alpha_root), _fmt(row.alpha_asymptotic), _fmt(row.rel_gap),
        ]))
    if table.fitted_y is None:
        lines.append("# y_fit = undefined")
        lines.append(f"# y_analytic = {_fmt(table.analytic_y)}")
        lines.append("# y_diff = undefined")
    else:
        lines.append(f"# y_fit = {_fmt(table.fitted_y)}")
        lines.append(f"# y_analytic = {_fmt(table.analytic_y)}")
        lines.append(f"# y_diff = {_fmt(table.fitted_y - table.analytic_y)}")
    _emit("\n".join(lines) + "\n", args.out)

    if args.plot:
        from .plotting import render_dispersion_figure

        render_dispersion_figure(table, args.plot, title=medium.name)
    return 0


def _initial_condition(grid: Grid1D, mode: int, amplitude: float) -> Field:
    return Field(grid, amplitude * np.sin(2.0 * math.pi * mode * grid.x / grid.length))


def _snapshot_csv(traj) -> str:
    lines = ["t,x,value"]
    x = traj.grid.x
    for t, f in traj.snapshots:
        ts = _fmt(t)
        lines.extend(f"{ts},{_fmt(xi)},{_fmt(v)}" for xi, v in zip(x, f.values))
    return "\n".join(lines) + "\n"


def cmd_simulate(args) -> int:
    grid = Grid1D(args.n, args.length)
    cfg = SolverConfig(dt=args.dt, steps=args.steps, snapshot_every=args.snapshot_every)
    source = None
    measurement = None

    if args.equation in ("fdwe", "burgers"):
        params = FdweParams(lam=args.lam, beta=args.beta, kappa=args.kappa)
        u0 = _initial_condition(grid, args.mode, args.amplitude)
        if args.equation == "burgers":
            traj = solve_fractional_burgers(u0, params, cfg)
        else:
            v0 = Field.zeros(grid) if params.beta > 1.0 else None
            traj = solve_fdwe(u0, v0, params, cfg)
    else:
        if args.equation == "telegrapher":
            medium = Medium("telegrapher", args.c0, args.gamma, 1.0, 0.0)
        elif args.equation == "thermoviscous":
            medium = Medium("thermoviscous", args.c0, args.gamma, 1.0, 2.0)
        else:
            medium = _medium_from_args(args)
        if args.source_omega is not None:
            source = PointSource(position=args.source_position, omega=args.source_omega)
            p0 = Field.zeros(grid)
            v0 = Field.zeros(grid)
        else:
            p0 = _initial_condition(grid, args.mode, args.amplitude)
            v0 = Field.zeros(grid)
        traj = solve_lossy_wave(p0, v0, medium, cfg, source=source)
        if source is not None:
            w_lo = args.window_min if args.window_min is not None else 0.1 * grid.length
            w_hi = args.window_max if args.window_max is not None else 0.4 * grid.length
            measurement = measure_spatial_attenuation(traj, source.omega, (w_lo, w_hi))

    prefix = args.out_prefix
    files = {"snapshots": f"{prefix}_snapshots.csv"}
    _atomic_write(files["snapshots"], _snapshot_csv(traj))
    if measurement is not None:
        files["measurement"] = f"{prefix}_measurement.csv"
        _atomic_write(files["measurement"], "\n".join([
            "omega,alpha_measured,x_min,x_max,r_squared",
            ",".join([
                _fmt(measurement.omega), _fmt(measurement.alpha_measured),
                _fmt(measurement.fit_window[0]), _fmt(measurement.fit_window[1]),
                _fmt(measurement.r_squared),
            ]),
        ]) + "\n")
    if args.plot:
        from .plotting import render_simulation_figure

        files["figure"] = f"{prefix}_fields.png"
        render_simulation_figure(traj, files["figure"], measurement=measurement,
                                 title=args.equation)

    manifest = {
        "tool": "fracwave",
        "version": __version__,
        "command": "simulate",
        "parameters": {k: v for k, v in sorted(vars(args).items()) if k != "func"},
        "files": files,
        "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    files["manifest"] = f"{prefix}_manifest.json"
    _atomic_write(files["manifest"], json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    sys.stdout.write("\n".join(f"{kind}: {path}" for kind, path in sorted(files.items())) + "\n")
    return 0


def cmd_check_bound(args) -> int:
    verdict = check_order_bound(args.lam, args.beta)
    sys.stdout.write(json.dumps({
        "lambda": verdict.lam,
        "beta": verdict.beta,
        "satisfied": verdict.satisfied,
        "regime": verdict.regime,
        "implied_y": verdict.implied_y,
    }, indent=2, sort_keys=True) + "\n")
    return 0 if verdict.satisfied else 1


def _media_table(media_file: str | None):
    extra, _ = _extra_media(media_file)
    table = builtin_media()
    if extra:
        merged = dict(table)
        merged.update(extra)
        table = sorted(merged.items())
    return table


def cmd_media(args) -> int:
    if args.media_cmd == "list":
        lines = ["name,alpha0_db_per_cm_per_MHz_y,y,alpha0_si_np_per_m,prefactor_known"]
        for name, clinical in _media_table(args.media_file):
            si = _fmt(to_si(clinical)[0]) if clinical.prefactor_known else ""
            lines.append(",".join([
                name, _fmt(clinical.alpha0_db) if clinical.prefactor_known else "",
                _fmt(clinical.y), si, str(clinical.prefactor_known).lower(),
            ]))
        _emit("\n".join(lines) + "\n", args.out)
        return 0
    if args.media_cmd == "convert":
        if args.name:
            extra, _ = _extra_media(args.media_file)
            clinical = lookup_medium(args.name, extra)
        else:
            if args.alpha0_db is None or args.y is None:
                raise argparse.ArgumentTypeError("convert needs --name or both --alpha0-db and --y")
            from .media import ClinicalAttenuation

            clinical = ClinicalAttenuation(args.alpha0_db, args.y)
        alpha0_si, y = to_si(clinical)
        sys.stdout.write(f"alpha0_si = {_fmt(alpha0_si)} Np/m/(rad/s)^y\ny = {_fmt(y)}\n")
        return 0
    if args.media_cmd == "invert":
        clinical = from_si(args.alpha0_si, args.y)
        sys.stdout.write(f"alpha0_db = {_fmt(clinical.alpha0_db)} dB/cm/MHz^y\ny = {_fmt(clinical.y)}\n")
        return 0
    raise argparse.ArgumentTypeError("unknown media subcommand")


def cmd_verify(args) -> int:
    if args.media_file:
        load_media(args.media_file)  # parse errors -> exit 2
    results = run_all(quick=args.quick)
    all_pass = True
    for r in results:
        budget = RUNTIME_BUDGETS.get(r.index)
        over = (not args.quick) and budget is not None and r.seconds > budget
        status = "PASS" if r.passed and not over else "FAIL"
        all_pass &= status == "PASS"
        line = f"[{status}] criterion {r.index}: {r.name} ({r.seconds:.2f}s) -- {r.details}"
        if over:
            line += f" [exceeded {budget:g}s budget]"
        sys.stdout.write(line + "\n")
    sys.stdout.write(("all criteria passed\n" if all_pass else "some criteria FAILED\n"))
    return 0 if all_pass else 1


def _add_medium_flags(parser, need_defaults=True):
    parser.add_argument("--c0", type=float, default=1.0, help="sound speed (default 1)")
    parser.add_argument("--gamma", type=float, default=0.0, help="loss strength (default 0)")
    parser.add_argument("--eta", type=float, default=1.0, help="temporal loss order (default 1)")
    parser.add_argument("--s", type=float, default=2.0, help="spatial loss order (default 2)")
    parser.add_argument("--medium", help="named medium from the attenuation table")
    parser.add_argument("--media-file", help="CSV file of extra media (or FRACWAVE_MEDIA_FILE)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracwave",
        description="Fractional diffusion-wave / lossy acoustic wave toolkit",
    )
    parser.add_argument("--version", action="version", version=f"fracwave {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dispersion", help="sweep a dispersion relation")
    _add_medium_flags(p)
    p.add_argument("--omega-min", type=float, default=1.0)
    p.add_argument("--omega-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=16)
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.add_argument("--plot", help="render a log-log attenuation figure to this path")
    p.set_defaults(func=cmd_dispersion)

    p = sub.add_parser("simulate", help="run a time-domain solver")
    p.add_argument("--equation", required=True,
                   choices=["fdwe", "lossy", "telegrapher", "thermoviscous", "burgers"])
    p.add_argument("--n", type=int, default=256, help="grid points (power of two)")
    p.add_argument("--length", type=float, default=2.0 * math.pi)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--snapshot-every", type=int, default=1)
    p.add_argument("--lambda", dest="lam", type=float, default=2.0, help="spatial order")
    p.add_argument("--beta", type=float, default=1.0, help="temporal order")
    p.add_argument("--kappa", type=float, default=1.0, help="diffusivity")
    _add_medium_flags(p)
    p.add_argument("--mode", type=int, default=1, help="sine mode of the initial condition")
    p.add_argument("--amplitude", type=float, default=1.0)
    p.add_argument("--source-omega", type=float, help="drive with a monochromatic point source")
    p.add_argument("--source-position", type=float, default=0.0)
    p.add_argument("--window-min", type=float, help="attenuation fit window start")
    p.add_argument("--window-max", type=float, help="attenuation fit window end")
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--plot", action="store_true", help="render a snapshot figure")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("check-bound", help="evaluate the order bound")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.set_defaults(func=cmd_check_bound)

    p = sub.add_parser("media", help="attenuation table utilities")
    msub = p.add_subparsers(dest="media_cmd", required=True)
    m = msub.add_parser("list", help="print the media table as CSV")
    m.add_argument("--media-file")
    m.add_argument("--out")
    m = msub.add_parser("convert", help="clinical -> SI units")
    m.add_argument("--name")
    m.add_argument("--alpha0-db", type=float)
    m.add_argument("--y", type=float)
    m.add_argument("--media-file")
    m = msub.add_parser("invert", help="SI -> clinical units")
    m.add_argument("--alpha0-si", type=float, required=True)
    m.add_argument("--y", type=float, required=True)
    p.set_defaults(func=cmd_media)

    p = sub.add_parser("verify", help="run the verification criteria")
    p.add_argument("--quick", action="store_true",
                   help="smaller runs with documented looser tolerances")
    p.add_argument("--media-file", help="also validate this media CSV")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as err:
        print(f"fracwave: error: {err}", file=sys.stderr)
        return USAGE_ERROR
    except (ConvergenceError, InstabilityError, TransientError) as err:
        print(f"fracwave: numerical failure: {err}", file=sys.stderr)
        return NUMERIC_ERROR
    except MediaFileError as err:
        print(f"fracwave: media file error: {err}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as err:
        print(f"fracwave: i/o error: {err}", file=sys.stderr)
        return USAGE_ERROR
    except FracwaveError as err:
        print(f"fracwave: error: {err}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
