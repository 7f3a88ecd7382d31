"""Command-line front end.

    casimir-md force     --config run.cfg [--temperature 300] [--si]
    casimir-md scan      --config fig5.cfg --output fig5.csv --si
    casimir-md sweep     --config fig2.cfg --output fig2.csv
    casimir-md crossover --config fig5.cfg
    casimir-md extremum  --config fig5.cfg --si
    casimir-md convert   --config fig5.cfg --distance 640

Exit status: 0 success, 1 invalid input, 2 convergence failure. Forces are
positive when attractive.
"""

from __future__ import annotations

import argparse
import csv
import sys
from contextlib import contextmanager
from typing import Iterator, Sequence, TextIO

from . import units
from .analysis import (crossover_distance, distance_scan, extremal_repulsion, sweep_2d,
                       worker_count)
from .config import ConfigError, RunConfig, load_config, parse_temperature
from .force import ConvergenceError, ForceResult, casimir_force

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_CONVERGENCE = 2

SCAN_HEADER = ["d_reduced", "f_over_f0", "f_over_fid", "est_error", "evaluations"]
SI_HEADER = ["d_um", "f_si_N_per_m2"]
SWEEP_HEADER = ["axis1", "axis2", "f_over_fid", "f_over_f0", "status"]

COMMANDS = ("force", "scan", "sweep", "crossover", "extremum", "convert")


def fmt(value) -> str:
    """Shortest round-trip text for floats; keeps CSV output byte-stable."""
    if isinstance(value, float):
        return repr(value)
    return str(value)


@contextmanager
def _sink(path: str | None, default: TextIO) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield default
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _writer(fh: TextIO):
    return csv.writer(fh, lineterminator="\n")


def _scan_row(res: ForceResult, scale: units.ReferenceScale | None) -> list[str]:
    row = [res.d, res.f_over_f0, res.f_over_fid, res.est_error, res.evaluations]
    if scale is not None:
        row += [units.distance_si(scale, res.d), units.pressure_si(scale, res.f_over_f0)]
    return [fmt(v) for v in row]


def _temperature_label(args, cfg: RunConfig) -> str:
    value = parse_temperature(args.temperature) if args.temperature is not None else cfg.temperature
    return "zero" if value in ("zero", 0, 0.0) else f"{float(value):g} K"


def _cmd_force(args, cfg: RunConfig, out: TextIO) -> int:
    cavity = cfg.cavity(args.distance)
    t = cfg.reduced_temperature(args.temperature)
    res = casimir_force(cavity, t, cfg.settings(args.tol))
    scale = cfg.reference_scale
    lines = [
        f"d_reduced    {fmt(res.d)}",
        f"temperature  {_temperature_label(args, cfg)}",
        f"method       {res.method}",
        f"f/f0         {res.f_over_f0:.6e}",
        f"f/f_id       {res.f_over_fid:.6e}",
        f"est_error    {res.est_error:.2e} f0",
        f"sign         {res.interpretation}",
    ]
    if res.matsubara_terms:
        lines.append(f"matsubara    {res.matsubara_terms} terms")
    if args.si:
        lines += [
            f"d            {units.distance_si(scale, res.d):.6g} um",
            f"f            {units.pressure_si(scale, res.f_over_f0):.6e} N/m^2",
        ]
    print("\n".join(lines), file=out)
    if args.output:
        with _sink(args.output, out) as fh:
            w = _writer(fh)
            w.writerow(SCAN_HEADER + (SI_HEADER if args.si else []))
            w.writerow(_scan_row(res, scale if args.si else None))
    return EXIT_OK


def _cmd_scan(args, cfg: RunConfig, out: TextIO) -> int:
    if cfg.scan is None:
        raise ConfigError("scan: block missing")
    cavity = cfg.cavity(cfg.scan.grid()[0])
    t = cfg.reduced_temperature(args.temperature)
    result = distance_scan(cavity, cfg.scan.grid(), t, cfg.settings(args.tol), workers=None)
    scale = cfg.reference_scale if args.si else None
    with _sink(args.output, out) as fh:
        w = _writer(fh)
        w.writerow(SCAN_HEADER + (SI_HEADER if args.si else []))
        for p in result.points:
            if p.ok:
                w.writerow(_scan_row(p.result, scale))
            else:
                # error marker row: values blanked, evaluations column carries "error"
                w.writerow([fmt(p.coords[0]), "nan", "nan", "nan", "error"]
                           + (["nan", "nan"] if scale else []))
                print(f"warning: d={p.coords[0]!r}: {p.status}", file=sys.stderr)
    return EXIT_CONVERGENCE if result.failures else EXIT_OK


def _cmd_sweep(args, cfg: RunConfig, out: TextIO) -> int:
    t = cfg.reduced_temperature(args.temperature)
    spec = cfg.sweep_spec(t, cfg.settings(args.tol), args.distance)
    result = sweep_2d(spec, workers=None)
    with _sink(args.output, out) as fh:
        w = _writer(fh)
        w.writerow(SWEEP_HEADER)
        for p in result.points:
            fid = p.result.f_over_fid if p.result is not None else float("nan")
            f0 = p.result.f_over_f0 if p.result is not None else float("nan")
            w.writerow([fmt(p.coords[0]), fmt(p.coords[1]), fmt(fid), fmt(f0), p.status])
    return EXIT_CONVERGENCE if result.failures else EXIT_OK


def _cmd_crossover(args, cfg: RunConfig, out: TextIO) -> int:
    if cfg.crossover is None:
        raise ConfigError("crossover: block missing")
    block = cfg.crossover
    cavity = cfg.cavity(block.bracket[0])
    res = crossover_distance(cavity, block.bracket, block.tol_d,
                             cfg.reduced_temperature(args.temperature), cfg.settings(args.tol),
                             workers=None)
    header = ["d_cross", "direction", "evaluations"] + (["d_um"] if args.si else [])
    if res.distance is None:
        row = ["none", "", fmt(res.evaluations)] + (["none"] if args.si else [])
    else:
        row = [fmt(res.distance), res.direction, fmt(res.evaluations)]
        if args.si:
            row.append(fmt(units.distance_si(cfg.reference_scale, res.distance)))
    with _sink(args.output, out) as fh:
        w = _writer(fh)
        w.writerow(header)
        w.writerow(row)
    return EXIT_OK


def _cmd_extremum(args, cfg: RunConfig, out: TextIO) -> int:
    if cfg.extremum is None:
        raise ConfigError("extremum: block missing")
    block = cfg.extremum
    cavity = cfg.cavity(block.bracket[0])
    ext = extremal_repulsion(cavity, block.bracket, block.tol_d,
                             cfg.reduced_temperature(args.temperature), cfg.settings(args.tol),
                             workers=None)
    header = ["d_star", "f_over_f0", "f_over_fid", "evaluations"] + (SI_HEADER if args.si else [])
    if ext is None:
        row = ["none"] * len(header)
    else:
        row = [fmt(ext.d_star), fmt(ext.result.f_over_f0), fmt(ext.result.f_over_fid),
               fmt(ext.evaluations)]
        if args.si:
            scale = cfg.reference_scale
            row += [fmt(units.distance_si(scale, ext.d_star)),
                    fmt(units.pressure_si(scale, ext.result.f_over_f0))]
    with _sink(args.output, out) as fh:
        w = _writer(fh)
        w.writerow(header)
        w.writerow(row)
    return EXIT_OK


def _cmd_convert(args, cfg: RunConfig, out: TextIO) -> int:
    scale = cfg.reference_scale
    d = args.distance if args.distance is not None else (cfg.convert.d if cfg.convert else cfg.gap_width())
    with _sink(args.output, out) as fh:
        w = _writer(fh)
        w.writerow(["plasma_energy_ev", "length_unit_nm", "f0_N_per_m2", "d_reduced", "d_um"])
        w.writerow([fmt(scale.plasma_energy), fmt(units.length_unit_nm(scale)),
                    fmt(units.force_unit_si(scale)), fmt(float(d)),
                    fmt(units.distance_si(scale, d))])
    return EXIT_OK


HANDLERS = {
    "force": _cmd_force,
    "scan": _cmd_scan,
    "sweep": _cmd_sweep,
    "crossover": _cmd_crossover,
    "extremum": _cmd_extremum,
    "convert": _cmd_convert,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, metavar="PATH", help="YAML run configuration")
    common.add_argument("--output", metavar="PATH", help="CSV destination (default: stdout)")
    common.add_argument("--temperature", metavar="K|zero",
                        help="temperature in kelvin or 'zero' (overrides the config)")
    common.add_argument("--tol", type=float, metavar="REL", help="relative quadrature tolerance")
    common.add_argument("--si", action="store_true", help="add SI columns for the config's scale")
    common.add_argument("--distance", type=float, metavar="D",
                        help="gap width in units of 1/k_P (overrides the config)")

    parser = argparse.ArgumentParser(
        prog="casimir-md",
        description="Casimir force between dispersive magnetodielectric half-spaces and stacks.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=f"run the {name} command")
    return parser


def run(command: str, config: RunConfig, args: argparse.Namespace, out: TextIO = sys.stdout) -> int:
    return HANDLERS[command](args, config, out)


def main(argv: Sequence[str] | None = None, out: TextIO | None = None,
         err: TextIO | None = None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.temperature is not None:
            parse_temperature(args.temperature)
        worker_count()
        cfg = load_config(args.config)
        return run(args.command, cfg, args, out)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=err)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
