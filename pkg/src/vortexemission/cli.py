"""Command line front end.

Exit codes: 0 success, 2 bad arguments or unreadable scenario text,
3 inconsistent scenario values, 4 verification failure, 5 file I/O trouble.
Output lands in --out, falling back to $VORTEXEMISSION_OUT, then the
current directory.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, dynamics, emission, fieldmap
from .errors import (ConfigError, InvalidScenario, NotConverged, ParseError,
                     SpectralPole, ValidationError)
from .exporters import (safe_basename, table_to_csv, write_map, write_profile,
                        atomic_write)
from .scenarios import (FAMILIES, Scenario, apply_overrides, figure_panels,
                        get_builtin, parse_scenario, with_label)
from .verify import SUITES, run_suites

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_VERIFY = 4
EXIT_IO = 5


def _add_scenario_args(sub, required: bool = True):
    source = sub.add_mutually_exclusive_group(required=required)
    source.add_argument("--builtin", metavar="LABEL",
                        help="label from the built-in catalog (see fig2a-l1 ...)")
    source.add_argument("--config", metavar="PATH",
                        help="scenario file of key = value lines")
    sub.add_argument("--set", dest="overrides", action="append", default=[],
                     metavar="KEY=VALUE", help="override one scenario key; repeatable")
    sub.add_argument("--out", default=None, metavar="DIR",
                     help="output directory (default $VORTEXEMISSION_OUT or '.')")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vortexemission",
        description="Spatially resolved emission spectra of a vortex-driven "
                    "V-type emitter.")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    m = subs.add_parser("map", help="render one transverse spectrum map")
    _add_scenario_args(m)
    m.add_argument("--workers", type=int, default=1,
                   help="row-chunk threads for the map evaluation")

    sp = subs.add_parser("spectrum", help="spectrum vs detuning at one point")
    _add_scenario_args(sp)
    sp.add_argument("--r", type=float, default=None,
                    help="radius (default: brightest vortex ring)")
    sp.add_argument("--phi", type=float, default=0.0, help="azimuth in radians")
    sp.add_argument("--dk-min", type=float, default=-10.0)
    sp.add_argument("--dk-max", type=float, default=10.0)
    sp.add_argument("--dk-points", type=int, default=2001)

    pr = subs.add_parser("profile", help="spectrum around one ring")
    _add_scenario_args(pr)
    pr.add_argument("--r", type=float, default=None,
                    help="ring radius (default: brightest vortex ring)")
    pr.add_argument("--n-phi", type=int, default=360)

    rp = subs.add_parser("reproduce", help="render the four panels of a figure family")
    rp.add_argument("family", choices=list(FAMILIES),
                    help="figure family id, e.g. fig2a")
    rp.add_argument("--out", default=None, metavar="DIR")
    rp.add_argument("--workers", type=int, default=1)

    sw = subs.add_parser("sweep", help="one map per value of a swept key")
    _add_scenario_args(sw)
    sw.add_argument("--param", required=True, metavar="KEY",
                    help="scenario key to sweep")
    sw.add_argument("--values", required=True,
                    help="comma-separated values for the swept key")

    vf = subs.add_parser("verify", help="run the self-check suites")
    vf.add_argument("--suite", action="append", default=[], choices=list(SUITES),
                    help="suite name; repeatable (default: all)")
    vf.add_argument("--trials", type=int, default=None,
                    help="draw count for the randomized suites")
    vf.add_argument("--seed", type=int, default=0, help="random seed (printed)")
    return parser


def _out_dir(args) -> Path:
    return Path(args.out or os.environ.get("VORTEXEMISSION_OUT") or ".")


def _load_scenario(args) -> Scenario:
    if args.builtin:
        scenario = get_builtin(args.builtin)
    else:
        try:
            text = Path(args.config).read_text()
        except OSError as err:
            raise _Exit(EXIT_IO, f"cannot read {args.config}: {err}")
        scenario = parse_scenario(text)
    if args.overrides:
        scenario = apply_overrides(scenario, args.overrides)
    return scenario


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _default_radius(scenario: Scenario, value):
    if value is not None:
        return float(value)
    return scenario.fields.ring_radius


def _print_map_summary(m, paths):
    finite = m.finite_values()
    if finite.size:
        print(f"{m.label}: min {float(finite.min()):.6g}, "
              f"max {float(finite.max()):.6g}, masked {m.masked_count}")
    else:
        print(f"{m.label}: fully masked ({m.masked_count} cells)")
    for path in paths:
        print(f"  wrote {path}")


def _cmd_map(args) -> int:
    s = _load_scenario(args)
    m = fieldmap.evaluate_map(s.atom, s.fields, s.init, delta_k=s.delta_k,
                              grid=s.grid, workers=args.workers, label=s.label)
    paths = write_map(m, _out_dir(args))
    _print_map_summary(m, paths)
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    s = _load_scenario(args)
    if args.dk_points < 2:
        raise ValidationError(f"--dk-points must be >= 2, got {args.dk_points}")
    if not args.dk_max > args.dk_min:
        raise ValidationError("--dk-max must exceed --dk-min")
    r = _default_radius(s, args.r)
    grid = np.linspace(args.dk_min, args.dk_max, args.dk_points)
    vals, mask = emission.spectrum_values(s.atom, s.fields, s.init, r,
                                          args.phi, grid)
    out = _out_dir(args)
    base = f"{safe_basename(s.label)}_spectrum"
    meta = {"label": s.label, "r": r, "phi": args.phi,
            "masked": int(mask.sum())}
    path = out / f"{base}.csv"
    out.mkdir(parents=True, exist_ok=True)
    atomic_write(path, table_to_csv(meta, ["delta_k", "value"], [grid, vals]))
    peak = np.nanmax(vals) if np.isfinite(vals).any() else float("nan")
    print(f"{s.label}: {args.dk_points} detunings at r={r:.6g}, "
          f"phi={args.phi:.6g}, peak {peak:.6g}")
    print(f"  wrote {path}")
    return EXIT_OK


def _cmd_profile(args) -> int:
    s = _load_scenario(args)
    r = _default_radius(s, args.r)
    prof = fieldmap.azimuthal_profile(s.atom, s.fields, s.init, r=r,
                                      delta_k=s.delta_k, n_phi=args.n_phi)
    peaks = fieldmap.count_peaks(prof)
    out = _out_dir(args)
    path = write_profile(prof, out, f"{safe_basename(s.label)}_profile")
    print(f"{s.label}: ring r={r:.6g}, {args.n_phi} samples, {peaks} peak(s)")
    print(f"  wrote {path}")
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    out = _out_dir(args)
    for label in figure_panels(args.family):
        s = get_builtin(label)
        m = fieldmap.evaluate_map(s.atom, s.fields, s.init, delta_k=s.delta_k,
                                  grid=s.grid, workers=args.workers, label=s.label)
        paths = write_map(m, out)
        _print_map_summary(m, paths)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    s = _load_scenario(args)
    tokens = [tok.strip() for tok in args.values.split(",") if tok.strip()]
    if not tokens:
        raise ValidationError("--values produced an empty list")
    out = _out_dir(args)
    rows_value, rows_max, rows_peaks, rows_masked = [], [], [], []
    for tok in tokens:
        variant = apply_overrides(s, [f"{args.param}={tok}"])
        label = f"{s.label}-{args.param}-{tok}"
        variant = with_label(variant, label)
        m = fieldmap.evaluate_map(variant.atom, variant.fields, variant.init,
                                  delta_k=variant.delta_k, grid=variant.grid,
                                  label=label)
        paths = write_map(m, out)
        finite = m.finite_values()
        top = float(finite.max()) if finite.size else float("nan")
        try:
            prof = fieldmap.azimuthal_profile(
                variant.atom, variant.fields, variant.init,
                r=variant.fields.ring_radius, delta_k=variant.delta_k)
            peaks = fieldmap.count_peaks(prof)
        except SpectralPole:
            peaks = -1   # ring sits on the shared determinant zero
        try:
            value_num = float(tok)
        except ValueError:
            value_num = float(len(rows_value))
        rows_value.append(value_num)
        rows_max.append(top)
        rows_peaks.append(peaks)
        rows_masked.append(m.masked_count)
        _print_map_summary(m, paths)
    index = out / f"{safe_basename(s.label)}_sweep.csv"
    meta = {"label": s.label, "param": args.param, "count": len(tokens)}
    atomic_write(index, table_to_csv(meta, [args.param, "max", "peaks", "masked"],
                                     [rows_value, rows_max, rows_peaks,
                                      rows_masked]))
    print(f"  wrote {index}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    print(f"seed {args.seed}")
    results = run_suites(seed=args.seed, trials=args.trials,
                         names=args.suite or None)
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "ok" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  {status:<4} {r.seconds:7.2f}s  {r.detail}")
        failed += 0 if r.passed else 1
    if failed:
        print(f"{failed} of {len(results)} suites failed")
        return EXIT_VERIFY
    print(f"all {len(results)} suites passed")
    return EXIT_OK


_COMMANDS = {
    "map": _cmd_map,
    "spectrum": _cmd_spectrum,
    "profile": _cmd_profile,
    "reproduce": _cmd_reproduce,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        # argparse exits 2 on usage errors and 0 on --help/--version
        return int(err.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except _Exit as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, ConfigError, InvalidScenario) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except (SpectralPole, NotConverged) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
