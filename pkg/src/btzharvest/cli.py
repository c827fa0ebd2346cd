"""Command line front end: single points, config sweeps, figure presets."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .sweep import (SweepSpec, run_sweep, write_csv, write_manifest,
                    preset_specs, evaluate_point, COLUMNS)
from .plotting import emit_plot_script


def _add_solver_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--tol-rel", type=float, default=None,
                    help="relative tolerance of the contour quadrature")
    sp.add_argument("--tol-abs", type=float, default=None,
                    help="absolute tolerance of the contour quadrature")
    sp.add_argument("--n-max", type=int, default=None,
                    help="image-sum truncation cap")
    sp.add_argument("--eta", type=float, default=None,
                    help="contour depth in (-pi, 0)")
    sp.add_argument("--jobs", type=int, default=None,
                    help="worker processes for sweeps")
    sp.add_argument("--no-cache", action="store_true",
                    help="disable the point cache")


def _solver_overrides(args) -> dict:
    out = {}
    if args.tol_rel is not None:
        out["rel_tol"] = args.tol_rel
    if args.tol_abs is not None:
        out["abs_tol"] = args.tol_abs
    if args.n_max is not None:
        out["n_max"] = args.n_max
    if args.eta is not None:
        out["eta"] = args.eta
    if args.jobs is not None:
        out["jobs"] = args.jobs
    if args.no_cache:
        out["cache"] = False
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="harvest",
        description="Detector-pair correlations outside a BTZ black hole.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("point", help="evaluate a single parameter point")
    sp.add_argument("--l", type=float, required=True, help="AdS length / sigma")
    sp.add_argument("--gap", type=float, required=True, help="detector gap Omega*sigma")
    sp.add_argument("--dAB", type=float, required=True,
                    help="proper separation of the detectors / sigma")
    sp.add_argument("--zeta", type=int, default=1, choices=(-1, 0, 1),
                    help="boundary condition at AdS infinity")
    sp.add_argument("--mass", type=float, help="black hole mass (with --dA)")
    sp.add_argument("--dA", type=float, help="horizon distance of detector A / sigma")
    sp.add_argument("--tA", type=float, help="local KMS temperature (with --gammaA)")
    sp.add_argument("--gammaA", type=float, help="redshift factor of detector A")
    sp.add_argument("--edr", action="store_true",
                    help="also compute the de-excitation ratio temperature")
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    _add_solver_flags(sp)

    sw = sub.add_parser("sweep", help="run a sweep described by a JSON config")
    sw.add_argument("--config", required=True, help="sweep spec file")
    sw.add_argument("--out", default=None, help="CSV output path")
    _add_solver_flags(sw)

    pr = sub.add_parser("preset", help="run a figure-reproduction sweep")
    pr.add_argument("name", choices=("fig1", "fig2", "fig3"))
    pr.add_argument("--out", default=".", help="output directory")
    _add_solver_flags(pr)
    return p


def _run_point(args) -> int:
    fixed = {"ads_length": args.l, "omega": args.gap,
             "d_ab": args.dAB, "zeta": args.zeta}
    have_mass = args.mass is not None or args.dA is not None
    have_thermal = args.tA is not None or args.gammaA is not None
    if have_mass == have_thermal:
        print("point: give either --mass with --dA, or --tA with --gammaA",
              file=sys.stderr)
        return 2
    if have_mass:
        if args.mass is None or args.dA is None:
            print("point: --mass and --dA go together", file=sys.stderr)
            return 2
        fixed.update(mass=args.mass, d_a=args.dA)
    else:
        if args.tA is None or args.gammaA is None:
            print("point: --tA and --gammaA go together", file=sys.stderr)
            return 2
        fixed.update(t_a=args.tA, gamma_a=args.gammaA)
    overrides = _solver_overrides(args)
    overrides.pop("jobs", None)
    overrides.pop("cache", None)
    try:
        spec = SweepSpec(axes=(), fixed=fixed, with_edr=args.edr, **overrides)
    except ValueError as exc:
        print(f"point: {exc}", file=sys.stderr)
        return 2
    row = evaluate_point(spec.points()[0], spec)
    if args.json:
        print(json.dumps(row, sort_keys=True))
    else:
        for name in COLUMNS:
            if row[name] is not None:
                print(f"{name:>12s} = {row[name]}")
    return 0 if row["status"] == "ok" else 1


def _run_sweep_cmd(args) -> int:
    try:
        with open(args.config, encoding="utf-8") as fh:
            config = json.load(fh)
    except (OSError, ValueError) as exc:
        print(f"sweep: cannot read config: {exc}", file=sys.stderr)
        return 2
    out_path = args.out or config.pop("output", None) or "sweep.csv"
    config.pop("output", None)
    config.update(_solver_overrides(args))
    try:
        spec = SweepSpec.from_dict(config)
    except (TypeError, ValueError) as exc:
        print(f"sweep: invalid config: {exc}", file=sys.stderr)
        return 2
    rows, manifest = run_sweep(spec, progress=True)
    write_csv(rows, out_path)
    write_manifest(manifest, os.path.splitext(out_path)[0] + ".manifest.json")
    bad = sum(1 for r in rows if r["status"] != "ok")
    print(f"{len(rows)} rows -> {out_path}" +
          (f" ({bad} with error status)" if bad else ""))
    return 0


def _run_preset(args) -> int:
    try:
        specs = preset_specs(args.name, **_solver_overrides(args))
    except ValueError as exc:
        print(f"preset: {exc}", file=sys.stderr)
        return 2
    os.makedirs(args.out, exist_ok=True)
    tables, csv_names = {}, {}
    for stem, spec in specs.items():
        rows, manifest = run_sweep(spec, progress=True)
        csv_names[stem] = stem + ".csv"
        write_csv(rows, os.path.join(args.out, csv_names[stem]))
        write_manifest(manifest, os.path.join(args.out, stem + ".manifest.json"))
        tables[stem] = rows
        print(f"{len(rows)} rows -> {os.path.join(args.out, csv_names[stem])}")
    script = emit_plot_script(tables, args.name, csv_names)
    script_path = os.path.join(args.out, args.name + ".gp")
    with open(script_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(script)
    print(f"plot script -> {script_path}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "point":
        return _run_point(args)
    if args.command == "sweep":
        return _run_sweep_cmd(args)
    return _run_preset(args)


if __name__ == "__main__":
    sys.exit(main())
