"""Command-line front end for parameter sweeps and figure presets."""

from __future__ import annotations

import argparse
import os
import sys

from .dielectric import ModelKind
from .scan import (
    ScanSpec,
    figure_part,
    figure_preset,
    run_scan,
    write_output,
    write_plot_script,
)


def _parse_sweep(text: str):
    """var=lo:hi:n[:log] -> (var, (lo, hi), n, scale)"""
    try:
        var, rest = text.split("=", 1)
        parts = rest.split(":")
        if len(parts) not in (3, 4):
            raise ValueError
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        scale = "linear"
        if len(parts) == 4:
            if parts[3] != "log":
                raise ValueError
            scale = "log"
    except (ValueError, IndexError):
        raise argparse.ArgumentTypeError(
            f"sweep must look like var=lo:hi:n[:log], got {text!r}"
        )
    return var.strip(), (lo, hi), n, scale


def _parse_models(text: str) -> tuple[ModelKind, ...]:
    names = [tok.strip() for tok in text.split(",") if tok.strip()]
    try:
        return tuple(ModelKind(name) for name in names)
    except ValueError:
        valid = ", ".join(m.value for m in ModelKind)
        raise argparse.ArgumentTypeError(f"unknown model in {text!r}; valid: {valid}")


def _parse_parallel(text: str) -> int:
    if text == "auto":
        return os.cpu_count() or 1
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("worker count must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qplasma",
        description="Sweep longitudinal plasma permittivity models and write "
                    "CSV tables (optionally with gnuplot scripts).",
    )
    p.add_argument("--model", type=_parse_models, default=None,
                   help="model name or comma list for overlay "
                        "(quantum, classical, mermin, lindhard_collisionless, static, drude)")
    p.add_argument("--xp", type=float, default=None, help="plasma frequency x_p")
    p.add_argument("--y", type=float, default=None, help="collision frequency y")
    p.add_argument("--x", type=float, default=None, help="frequency x")
    p.add_argument("--q", type=float, default=None, help="wave number q")
    p.add_argument("--sweep", type=_parse_sweep, default=None,
                   metavar="VAR=LO:HI:N[:log]", help="sweep specification")
    p.add_argument("--figure", type=int, default=None, metavar="1..14",
                   help="run a preset figure instead of an explicit sweep")
    p.add_argument("--n", type=int, default=400, help="grid size for presets")
    p.add_argument("--out", default=None,
                   help="CSV path for sweeps, output directory for figures")
    p.add_argument("--plot-script", action="store_true",
                   help="also write a gnuplot script next to each CSV")
    p.add_argument("--parallel", type=_parse_parallel, default=1, metavar="N|auto",
                   help="evaluate grid points with N worker threads")
    p.add_argument("--compat-mermin-paper-d0", action="store_true",
                   help="use the historical 2 F(q/2) static denominator "
                        "in the Mermin model (comparison studies only)")
    return p


def _run_figure(args) -> int:
    fig_id = args.figure
    specs = figure_preset(fig_id, n=args.n)
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    part = figure_part(fig_id)
    csvs = []
    for i, spec in enumerate(specs):
        if args.compat_mermin_paper_d0:
            spec = ScanSpec(models=spec.models, fixed=spec.fixed,
                            sweep_var=spec.sweep_var, sweep_range=spec.sweep_range,
                            n=spec.n, scale=spec.scale, label=spec.label,
                            mermin_paper_d0=True)
        table = run_scan(spec, workers=args.parallel)
        suffix = f"_curve{i + 1}" if len(specs) > 1 else ""
        path = os.path.join(out_dir, f"fig{fig_id:02d}{suffix}.csv")
        write_output(table, spec, path=path)
        csvs.append(path)
        print(f"wrote {path}")
    if args.plot_script:
        script = write_plot_script(
            csvs, specs[0], part=part,
            script_path=os.path.join(out_dir, f"fig{fig_id:02d}.gp"),
        )
        print(f"wrote {script}")
    return 0


def _run_sweep(args) -> int:
    if args.sweep is None:
        raise ValueError("either --sweep or --figure is required")
    if args.model is None:
        raise ValueError("--model is required with --sweep")
    if args.out is None:
        raise ValueError("--out is required with --sweep")
    var, rng, n, scale = args.sweep
    fixed = {}
    for key, val in (("x_p", args.xp), ("y", args.y), ("x", args.x), ("q", args.q)):
        if val is not None:
            fixed[key] = val
    spec = ScanSpec(models=args.model, fixed=fixed, sweep_var=var,
                    sweep_range=rng, n=n, scale=scale, output_path=args.out,
                    mermin_paper_d0=args.compat_mermin_paper_d0)
    table = run_scan(spec, workers=args.parallel)
    written = write_output(table, spec, plot_script=args.plot_script)
    for path in written:
        print(f"wrote {path}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.figure is not None:
            return _run_figure(args)
        return _run_sweep(args)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
