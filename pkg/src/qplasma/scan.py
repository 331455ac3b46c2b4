"""Parameter sweeps over the permittivity models and figure-preset tables.

A ScanSpec pins every model input except one sweep variable; run_scan
evaluates the requested models over the grid and returns an ordered table.
Output is plain CSV with a commented header plus an optional gnuplot script,
both byte-deterministic for identical specs.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import __version__
from .dielectric import ModelKind, PlasmaParams, QueryPoint, evaluate

_SWEEPABLE = ("x", "q", "y")
_PARAM_KEYS = ("x_p", "y", "x", "q")

#: model -> variables it actually consumes (x_p is universal)
_REQUIRED = {
    ModelKind.QUANTUM: ("x_p", "y", "x", "q"),
    ModelKind.CLASSICAL: ("x_p", "y", "x", "q"),
    ModelKind.MERMIN: ("x_p", "y", "x", "q"),
    ModelKind.LINDHARD: ("x_p", "x", "q"),
    ModelKind.STATIC: ("x_p", "y", "q"),
    ModelKind.DRUDE: ("x_p", "y", "x"),
}


class ScanError(RuntimeError):
    """Evaluation failed at a specific grid point."""


@dataclass(frozen=True)
class ScanSpec:
    models: tuple[ModelKind, ...]
    fixed: dict[str, float]
    sweep_var: str
    sweep_range: tuple[float, float]
    n: int
    scale: str = "linear"
    output_path: str | None = None
    label: str = ""
    mermin_paper_d0: bool = False

    def __post_init__(self):
        models = tuple(ModelKind(m) for m in (
            self.models if isinstance(self.models, (tuple, list)) else (self.models,)
        ))
        object.__setattr__(self, "models", models)
        object.__setattr__(self, "fixed", dict(self.fixed))
        self.validate()

    def validate(self) -> None:
        if not self.models:
            raise ValueError("at least one model is required")
        if self.sweep_var not in _SWEEPABLE:
            raise ValueError(f"sweep_var must be one of {_SWEEPABLE}, got {self.sweep_var!r}")
        if self.sweep_var in self.fixed:
            raise ValueError(f"sweep variable {self.sweep_var!r} must not appear in fixed")
        for key, val in self.fixed.items():
            if key not in _PARAM_KEYS:
                raise ValueError(f"unknown fixed parameter {key!r}")
            if not math.isfinite(float(val)):
                raise ValueError(f"fixed parameter {key}={val!r} must be finite")
        lo, hi = self.sweep_range
        if not lo < hi:
            raise ValueError(f"sweep range must satisfy lo < hi, got [{lo!r}, {hi!r}]")
        if self.n < 2:
            raise ValueError(f"grid size n must be >= 2, got {self.n!r}")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"scale must be 'linear' or 'log', got {self.scale!r}")
        if self.scale == "log" and not lo > 0:
            raise ValueError("log scale requires lo > 0")
        available = set(self.fixed) | {self.sweep_var, "x_p"}
        for model in self.models:
            missing = [v for v in _REQUIRED[model] if v not in available]
            if missing:
                raise ValueError(f"model {model.value!r} needs {missing} fixed or swept")
        if "x_p" not in self.fixed:
            raise ValueError("x_p must be given in fixed")

    def grid(self) -> list[float]:
        lo, hi = self.sweep_range
        if self.scale == "log":
            llo, lhi = math.log(lo), math.log(hi)
            return [math.exp(llo + (lhi - llo) * i / (self.n - 1)) for i in range(self.n)]
        return [lo + (hi - lo) * i / (self.n - 1) for i in range(self.n)]


@dataclass(frozen=True)
class ScanTable:
    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    spec: ScanSpec


def _eval_point(spec: ScanSpec, value: float) -> tuple[float, ...]:
    vals = dict(spec.fixed)
    vals[spec.sweep_var] = value
    params = PlasmaParams(x_p=vals["x_p"], y=vals.get("y", 0.0))
    point = QueryPoint(x=vals.get("x", 0.0), q=vals.get("q", 1.0))
    out = [value]
    for model in spec.models:
        try:
            eps = evaluate(model, params, point, mermin_paper_d0=spec.mermin_paper_d0)
        except Exception as exc:
            raise ScanError(
                f"evaluation of {model.value} failed at "
                f"{spec.sweep_var}={value!r} with fixed={spec.fixed!r}: {exc}"
            ) from exc
        if not (math.isfinite(eps.real) and math.isfinite(eps.imag)):
            raise ScanError(
                f"{model.value} returned non-finite value {eps!r} at "
                f"{spec.sweep_var}={value!r}"
            )
        out.extend((eps.real, eps.imag))
    return tuple(out)


def run_scan(spec: ScanSpec, workers: int = 1) -> ScanTable:
    """Evaluate the spec over its grid; rows come back in ascending sweep
    order regardless of evaluation concurrency."""
    spec.validate()
    grid = spec.grid()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda v: _eval_point(spec, v), grid))
    else:
        rows = [_eval_point(spec, v) for v in grid]
    columns = [spec.sweep_var]
    for model in spec.models:
        columns.append(f"re_eps_{model.value}")
        columns.append(f"im_eps_{model.value}")
    return ScanTable(columns=tuple(columns), rows=tuple(rows), spec=spec)


# ---------------------------------------------------------------------------
# Figure presets: fixed parameter families for the 14 standard plots.
# Axis ranges are tool defaults (n=400, x-sweeps on [0.01, 3] except the
# x_p=10 resonance case on [0.01, 15], q-sweeps on [0.02, 2.5], the y-sweep
# log on [1e-5, 1e-1]).
# ---------------------------------------------------------------------------

FIGURE_IDS = range(1, 15)
_OVERLAY = (ModelKind.QUANTUM, ModelKind.CLASSICAL)


@dataclass(frozen=True)
class FigurePreset:
    id: int
    part: str  # "re" or "im"
    scans: tuple[ScanSpec, ...]

    @classmethod
    def of(cls, fig_id: int, n: int = 400) -> "FigurePreset":
        return cls(id=fig_id, part=figure_part(fig_id),
                   scans=tuple(figure_preset(fig_id, n)))


def figure_preset(fig_id: int, n: int = 400) -> list[ScanSpec]:
    """Scan specs reproducing one of the 14 preset figures (1-based id)."""
    if fig_id not in FIGURE_IDS:
        raise ValueError(f"figure id must be in 1..14, got {fig_id!r}")
    q_sweep = (0.02, 2.5)
    x_sweep = (0.01, 3.0)
    if fig_id in (1, 2):
        return [
            ScanSpec(models=(ModelKind.QUANTUM,), fixed={"x_p": 1.0, "y": 0.1, "x": xv},
                     sweep_var="q", sweep_range=q_sweep, n=n, label=f"x={xv:g}")
            for xv in (1.0, 0.7, 1.3)
        ]
    if fig_id in (3, 4):
        return [
            ScanSpec(models=(ModelKind.QUANTUM,), fixed={"x_p": 1.0, "y": 0.1, "q": qv},
                     sweep_var="x", sweep_range=x_sweep, n=n, label=f"q={qv:g}")
            for qv in (0.5, 0.6, 0.7)
        ]
    if fig_id in (5, 6):
        return [ScanSpec(models=_OVERLAY, fixed={"x_p": 10.0, "y": 0.01, "q": 1.0},
                         sweep_var="x", sweep_range=(0.01, 15.0), n=n,
                         label="quantum vs classical")]
    if fig_id in (7, 8):
        return [ScanSpec(models=_OVERLAY, fixed={"x_p": 1.0, "y": 0.01, "q": 1.0},
                         sweep_var="x", sweep_range=x_sweep, n=n,
                         label="quantum vs classical")]
    if fig_id in (9, 10):
        return [ScanSpec(models=_OVERLAY, fixed={"x_p": 1.0, "y": 0.01, "q": 0.5},
                         sweep_var="x", sweep_range=x_sweep, n=n,
                         label="quantum vs classical")]
    if fig_id in (11, 12):
        return [ScanSpec(models=_OVERLAY, fixed={"x_p": 1.0, "x": 1.0, "q": 0.5},
                         sweep_var="y", sweep_range=(1e-5, 1e-1), n=n, scale="log",
                         label="quantum vs classical")]
    return [ScanSpec(models=_OVERLAY, fixed={"x_p": 1.0, "x": 1.0, "y": 0.1},
                     sweep_var="q", sweep_range=q_sweep, n=n,
                     label="quantum vs classical")]


def figure_part(fig_id: int) -> str:
    """Which part a preset figure plots: odd ids are Re, even ids are Im."""
    if fig_id not in FIGURE_IDS:
        raise ValueError(f"figure id must be in 1..14, got {fig_id!r}")
    return "re" if fig_id % 2 == 1 else "im"


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def write_output(table: ScanTable, spec: ScanSpec, path: str | None = None,
                 plot_script: bool = False, part: str = "both") -> list[str]:
    """Write the table as CSV (commented header, 17-significant-digit rows)
    and optionally a gnuplot script next to it.  Returns the written paths."""
    if not table.rows:
        raise ValueError("refusing to write an empty table")
    out_path = path or spec.output_path
    if not out_path:
        raise ValueError("no output path given")
    lines = [f"# model: {','.join(m.value for m in spec.models)}"]
    for key in sorted(spec.fixed):
        lines.append(f"# {key}: {_fmt(spec.fixed[key])}")
    lo, hi = spec.sweep_range
    lines.append(
        f"# sweep: {spec.sweep_var} from {_fmt(lo)} to {_fmt(hi)}, "
        f"n={spec.n}, scale={spec.scale}"
    )
    if spec.label:
        lines.append(f"# label: {spec.label}")
    lines.append(f"# tool: qplasma {__version__}")
    lines.append(",".join(table.columns))
    for row in table.rows:
        lines.append(",".join(_fmt(v) for v in row))
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    written = [out_path]
    if plot_script:
        written.append(write_plot_script([out_path], spec, part=part))
    return written


def write_plot_script(csv_paths: list[str], spec: ScanSpec, part: str = "both",
                      script_path: str | None = None) -> str:
    """Emit a gnuplot script plotting the requested part(s) from the CSVs,
    referencing them by relative path; log x-scale iff the spec is log."""
    import os

    if part not in ("re", "im", "both"):
        raise ValueError(f"part must be re/im/both, got {part!r}")
    base = script_path or os.path.splitext(csv_paths[0])[0] + ".gp"
    out_dir = os.path.dirname(os.path.abspath(base))
    rel = [os.path.relpath(p, out_dir) for p in csv_paths]
    lines = [
        "set datafile separator ','",
        f"set xlabel '{spec.sweep_var}'",
    ]
    if spec.scale == "log":
        lines.append("set logscale x")
    parts = ("re", "im") if part == "both" else (part,)
    for which in parts:
        lines.append(f"set ylabel '{which} eps'")
        plot_items = []
        for p in rel:
            for i, model in enumerate(spec.models):
                col = 2 + 2 * i + (0 if which == "re" else 1)
                title = f"{model.value}"
                plot_items.append(f"'{p}' using 1:{col} with lines title '{title}'")
        lines.append("plot " + ", \\\n     ".join(plot_items))
        if len(parts) > 1 and which == "re":
            lines.append("pause -1")
    with open(base, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    return base


def read_csv(path: str) -> tuple[tuple[str, ...], tuple[tuple[float, ...], ...]]:
    """Parse a CSV written by write_output back into (columns, rows)."""
    columns: tuple[str, ...] = ()
    rows: list[tuple[float, ...]] = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if not columns:
                columns = tuple(line.split(","))
                continue
            rows.append(tuple(float(tok) for tok in line.split(",")))
    return columns, tuple(rows)
