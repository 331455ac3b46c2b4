"""Tests for sweeps, figure presets, CSV/gnuplot output, and the CLI."""

import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from qplasma.cli import main
from qplasma.dielectric import ModelKind
from qplasma.scan import (
    FigurePreset,
    ScanError,
    ScanSpec,
    figure_part,
    figure_preset,
    read_csv,
    run_scan,
    write_output,
    write_plot_script,
)


def drude_spec(**over):
    base = dict(models=(ModelKind.DRUDE,), fixed={"x_p": 1.0, "y": 0.0},
                sweep_var="x", sweep_range=(1.0, 2.0), n=2)
    base.update(over)
    return ScanSpec(**base)


class TestScanSpecValidation:
    def test_accepts_single_model(self):
        spec = ScanSpec(models=ModelKind.DRUDE, fixed={"x_p": 1.0, "y": 0.0},
                        sweep_var="x", sweep_range=(1.0, 2.0), n=2)
        assert spec.models == (ModelKind.DRUDE,)

    @pytest.mark.parametrize("over, match", [
        ({"sweep_var": "nope"}, "sweep_var"),
        ({"fixed": {"x_p": 1.0, "y": 0.0, "x": 1.0}}, "must not appear"),
        ({"sweep_range": (2.0, 1.0)}, "lo < hi"),
        ({"n": 1}, "n must be"),
        ({"scale": "weird"}, "scale"),
        ({"sweep_range": (0.0, 1.0), "scale": "log"}, "log scale"),
        ({"fixed": {"x_p": 1.0, "nope": 2.0}}, "unknown fixed"),
        ({"fixed": {"y": 0.0}}, "x_p"),
        ({"models": ()}, "at least one model"),
    ])
    def test_rejections(self, over, match):
        with pytest.raises(ValueError, match=match):
            drude_spec(**over)

    def test_model_variable_requirements(self):
        # quantum needs q; not provided fixed or swept
        with pytest.raises(ValueError, match="needs"):
            ScanSpec(models=(ModelKind.QUANTUM,), fixed={"x_p": 1.0, "y": 0.1},
                     sweep_var="x", sweep_range=(0.1, 1.0), n=4)

    @given(st.floats(1e-3, 10), st.floats(1e-3, 10), st.integers(2, 50),
           st.sampled_from(["linear", "log"]))
    def test_grid_shape_property(self, a, b, n, scale):
        if not a < b:
            a, b = min(a, b), max(a, b)
            if a == b:
                return
        spec = drude_spec(sweep_range=(a, b), n=n, scale=scale)
        g = spec.grid()
        assert len(g) == n
        assert g[0] == pytest.approx(a, rel=1e-12)
        assert g[-1] == pytest.approx(b, rel=1e-12)
        assert all(u < v for u, v in zip(g, g[1:]))


class TestRunScan:
    def test_drude_rows_exact(self):
        table = run_scan(drude_spec())
        assert table.columns == ("x", "re_eps_drude", "im_eps_drude")
        assert table.rows == ((1.0, 0.0, 0.0), (2.0, 0.75, 0.0))

    def test_static_sweep_imaginary_column_is_zero(self):
        spec = ScanSpec(models=(ModelKind.STATIC,), fixed={"x_p": 1.0, "y": 0.1},
                        sweep_var="q", sweep_range=(0.1, 2.0), n=16)
        table = run_scan(spec)
        assert all(abs(row[2]) <= 1e-12 for row in table.rows)

    def test_rows_ascending_and_parallel_identical(self):
        spec = ScanSpec(models=(ModelKind.QUANTUM, ModelKind.CLASSICAL),
                        fixed={"x_p": 1.0, "y": 0.1, "x": 1.0},
                        sweep_var="q", sweep_range=(0.05, 2.5), n=40)
        serial = run_scan(spec, workers=1)
        parallel = run_scan(spec, workers=4)
        assert serial.rows == parallel.rows
        sweeps = [row[0] for row in serial.rows]
        assert sweeps == sorted(sweeps)

    def test_evaluation_error_reports_coordinates(self):
        spec = ScanSpec(models=(ModelKind.DRUDE,), fixed={"x_p": 1.0, "y": 0.1},
                        sweep_var="x", sweep_range=(-1.0, 1.0), n=3)  # hits x=0
        with pytest.raises(ScanError, match="x=0.0"):
            run_scan(spec)

    def test_mermin_compat_flag_changes_values(self):
        kw = dict(models=(ModelKind.MERMIN,), fixed={"x_p": 1.0, "y": 0.1, "x": 1.0},
                  sweep_var="q", sweep_range=(0.3, 0.8), n=3)
        default = run_scan(ScanSpec(**kw))
        compat = run_scan(ScanSpec(**kw, mermin_paper_d0=True))
        assert default.rows != compat.rows


class TestFigurePresets:
    def test_out_of_range(self):
        for bad in (0, 15, -3):
            with pytest.raises(ValueError):
                figure_preset(bad)

    def test_resonance_overlay_preset(self):
        specs = figure_preset(5)
        assert len(specs) == 1
        spec = specs[0]
        assert spec.models == (ModelKind.QUANTUM, ModelKind.CLASSICAL)
        assert spec.fixed == {"x_p": 10.0, "y": 0.01, "q": 1.0}
        assert spec.sweep_var == "x"
        assert spec.sweep_range[1] >= 10.0  # straddles the resonance

    def test_log_sweep_preset(self):
        spec = figure_preset(11)[0]
        assert spec.scale == "log"
        assert spec.sweep_var == "y"
        assert spec.fixed == {"x_p": 1.0, "x": 1.0, "q": 0.5}
        assert spec.sweep_range == (1e-5, 1e-1)

    def test_curve_families(self):
        specs = figure_preset(1)
        assert [s.fixed["x"] for s in specs] == [1.0, 0.7, 1.3]
        specs = figure_preset(3)
        assert [s.fixed["q"] for s in specs] == [0.5, 0.6, 0.7]

    def test_all_presets_valid_and_default_n(self):
        for fig_id in range(1, 15):
            for spec in figure_preset(fig_id):
                spec.validate()
                assert spec.n == 400

    def test_parts_alternate(self):
        assert figure_part(1) == "re"
        assert figure_part(2) == "im"
        assert figure_part(13) == "re"

    def test_bundle_type(self):
        preset = FigurePreset.of(6, n=8)
        assert preset.id == 6
        assert preset.part == "im"
        assert len(preset.scans) == 1


class TestWriteOutput:
    def test_round_trip_exact(self, tmp_path):
        spec = drude_spec(output_path=str(tmp_path / "drude.csv"))
        table = run_scan(spec)
        paths = write_output(table, spec)
        cols, rows = read_csv(paths[0])
        assert cols == table.columns
        assert rows == table.rows

    def test_header_records_fixed_parameters(self, tmp_path):
        spec = ScanSpec(models=(ModelKind.QUANTUM,),
                        fixed={"x_p": 1.0, "y": 0.1, "x": 1.3},
                        sweep_var="q", sweep_range=(0.1, 1.0), n=4,
                        output_path=str(tmp_path / "scan.csv"))
        write_output(run_scan(spec), spec)
        text = (tmp_path / "scan.csv").read_text()
        for line in ("# x: 1.3", "# x_p: 1", "# y: 0.1", "# model: quantum"):
            assert line in text
        assert "# tool: qplasma" in text

    def test_plot_script_relative_path_and_log_scale(self, tmp_path):
        spec = ScanSpec(models=(ModelKind.QUANTUM, ModelKind.CLASSICAL),
                        fixed={"x_p": 1.0, "x": 1.0, "q": 0.5},
                        sweep_var="y", sweep_range=(1e-5, 1e-1), n=4, scale="log",
                        output_path=str(tmp_path / "sub" / "ysweep.csv"))
        os.makedirs(tmp_path / "sub")
        paths = write_output(run_scan(spec), spec, plot_script=True)
        script = (tmp_path / "sub" / "ysweep.gp").read_text()
        assert "set logscale x" in script
        assert "'ysweep.csv'" in script  # relative, not absolute
        assert str(tmp_path) not in script

        lin = drude_spec(output_path=str(tmp_path / "lin.csv"))
        write_output(run_scan(lin), lin, plot_script=True)
        assert "logscale" not in (tmp_path / "lin.gp").read_text()

    def test_empty_table_rejected(self, tmp_path):
        spec = drude_spec(output_path=str(tmp_path / "x.csv"))
        table = run_scan(spec)
        empty = type(table)(columns=table.columns, rows=(), spec=spec)
        with pytest.raises(ValueError):
            write_output(empty, spec)

    def test_determinism_byte_identical(self, tmp_path):
        spec = ScanSpec(models=(ModelKind.QUANTUM,),
                        fixed={"x_p": 1.0, "y": 0.1, "x": 1.0},
                        sweep_var="q", sweep_range=(0.05, 2.0), n=32)
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_output(run_scan(spec, workers=1), spec, path=str(a))
        write_output(run_scan(spec, workers=4), spec, path=str(b))
        assert a.read_bytes() == b.read_bytes()


class TestCli:
    def test_sweep_run(self, tmp_path, capsys):
        out = tmp_path / "drude.csv"
        rc = main(["--model", "drude", "--xp", "1", "--y", "0",
                   "--sweep", "x=1:2:2", "--out", str(out)])
        assert rc == 0
        cols, rows = read_csv(str(out))
        assert rows == ((1.0, 0.0, 0.0), (2.0, 0.75, 0.0))

    def test_figure_run_writes_curves_and_script(self, tmp_path):
        rc = main(["--figure", "1", "--n", "8", "--out", str(tmp_path),
                   "--plot-script"])
        assert rc == 0
        names = sorted(os.listdir(tmp_path))
        assert names == ["fig01.gp", "fig01_curve1.csv", "fig01_curve2.csv",
                         "fig01_curve3.csv"]

    def test_overlay_models_comma_list(self, tmp_path):
        out = tmp_path / "overlay.csv"
        rc = main(["--model", "quantum,classical", "--xp", "1", "--y", "0.1",
                   "--x", "1", "--sweep", "q=0.1:1:4", "--out", str(out)])
        assert rc == 0
        cols, _ = read_csv(str(out))
        assert cols == ("q", "re_eps_quantum", "im_eps_quantum",
                        "re_eps_classical", "im_eps_classical")

    def test_compat_flag_changes_mermin_output(self, tmp_path):
        args = ["--model", "mermin", "--xp", "1", "--y", "0.1", "--x", "1",
                "--sweep", "q=0.3:0.8:3"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b), "--compat-mermin-paper-d0"]) == 0
        assert read_csv(str(a))[1] != read_csv(str(b))[1]

    def test_parallel_matches_serial_bytes(self, tmp_path):
        args = ["--model", "quantum", "--xp", "1", "--y", "0.1", "--x", "1",
                "--sweep", "q=0.05:2:24"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b), "--parallel", "4"]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_error_paths_exit_nonzero(self, tmp_path, capsys):
        assert main(["--figure", "15", "--out", str(tmp_path)]) == 1
        assert "error:" in capsys.readouterr().err
        assert main(["--model", "drude", "--out", str(tmp_path / "x.csv")]) == 1
        assert "error:" in capsys.readouterr().err
        assert main(["--sweep", "x=1:2:4", "--out", str(tmp_path / "x.csv")]) == 1
        assert "error:" in capsys.readouterr().err

    def test_module_entry_point(self, tmp_path):
        out = tmp_path / "cli.csv"
        proc = subprocess.run(
            [sys.executable, "-m", "qplasma", "--model", "drude", "--xp", "1",
             "--y", "0", "--sweep", "x=1:2:2", "--out", str(out)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        assert out.exists()

    def test_bad_sweep_syntax_rejected(self):
        with pytest.raises(SystemExit) as err:
            main(["--model", "drude", "--sweep", "x=1:2", "--out", "x.csv"])
        assert err.value.code != 0
