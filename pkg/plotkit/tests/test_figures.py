import numpy as np
import pytest

from plotkit.figures import (build_diagnostics_figure, build_ecdf_figure,
                             plot_diagnostics, plot_ecdf)


def fixed_curve(tmp_path, name="c.csv", rows="1,0.0\n50,0.4\n100,0.9\n"):
    p = tmp_path / name
    p.write_text(rows)
    return str(p)


class TestEcdfFigure:
    def test_golden_series_read_back(self, tmp_path):
        path = fixed_curve(tmp_path)
        fig = build_ecdf_figure([path], labels=["x"])
        xy = fig.axes[0].lines[0].get_xydata()
        assert xy.tolist() == [[1.0, 0.0], [50.0, 0.4], [100.0, 0.9]]

    def test_dominance_preserved(self, tmp_path):
        low = fixed_curve(tmp_path, "low.csv", "1,0.0\n50,0.2\n100,0.5\n")
        high = fixed_curve(tmp_path, "high.csv", "1,0.1\n50,0.4\n100,0.9\n")
        fig = build_ecdf_figure([low, high], labels=["low", "high"])
        y_low = fig.axes[0].lines[0].get_ydata()
        y_high = fig.axes[0].lines[1].get_ydata()
        assert np.all(y_low <= y_high)

    def test_flat_zero_curve(self, tmp_path):
        path = fixed_curve(tmp_path, "zero.csv", "1,0.0\n100,0.0\n")
        fig = build_ecdf_figure([path])
        assert fig.axes[0].lines[0].get_ydata().tolist() == [0.0, 0.0]

    def test_duplicate_labels_rejected(self, tmp_path):
        a = fixed_curve(tmp_path, "a.csv")
        b = fixed_curve(tmp_path, "b.csv")
        with pytest.raises(ValueError, match="unique"):
            build_ecdf_figure([a, b], labels=["same", "same"])

    def test_label_count_mismatch(self, tmp_path):
        a = fixed_curve(tmp_path, "a.csv")
        with pytest.raises(ValueError, match="labels"):
            build_ecdf_figure([a], labels=["x", "y"])

    @pytest.mark.parametrize("fmt", ["png", "svg"])
    def test_rendering_deterministic(self, tmp_path, fmt):
        path = fixed_curve(tmp_path)
        out1 = str(tmp_path / f"fig1.{fmt}")
        out2 = str(tmp_path / f"fig2.{fmt}")
        plot_ecdf([path], out1, labels=["x"], fmt=fmt)
        plot_ecdf([path], out2, labels=["x"], fmt=fmt)
        assert open(out1, "rb").read() == open(out2, "rb").read()

    def test_unknown_format(self, tmp_path):
        path = fixed_curve(tmp_path)
        with pytest.raises(ValueError, match="format"):
            plot_ecdf([path], str(tmp_path / "f.pdf"), fmt="pdf")


class TestDiagnosticsFigure:
    def test_four_panels_from_history_memory_run(self, tmp_path, psha_run):
        runlog, diag = psha_run
        fig = build_diagnostics_figure(str(runlog), str(diag))
        titled = [ax for ax in fig.axes if ax.get_title()]
        assert {ax.get_title() for ax in titled} == {
            "error", "population spread", "control memories",
            "successful parameters"}
        memory_ax = next(ax for ax in titled if ax.get_title() == "control memories")
        assert len(memory_ax.lines) >= 20  # ten slots per memory vector
        out = str(tmp_path / "diag.png")
        assert plot_diagnostics(str(runlog), str(diag), out) == out

    def test_stateless_run_annotated(self, pco_run):
        runlog, diag = pco_run
        fig = build_diagnostics_figure(str(runlog), str(diag))
        memory_ax = next(ax for ax in fig.axes
                         if ax.get_title() == "control memories")
        assert not memory_ax.lines
        assert memory_ax.texts[0].get_text() == "no adaptive state"

    def test_gap_rows_break_the_series(self, tmp_path):
        meta = "# sphere,5,1,rand1,p-ja,baldwin,10,7,150"
        runlog = tmp_path / "run.csv"
        runlog.write_text(f"{meta}\n1,100.0\n20,1.0\n")
        diag = tmp_path / "diag.csv"
        diag.write_text(f"{meta}\n1,20,3.0,1,0.5,0.9,0.5,0.5\n"
                        f"2,30,2.5,1,,,0.5,0.5\n3,40,2.0,2,0.6,0.8,0.5,0.5\n")
        fig = build_diagnostics_figure(str(runlog), str(diag))
        params_ax = next(ax for ax in fig.axes
                         if ax.get_title() == "successful parameters")
        ydata = params_ax.lines[0].get_ydata()
        assert np.isnan(ydata[1]) and not np.isnan(ydata[0])

    def test_metadata_mismatch_rejected(self, tmp_path):
        a = "# sphere,5,1,rand1,p-ja,baldwin,10,7,150"
        b = "# sphere,5,1,rand1,p-sha,baldwin,10,7,150"
        runlog = tmp_path / "run.csv"
        runlog.write_text(f"{a}\n1,100.0\n")
        diag = tmp_path / "diag.csv"
        diag.write_text(f"{b}\n1,20,3.0,1,0.5,0.9\n")
        with pytest.raises(ValueError, match="metadata"):
            build_diagnostics_figure(str(runlog), str(diag))
