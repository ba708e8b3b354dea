"""Secondary acceptance: the golden-figure criterion, with a verdict line."""

from plotkit.figures import build_diagnostics_figure, build_ecdf_figure


def test_criterion_9_golden_figure(tmp_path, psha_run):
    curve = tmp_path / "fixed.csv"
    curve.write_text("1,0.0\n50,0.4\n100,0.9\n")
    fig = build_ecdf_figure([str(curve)], labels=["fixed"])
    xy = fig.axes[0].lines[0].get_xydata().tolist()
    golden = xy == [[1.0, 0.0], [50.0, 0.4], [100.0, 0.9]]

    runlog, diag = psha_run
    panels = build_diagnostics_figure(str(runlog), str(diag))
    titles = {ax.get_title() for ax in panels.axes if ax.get_title()}
    four_panels = titles == {"error", "population spread", "control memories",
                             "successful parameters"}

    passed = golden and four_panels
    print(f"[criterion 9] {'PASS' if passed else 'FAIL'}: fixed-curve data "
          f"reproduced exactly; four diagnostic panels rendered from the "
          f"history-memory run")
    assert passed
