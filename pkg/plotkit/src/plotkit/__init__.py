"""Static figures from optimizer benchmark CSV files."""

from .figures import (build_diagnostics_figure, build_ecdf_figure,
                      plot_diagnostics, plot_ecdf)
from .io import (DiagTrace, EcdfSeries, ParseError, RunTrace, read_diag_csv,
                 read_ecdf_csv, read_runlog_csv)

__version__ = "0.1.0"
