import numpy as np
import pytest

from plotkit.io import ParseError, read_diag_csv, read_ecdf_csv, read_runlog_csv

RUN_META = "# sphere,5,1,rand1,p-sha,baldwin,10,7,150"


def write(path, text):
    path.write_text(text)
    return str(path)


class TestEcdfReader:
    def test_plain_rows(self, tmp_path):
        p = write(tmp_path / "c.csv", "1,0.0\n10,0.25\n100,1.0\n")
        s = read_ecdf_csv(p)
        assert s.evals.tolist() == [1, 10, 100]
        assert s.proportion.tolist() == [0.0, 0.25, 1.0]
        assert s.meta == {}

    def test_meta_line(self, tmp_path):
        p = write(tmp_path / "c.csv", "# rand1,p-co,lamarck,5,153\n1,0.5\n")
        s = read_ecdf_csv(p)
        assert s.meta["pcm"] == "p-co"
        assert s.meta["denominator"] == "153"

    def test_error_names_file_and_line(self, tmp_path):
        p = write(tmp_path / "bad.csv", "1,0.0\n10,zero\n")
        with pytest.raises(ParseError, match=r"bad\.csv:2"):
            read_ecdf_csv(p)

    def test_wrong_column_count(self, tmp_path):
        p = write(tmp_path / "bad.csv", "1,0.0,9\n")
        with pytest.raises(ParseError, match=r"bad\.csv:1.*columns"):
            read_ecdf_csv(p)

    def test_empty_file(self, tmp_path):
        p = write(tmp_path / "empty.csv", "")
        with pytest.raises(ParseError, match="no data"):
            read_ecdf_csv(p)


class TestRunlogReader:
    def test_round_values(self, tmp_path):
        p = write(tmp_path / "run.csv", f"{RUN_META}\n1,125.5\n9,3.25\n")
        trace = read_runlog_csv(p)
        assert trace.meta["function"] == "sphere"
        assert trace.meta["budget"] == 150
        assert trace.evals.tolist() == [1, 9]
        assert trace.f_delta.tolist() == [125.5, 3.25]

    def test_missing_meta(self, tmp_path):
        p = write(tmp_path / "run.csv", "1,125.5\n")
        with pytest.raises(ParseError, match="metadata"):
            read_runlog_csv(p)


class TestDiagReader:
    def test_gaps_become_nan(self, tmp_path):
        p = write(tmp_path / "d.csv",
                  f"{RUN_META}\n1,20,3.5,1,0.5,0.9\n2,30,3.0,2,,\n")
        d = read_diag_csv(p)
        assert d.mean_succ_s[0] == 0.5
        assert np.isnan(d.mean_succ_s[1]) and np.isnan(d.mean_succ_c[1])
        assert d.memory.shape == (2, 0)

    def test_memory_columns(self, tmp_path):
        p = write(tmp_path / "d.csv",
                  f"{RUN_META}\n1,20,3.5,1,0.5,0.9,0.5,0.5,0.4,0.6\n")
        d = read_diag_csv(p)
        assert d.memory.shape == (1, 4)

    def test_ragged_rows_rejected(self, tmp_path):
        p = write(tmp_path / "d.csv",
                  f"{RUN_META}\n1,20,3.5,1,0.5,0.9,0.5,0.5\n2,30,3.0,2,,,0.5\n")
        with pytest.raises(ParseError, match=r"d\.csv:3.*ragged"):
            read_diag_csv(p)
