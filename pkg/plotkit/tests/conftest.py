import subprocess
import sys

import pytest


def run_optimizer(out_dir, *extra):
    """Produce a run's files via the optimizer CLI (its external interface)."""
    argv = [sys.executable, "-m", "mixde.cli", "run", "--out", str(out_dir), *extra]
    subprocess.run(argv, check=True, capture_output=True)


@pytest.fixture(scope="session")
def psha_run(tmp_path_factory):
    """The single-run analysis configuration: history-memory control on the
    conditioned separable rastrigin at n=80, full budget."""
    out = tmp_path_factory.mktemp("psha")
    run_optimizer(out, "--function", "rastrigin-sep", "--dim", "80",
                  "--strategy", "rand1", "--pcm", "p-sha",
                  "--repair", "baldwin", "--seed", "1")
    base = "rastrigin-sep_n80_i1_rand1_p-sha_baldwin"
    return out / f"run_{base}.csv", out / f"diag_{base}.csv"


@pytest.fixture(scope="session")
def pco_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("pco")
    run_optimizer(out, "--function", "sphere", "--dim", "5",
                  "--strategy", "rand1", "--pcm", "p-co", "--repair", "lamarck",
                  "--seed", "2", "--budget-mult", "60")
    base = "sphere_n5_i1_rand1_p-co_lamarck"
    return out / f"run_{base}.csv", out / f"diag_{base}.csv"
