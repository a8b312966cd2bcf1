import csv
import io
import os
import subprocess
import sys

import pytest
from click.testing import CliRunner

from weylcoh import reference as ref
from weylcoh.cli import main


def invoke(*args):
    return CliRunner().invoke(main, list(args))


def run_module(*args, env_cache):
    env = dict(os.environ, WEYLCOH_CACHE=str(env_cache))
    return subprocess.run([sys.executable, "-m", "weylcoh", *args], capture_output=True, text=True, env=env)


def test_count_prints_zero():
    r = invoke("count", "--n", "6", "--cycle-type", "2,2,1,1", "--q", "2")
    assert r.exit_code == 0
    assert r.output == "0\n"


def test_count_table_csv():
    r = invoke("count", "--n", "5", "--q", "2", "--format", "csv")
    assert r.exit_code == 0
    rows = list(csv.reader(io.StringIO(r.output)))
    assert rows[0] == ["cycle_type", "q", "raw", "orbits"]
    assert ["(5)", "2", "840", "5"] in rows


def test_interp():
    r = invoke("interp", "--n", "5")
    assert r.exit_code == 0
    assert "q^2 - 5q + 6" in r.output
    assert "q^2 + 1" in r.output


def test_poset_totals():
    r = invoke("poset", "--type", "E6", "--kind", "toric")
    assert r.exit_code == 0
    assert "components 5119" in r.output
    assert "total 5079" in r.output
    r = invoke("poset", "--type", "A3", "--kind", "linear")
    assert r.exit_code == 0 and "total 15" in r.output


def test_group_and_chartab():
    r = invoke("group", "--type", "A2")
    assert r.exit_code == 0 and "# order 6 classes 3" in r.output
    r = invoke("chartab", "--type", "F4")
    assert r.exit_code == 0 and "phi_{16}^{5}" in r.output


def test_moduli_and_sieve():
    r = invoke("moduli", "D3", "--format", "csv")
    assert r.exit_code == 0
    rows = list(csv.reader(io.StringIO(r.output)))
    assert rows[0][1:] == ref.E6_COLUMNS
    assert len(rows) == 6
    r = invoke("sieve")
    assert r.exit_code == 0
    assert "phi_{10}^{9} + phi_{30}^{15} + phi_{30}^{3} + phi_{80}^{7}" in r.output


def test_tables_csv_files(tmp_path):
    r = invoke("tables", "--all", "--format", "csv", "--output", str(tmp_path))
    assert r.exit_code == 0
    files = {p.stem for p in tmp_path.glob("*.csv")}
    assert {"P5_point_counts", "P6_point_counts", "P5_cohomology", "P6_cohomology", "D3n", "D3c",
            "D3_2n_hat", "D3_tn", "D3_3n_hat", "D3_tp", "D4n", "D4", "D3"} <= files
    with open(tmp_path / "D4n.csv") as fh:
        header = next(csv.reader(fh))
    assert header[1:] == ref.S5_COLUMNS


@pytest.mark.parametrize("args", [
    ["count", "--n", "5", "--cycle-type", "3,3", "--q", "2"],
    ["count", "--n", "5", "--cycle-type", "x", "--q", "2"],
    ["count", "--n", "7", "--q", "2"],
    ["poset", "--type", "Z9", "--kind", "toric"],
    ["moduli", "nope"],
    ["tables"],
    ["tables", "--name", "nope"],
])
def test_bad_input_exits_2(args):
    assert invoke(*args).exit_code == 2


def test_verify_exit_codes():
    r = invoke("verify", "--group", "sieve")
    assert r.exit_code == 0
    r = invoke("verify", "--group", "s5-spaces")
    assert r.exit_code == 1
    assert "conflict" in r.output
    r = invoke("verify", "--group", "s5-spaces", "--accept-documented")
    assert r.exit_code == 0


def test_stats_report_cache_hit(tmp_path):
    first = run_module("poset", "--type", "A3", "--kind", "toric", "--stats", env_cache=tmp_path)
    assert first.returncode == 0
    assert "writes=1" in first.stderr
    second = run_module("poset", "--type", "A3", "--kind", "toric", "--stats", env_cache=tmp_path)
    assert second.returncode == 0
    assert "hits=1" in second.stderr and "writes=0" in second.stderr
    assert first.stdout == second.stdout


def test_output_independent_of_threads(tmp_path):
    one = run_module("count", "--n", "5", "--q-samples", "2,3", "--threads", "1", env_cache=tmp_path)
    two = run_module("count", "--n", "5", "--q-samples", "2,3", "--threads", "2", env_cache=tmp_path)
    assert one.returncode == two.returncode == 0
    assert one.stdout == two.stdout


def test_warm_cache_matches_cold(tmp_path):
    args = ("verify", "--group", "s5-spaces", "--group", "D4", "--accept-documented", "--stats")
    cold = run_module(*args, env_cache=tmp_path)
    warm = run_module(*args, env_cache=tmp_path)
    assert cold.returncode == warm.returncode == 0
    assert "hits=0" in cold.stderr and "writes=0" in warm.stderr
    assert cold.stdout == warm.stdout
