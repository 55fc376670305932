import io
import subprocess
import sys
from pathlib import Path

import pytest

from pdacache import cli, tables

GOLDEN = Path(__file__).parent / "golden"


def pda(*argv, stdin=None):
    """Run the CLI in a subprocess; returns (exit code, stdout, stderr)."""
    p = subprocess.run([sys.executable, "-m", "pdacache.cli", *map(str, argv)],
                       input=stdin, capture_output=True)
    return p.returncode, p.stdout.decode(), p.stderr.decode()


def call(*argv):
    buf = io.StringIO()
    code = cli.main([str(a) for a in argv], out=buf)
    return code, buf.getvalue()


def test_construct_rpda():
    code, out = call("construct", 5, 10, 3)
    assert code == 0
    assert out.splitlines()[0] == "# method=rpda s=5 optimality=exact-proven"
    assert out.splitlines()[1] == "PDA 5 10 3 5"


def test_construct_fixed_and_errors():
    code, out = call("construct", 4, 6, 2, "--method", "fixed:e.2")
    assert code == 0 and "PDA 4 6 2 4" in out
    assert call("construct", 3, 3, 9)[0] == 2
    assert call("construct", 0, 3, 1)[0] == 2
    assert call("construct", 4, 6, 2, "--method", "bogus")[0] == 1
    assert call("construct", 4, 5, 2, "--method", "rpda")[0] == 1
    assert call("construct", 4, 6, 2, "--method", "uncoded")[0] == 0


@pytest.mark.parametrize("F,K,Z", [(5, 10, 3), (4, 8, 2), (7, 4, 3), (6, 6, 2), (12, 12, 9), (3, 7, 1)])
def test_construct_pipes_into_verify(F, K, Z):
    code, out, _ = pda("construct", F, K, Z)
    assert code == 0
    code, rep, _ = pda("verify", "-", stdin=out.encode())
    assert code == 0, rep


def test_verify_exit_codes(tmp_path):
    bad = tmp_path / "bad.pda"
    bad.write_text("PDA 2 2 0 2\n1 2\n2 1\n")
    code, out = call("verify", bad)
    assert code == 1 and "condition 4" in out
    junk = tmp_path / "junk.pda"
    junk.write_text("hello\n")
    assert call("verify", junk)[0] == 2
    assert call("verify", tmp_path / "missing.pda")[0] == 2
    good = tmp_path / "good.pda"
    good.write_text("PDA 2 2 1 1\n- 1\n1 -\n")
    assert call("verify", good)[0] == 0


def test_bound():
    code, out = call("bound", 5, 7, 3)
    assert code == 0 and "basic\t4" in out and out.splitlines()[-1].startswith("known\t5")
    assert call("bound", 10, 4, 3)[1].splitlines()[-1].startswith("known\t14")
    assert call("bound", 4, 6, 2)[1].splitlines()[-1].startswith("known\t4")


def test_solve(tmp_path):
    code, out = call("solve", 4, 3, 2, "--witness", tmp_path / "w.pda")
    assert code == 0 and "s_min 3" in out
    assert call("verify", tmp_path / "w.pda")[0] == 0
    assert "s_min 1" in call("solve", 3, 3, 2)[1]
    code, out = call("solve", 7, 7, 2, "--budget", "nodes=20")
    assert code == 1 and "timeout" in out
    assert call("solve", 4, 3, 2, "--budget", "nodes=-1")[0] == 2


def test_adjudicate():
    code, out = call("adjudicate", 5, 7, 2)
    assert code == 0 and "s_min 9" in out
    assert call("adjudicate", 5, 7, 2, "--budget", "nodes=1,engine=columns")[0] == 1


def test_simulate(tmp_path, monkeypatch):
    demo = tmp_path / "demo.pda"
    demo.write_text("PDA 2 2 1 1\n- 1\n1 -\n")
    code, out = call("simulate", demo, 2, "--demands", "1,2")
    assert code == 0 and "broadcasts 1" in out and out.endswith("result pass\n")
    code, out = call("simulate", demo, 2, "--sweep")
    assert code == 0 and "demand_vectors 4" in out
    full = tmp_path / "full.pda"
    full.write_text("PDA 2 2 2 0\n- -\n- -\n")
    code, out = call("simulate", full, 3)
    assert code == 0 and "broadcasts 0" in out
    corrupt = tmp_path / "corrupt.pda"
    corrupt.write_text("PDA 2 2 1 1\n- 1\n1\n")
    assert call("simulate", corrupt, 2)[0] == 2
    assert call("simulate", demo, 2, "--demands", "1,5")[0] == 2
    invalid = tmp_path / "invalid.pda"
    invalid.write_text("PDA 2 2 0 2\n1 2\n2 1\n")
    assert call("simulate", invalid, 2)[0] == 1


def test_simulate_seed_env(tmp_path, monkeypatch):
    demo = tmp_path / "demo.pda"
    demo.write_text("PDA 2 2 1 1\n- 1\n1 -\n")
    monkeypatch.setenv("PDA_SEED", "99")
    assert "seed 99" in call("simulate", demo, 2)[1]
    assert "seed 5" in call("simulate", demo, 2, "--seed", 5)[1]
    monkeypatch.setenv("PDA_SEED", "x")
    assert call("simulate", demo, 2)[0] == 2


def _column(text, name):
    lines = [line.split("\t") for line in text.splitlines()]
    i = lines[0].index(name)
    return [row[i] for row in lines[1:]]


def test_table_values():
    assert _column(call("table", "f4k3")[1], "known")[:9] == ["1", "3", "4", "7..8", "10", "12", "14", "17", "18"]
    assert _column(call("table", "s66")[1], "known") == ["15", "11", "6", "3", "1"]
    assert _column(call("table", "s77")[1], "known")[2:5] == ["10", "6", "4"]
    assert call("table", "nope")[0] == 2


@pytest.mark.parametrize("family", list(tables.FAMILIES))
def test_table_golden(family):
    want = (GOLDEN / f"table_{family}.tsv").read_text()
    assert call("table", family)[1] == want


def test_table_all_is_stable():
    a, b = call("table")[1], call("table")[1]
    assert a == b and a.count("# ") == len(tables.FAMILIES)


def test_usage_errors():
    assert call()[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("bound", "x", 1, 1)[0] == 2
