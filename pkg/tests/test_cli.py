import subprocess
import sys

import pytest

from formprime.cli import main
from formprime.tables import golden


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "12,10,3")
    assert code == 0 and out.startswith("<3,2,4>")
    assert "D=-44" in out


def test_classgroup(capsys):
    code, out, _ = run(capsys, "classgroup", "--", "-1056")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "D=-1056\th=16\ttype=(2, 2, 4)" and len(lines) == 17
    assert run(capsys, "classgroup", "1056")[1] == out


def test_genus_and_lift(capsys):
    code, out, _ = run(capsys, "genus", "-1056")
    assert code == 0 and "Q[-1, 2, -3, -11]" in out
    code, out, _ = run(capsys, "lift", "1,0,6")
    assert out.splitlines() == ["2-lift\t<1,0,24>\tD=-96", "same d\tnone"]


def test_search_and_pretty(capsys, tmp_path):
    code, out, err = run(capsys, "search", "--bound", "200", "--f-max", "4", "--out", str(tmp_path))
    assert code == 0 and out.splitlines()[0] == "d\tf\tD\ttype"
    assert "-163\t1\t-163\t(1)" in out and "one further fundamental" in err
    assert (tmp_path / "hits.tsv").read_text() == out
    code, pretty, _ = run(capsys, "search", "--bound", "200", "--f-max", "4", "--pretty")
    assert "\t" not in pretty and len(pretty.splitlines()) == len(out.splitlines())


def test_pairs(capsys):
    code, out, _ = run(capsys, "pairs", "-1056", "-2112")
    assert code == 0 and out.splitlines()[1:] == [
        "1\t<7,6,39>\t1056\t264\t2\tQ[-1, 2, -3, -11]\t(2, 2, 4)\t{}",
        "1\t<7,4,76>\t2112\t132\t4\tQ[-1, 2, -3, -11]\t(2, 2, 4)\t{}",
    ]


def test_tables(capsys, tmp_path):
    code, out, _ = run(capsys, "tables", "--bound", "100000", "--f-max", "30", "--out", str(tmp_path))
    assert code == 0
    assert "226 fundamental\t199 nonmaximal" in out
    assert "67 with #delta >= 2\t#delta=2: 61\t#delta=3: 6" in out
    files = sorted(p.name for p in tmp_path.iterdir())
    assert len(files) == 16
    for name in files:
        assert (tmp_path / name).read_bytes() == golden(name).encode()


def test_verify_falsify_density(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--class", "t1:1", "--limit", "10000")
    assert code == 0 and out.rstrip().endswith("PASS")
    f = tmp_path / "c.txt"
    f.write_text("1,0,5\n2,2,3\n")
    code, out, _ = run(capsys, "verify", "--class", str(f), "--limit", "10000")
    assert code == 1 and out.rstrip().endswith("FAIL")
    f.write_text("1,0,5\n1,0,6\n")
    assert run(capsys, "verify", "--class", str(f))[0] == 2
    code, out, _ = run(capsys, "falsify", "1,0,5", "1,0,6", "--limit", "1000")
    assert code == 0 and out.split()[0] == "5"
    code, out, _ = run(capsys, "density", "1,0,1", "--limit", "100000")
    assert code == 0 and "expected\t0.500000" in out


def test_exit_codes(capsys):
    assert run(capsys, "classgroup", "-47")[0] == 0
    assert run(capsys, "reduce", "1,0,-1")[0] == 2
    assert run(capsys, "genus", "-13")[0] == 2
    assert run(capsys, "search", "--bound", "2")[0] == 2
    assert run(capsys, "density", "1,0,1", "--limit", "1000000000000")[0] == 3
    assert run(capsys, "bogus")[0] == 64
    assert run(capsys, "reduce", "1,2")[0] == 64
    assert run(capsys)[0] == 64


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "formprime.cli", "classgroup", "--", "-15"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("D=-15\th=2")
