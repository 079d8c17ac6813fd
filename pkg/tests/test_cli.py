import io
import json
import subprocess
import sys

import pytest

from hairy import cli
from hairy import dihedral as dh
from hairy.graph import dumps
from hairy.maps import two_loops_three_edges


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def rows(text):
    lines = text.strip().split("\n")
    return [line.split("\t") for line in lines[1:]]


def test_comm_table():
    code, text = run("homology", "--operad", "comm", "--rank", "1", "--dim-v", "2",
                     "--k-max", "4")
    assert code == 0
    dims = {(int(k), int(d)): int(x) for k, d, x in rows(text)}
    assert dims[2, 2] == 1 and dims[3, 3] == 4 and dims[4, 4] == 1
    assert dims[1, 1] == 0 and dims[4, 5] == 0


def test_lie_odd_symmetric_powers():
    code, text = run("homology", "--operad", "lie", "--dim-v", "2", "--k", "1",
                     "--g-max", "5")
    assert code == 0
    assert [int(r[2]) for r in rows(text)] == [2, 0, 4, 0, 6]


def test_graph_method_agrees():
    a = run("homology", "--operad", "assoc", "--k-max", "3", "--g-max", "3")[1]
    b = run("homology", "--operad", "assoc", "--k-max", "3", "--g-max", "3",
            "--method", "graph")[1]
    c = run("homology", "--operad", "assoc", "--k-max", "3", "--g-max", "3",
            "--method", "graph", "--jobs", "2")[1]
    assert rows(a) == rows(b) == rows(c)


def test_degree_zero_is_empty():
    code, text = run("homology", "--operad", "comm", "--degree", "0")
    assert code == 0 and text == "k\tdegree\tdim\n"


def test_json_is_byte_stable():
    argv = ("homology", "--operad", "lie", "--k-max", "2", "--g-max", "3", "--format", "json")
    a, b = run(*argv)[1], run(*argv)[1]
    assert a == b
    data = json.loads(a)
    assert data["command"] == "homology" and data["rows"][0] == {"k": 1, "degree": 1, "dim": 2}


def test_crosscheck_passes():
    code, text = run("crosscheck", "--operad", "all", "--k-max", "2", "--g-max", "2")
    assert code == 0
    assert all(r[-1] == "1" for r in rows(text))


def test_crosscheck_empty_range():
    code, text = run("crosscheck", "--operad", "comm", "--k-max", "0", "--g-max", "0")
    assert code == 0 and rows(text) == []


def test_crosscheck_detects_a_mismatch(monkeypatch):
    real = dh.hd_dims

    def perturbed(*args, **kw):
        table = real(*args, **kw)
        table[1, 2] = table.get((1, 2), 0) + 1
        return table
    monkeypatch.setattr(dh, "hd_dims", perturbed)
    code, text = run("crosscheck", "--operad", "comm", "--k-max", "2", "--g-max", "2",
                     "--check", "dihedral")
    assert code == 1
    assert any(r[-1] == "0" for r in rows(text))


def test_bo_homology():
    code, text = run("bo-homology", "--operad", "lie", "--ell", "3", "--labels", "p1,p1,q1",
                     "--format", "json")
    data = json.loads(text)
    assert code == 0 and data["expected_h0"] == 6
    assert [r["dim"] for r in data["rows"]] == [6, 0, 0]


def test_assembly_example():
    code, text = run("assembly", "--example", "--n", "1", "2", "3")
    assert code == 0
    assert [r[1] for r in rows(text)] == ["1/4", "1/32", "1/108"]


def test_assembly_from_files(tmp_path):
    g, _ = two_loops_three_edges()
    gfile = tmp_path / "g.txt"
    gfile.write_text(dumps(g))
    half = "graph lie 1\nv 0 lie:[[[1,2],3],4]\ne 0.0 0.1\nh 0.2 {x}\nh 0.3 {x}\nh 0.4 {x}\n"
    spec = [{"operad": "lie", "degree": 3, "rank": 1, "labels": [x] * 3, "k": 1,
             "graph": half.format(x=x)} for x in ("p1", "q1")]
    cfile = tmp_path / "z.json"
    cfile.write_text(json.dumps(spec))
    code, text = run("assembly", "--graph", str(gfile), "--cocycles", str(cfile), "--n", "2")
    assert code == 0 and rows(text) == [["2", "1/32"]]
    code, text = run("assembly", "--graph", str(gfile), "--n", "2")
    assert code == 0 and rows(text) == [["2", "0"]]


def test_decompose():
    code, text = run("decompose", "--operad", "comm", "--k", "4", "--degree", "4",
                     "--format", "json")
    data = json.loads(text)
    assert data["decomposition"] == "[2^2]+[1^4]"
    assert data["rows"] == [{"dim_v": 2, "dim": 1}, {"dim_v": 4, "dim": 21}]


def test_errors(tmp_path):
    with pytest.raises(SystemExit) as e:
        cli.main(["homology", "--operad", "nope"], out=io.StringIO())
    assert e.value.code == 2
    code, _ = run("assembly", "--graph", str(tmp_path / "missing.txt"))
    assert code == 2
    code, _ = run("homology", "--operad", "assoc", "--rank", "1", "--degree", "3",
                  "--method", "graph", "--max-basis", "2")
    assert code == 3


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "hairy.cli", "homology", "--operad", "comm",
                          "--k", "2", "--degree", "2"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout == "k\tdegree\tdim\n2\t2\t1\n"
