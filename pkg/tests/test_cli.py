import io
import json
import subprocess
import sys

import pytest

from torusgraph.cli import graph_id, run
from torusgraph.constructions import cpn, m1
from torusgraph.graph import graph_from_json, graph_to_json


def call(argv, stdin="", monkeypatch=None, capsys=None):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cli(monkeypatch, capsys):
    return lambda argv, stdin="": call(argv, stdin, monkeypatch, capsys)


def test_generate_then_invariants(cli):
    code, text, _ = cli(["generate", "m1", "--k", "2"])
    assert code == 0 and graph_from_json(text) == m1(2)
    code, out, _ = cli(["invariants"], text)
    rep = json.loads(out)
    assert code == 0
    assert rep["chern_numbers"]["c1^3"] == "62"
    assert rep["chi_y"] == [1, 2, 2, 1] and rep["euler"] == 6
    assert rep["graph_id"] == graph_id(m1(2))


def test_invariants_fast_and_xi(cli):
    text = graph_to_json(cpn(3))
    code, out, _ = cli(["invariants", "--fast", "--xi", "1,10,100"], text)
    rep = json.loads(out)
    assert code == 0 and rep["certified"] is False and rep["chi_y"] == [1, 1, 1, 1]
    code, _, err = cli(["invariants", "--xi", "1,x"], text)
    assert code == 2 and "--xi" in err
    code, _, err = cli(["invariants", "--xi", "1,-1,0"], text)
    assert code == 1 and "pairs to zero" in err


def test_validate_self_loop(cli):
    doc = {"rank": 1, "half_dim": 1, "vertices": ["a", "b"],
           "edges": [{"from": "a", "to": "a", "label": [1]}]}
    code, out, _ = cli(["validate"], json.dumps(doc))
    assert code == 1
    msgs = [v["message"] for v in json.loads(out)["violations"]]
    assert any(m.startswith("self-loop at vertex a") for m in msgs)


def test_validate_ok_and_level(cli):
    code, out, _ = cli(["validate", "--level", "gkm"], graph_to_json(m1(0)))
    assert code == 0 and json.loads(out)["achieved"] == "gkm"


def test_parse_errors_exit_2(cli):
    code, _, err = cli(["validate"], '{"rank": 1,')
    assert code == 2 and "line" in err and "column" in err
    code, _, err = cli(["validate"], json.dumps({"rank": 1, "half_dim": 1, "vertices": ["a"],
                                                 "edges": [{"from": "a", "to": "b"}]}))
    assert code == 2 and "edges[0].label: missing field" in err
    with pytest.raises(SystemExit) as exc:
        run(["generate", "torus"])
    assert exc.value.code == 2


def test_blowup_and_isomorphic(cli, tmp_path):
    (tmp_path / "cp3.json").write_text(graph_to_json(cpn(3)))
    (tmp_path / "m1.json").write_text(graph_to_json(m1(1)))
    code, text, _ = cli(["blowup", "--vertex", "p0", "--in", str(tmp_path / "cp3.json")])
    assert code == 0
    code, out, _ = cli(["isomorphic", "--other", str(tmp_path / "m1.json")], text)
    assert code == 0 and out.splitlines()[0] == "isomorphic: true"
    code, out, _ = cli(["isomorphic", "--other", str(tmp_path / "cp3.json")], text)
    assert code == 1 and out.strip() == "isomorphic: false"
    code, _, err = cli(["blowup", "--vertex", "zz"], text)
    assert code == 2 and "unknown vertex" in err


def test_subgraph(cli):
    code, out, _ = cli(["subgraph", "--gens", "1,0,0;0,1,0"], graph_to_json(m1(0)))
    comps = json.loads(out)["components"]
    assert code == 0 and [c["vertices"] for c in comps] == [["p1", "p2", "p3"], ["p4", "p5", "p6"]]
    assert all(c["valence"] == 2 for c in comps)
    code, _, err = cli(["subgraph", "--gens", "1,0,0;2,0,0"], graph_to_json(m1(0)))
    assert code == 2 and "dependent" in err
    code, _, err = cli(["subgraph", "--gens", "1,0"], graph_to_json(m1(0)))
    assert code == 2


def test_export_dot_and_out_flag(cli, tmp_path):
    target = tmp_path / "g.dot"
    code, out, _ = cli(["export-dot", "--out", str(target)], graph_to_json(cpn(2)))
    assert code == 0 and out == ""
    assert target.read_text().startswith("digraph G {")


def test_classify_cli(cli):
    code, out, _ = cli(["classify", "--radius", "1"])
    rep = json.loads(out)
    assert code == 0 and rep["ok"]
    assert "seconds" not in rep
    assert rep["prism"]["survivors"] == 9
    code, _, _ = cli(["classify", "--radius", "0"])
    assert code == 2


def test_generate_cpn_n(cli):
    code, out, _ = cli(["generate", "cpn", "--n", "2"])
    assert graph_from_json(out) == cpn(2)


def test_graph_id_stable():
    assert graph_id(m1(2)) == graph_id(graph_from_json(graph_to_json(m1(2))))
    assert graph_id(m1(2)) != graph_id(m1(1))
    assert graph_id(m1(2)).startswith("sha256:") and len(graph_id(m1(2))) == 23


def test_module_entry_point():
    gen = subprocess.run([sys.executable, "-m", "torusgraph", "generate", "m1", "--k", "2"],
                         capture_output=True, text=True, check=True)
    inv = subprocess.run([sys.executable, "-m", "torusgraph", "invariants"], input=gen.stdout,
                         capture_output=True, text=True)
    assert inv.returncode == 0
    assert json.loads(inv.stdout)["chern_numbers"]["c1^3"] == "62"
