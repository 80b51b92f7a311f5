import json

import pytest

from greedy_matching.cli import main
from greedy_matching.io import format_graph
from greedy_matching.reductions import build_main_reduction
from greedy_matching import CnfFormula

from helpers import path


@pytest.fixture
def files(tmp_path):
    g = tmp_path / "g.txt"
    g.write_text(format_graph(path(2, 3, 2)))
    star = tmp_path / "star.txt"
    star.write_text("graph 4\n0 1 1\n0 2 1\n0 3 1\n")
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 1 2\n1 0\n-1 0\n")
    return tmp_path, g, star, cnf


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_run_and_verify(files, capsys):
    tmp, g, _, _ = files
    code, out, _ = run(capsys, "run", "--graph", g, "--seed", 1, "--json")
    assert code == 0 and json.loads(out)["matching"] == [[1, 2]]
    m = tmp / "m.txt"
    m.write_text("0 1\n2 3\n")
    code, out, _ = run(capsys, "verify", "--graph", g, "--matching", m)
    assert code == 0 and out.strip() == "not greedy"
    prio = tmp / "prio.txt"
    prio.write_text("1 2\n")
    code, out, _ = run(capsys, "run", "--graph", g, "--tie-break", f"priority:{prio}", "--json")
    assert json.loads(out)["weight"] == "3/1"


def test_solvers(files, capsys):
    _, g, star, _ = files
    code, out, _ = run(capsys, "solve", "--graph", g, "--count", "--json")
    doc = json.loads(out)
    assert doc["opt_weight"] == "3/1" and doc["distinct_greedy_count"] == 1
    code, out, _ = run(capsys, "enumerate", "--graph", g, "--json")
    assert json.loads(out)["count"] == 1
    assert run(capsys, "decide-vertex", "--graph", g, "--vertex", 0)[1].strip() == "no"
    assert run(capsys, "decide-edge", "--graph", g, "--edge", "1,2")[1].startswith("yes")
    code, out, _ = run(capsys, "solve-poly", "--graph", star, "--json")
    assert json.loads(out)["opt_weight"] == "1/1"


def test_bush_commands(files, capsys):
    tmp, _, star, _ = files
    assert json.loads(run(capsys, "rgma-exact", "--graph", star, "--json")[1])["expected_weight"] == "1/1"
    code, out, _ = run(capsys, "rgma", "--graph", star, "--trials", 10, "--json")
    assert json.loads(out)["mean_weight"] == "1/1"
    order = tmp / "order.txt"
    order.write_text("0\n")
    out_file = tmp / "bush.txt"
    code, out, _ = run(capsys, "bush-decompose", "--graph", star, "--order", f"given:{order}", "--out", out_file, "--json")
    assert code == 0 and json.loads(out)["bushes"] == 1 and out_file.exists()
    code, out, _ = run(capsys, "mrg", "--graph", star, "--trials", 5, "--json")
    assert json.loads(out)["mean_size"] == "1/1"
    csv = tmp / "cmp.csv"
    code, out, _ = run(capsys, "compare", "--graph", star, "--trials", 20, "--csv", csv)
    assert code == 0 and csv.read_text() == out and "1/1" in out


def test_reduce_and_certify(files, capsys):
    tmp, _, _, cnf = files
    graph_out, roles_out, red = tmp / "red.txt", tmp / "roles.txt", tmp / "red"
    code, out, _ = run(capsys, "reduce", "--cnf", cnf, "--out", graph_out, "--roles", roles_out, "--dir", red, "--json")
    assert code == 0 and json.loads(out)["vertices"] == 12
    assert "role 4 alpha(1)" in roles_out.read_text()
    tau = tmp / "tau.txt"
    tau.write_text("1 0\n")
    m = tmp / "m.txt"
    code, out, _ = run(capsys, "certify", "--direction", "a2m", "--reduction", red, "--input", tau, "--out", m, "--json")
    assert code == 0 and json.loads(out)["weight"] == "15/1"
    code, out, _ = run(capsys, "certify", "--direction", "m2a", "--reduction", red, "--input", m, "--json")
    assert json.loads(out)["satisfied"] == 1
    r = build_main_reduction(CnfFormula(1, ((1,), (-1,))))
    assert graph_out.read_text() == format_graph(r.graph)


def test_experiment_and_params(files, capsys):
    tmp, g, _, _ = files
    cfg = tmp / "exp.cfg"
    cfg.write_text("seed = 2\ngenerator = small-bush\nalgorithms = rgma\ntrials = 10\ninstances = 2\n")
    code, out, _ = run(capsys, "experiment", "--config", cfg, "--out", tmp / "exp")
    assert code == 0 and (tmp / "exp" / "report.csv").exists() and (tmp / "exp" / "report.json").exists()
    doc = json.loads(run(capsys, "params", "--graph", g, "--json")[1])
    assert doc["lambda0"] == "3/2" and doc["mu"] == 1 and doc["bipartite"]


def test_exit_codes(files, capsys):
    tmp, g, _, _ = files
    assert run(capsys, "solve")[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "solve", "--graph", tmp / "missing.txt")[0] == 2
    bad = tmp / "bad.txt"
    bad.write_text("graph 2\n0 1 0.5\n")
    code, _, err = run(capsys, "solve", "--graph", bad)
    assert code == 2 and "line 2" in err
    big = tmp / "big.txt"
    big.write_text(format_graph(path(*([1] * 30))))
    code, _, err = run(capsys, "solve", "--graph", big, "--budget", 1)
    assert code == 3 and "lower bound" in err
    assert run(capsys, "enumerate", "--graph", big, "--limit", 2)[0] == 3
