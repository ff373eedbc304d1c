import json
from fractions import Fraction

import pytest

from spinrank.cli import main
from spinrank.invariants import TableSource
from spinrank.multigraph import Multigraph
from spinrank.spin import SpinMatrix


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(path)

    return write


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_triangle_colourings(files, capsys):
    g = files("g.json", Multigraph.complete(3).to_json())
    a = files("a.json", SpinMatrix.colouring(3).to_json())
    assert run(capsys, "eval", "--graph", g, "--matrix", a) == (0, "6\n", "")
    assert run(capsys, "eval", "--graph", g, "--matrix", a, "--brute")[1] == "6\n"
    assert run(capsys, "eval", "--graph", g, "--matrix", a, "--order", "3,1,2")[1] == "6\n"


def test_eval_empty_graph_and_complex_output(files, capsys):
    g = files("g.json", {"vertices": 0, "edges": []})
    a = files("a.json", {"n": 2, "entries": [["1i", "2"], ["2", "1/3"]]})
    assert run(capsys, "eval", "--graph", g, "--matrix", a)[1] == "1\n"
    loop = files("loop.json", {"vertices": 1, "edges": [[1, 1, 1]]})
    assert run(capsys, "eval", "--graph", loop, "--matrix", a)[1] == "1/3+1i\n"


def test_malformed_json_is_input_error(files, capsys):
    bad = files("bad.json", '{"vertices": 2, "edges": [[1, 2, 1]')
    a = files("a.json", SpinMatrix.identity(2).to_json())
    code, out, err = run(capsys, "eval", "--graph", bad, "--matrix", a)
    assert code == 2 and out == ""
    assert "line 1 column" in err


def test_invalid_inputs_are_input_errors(files, capsys):
    a = files("a.json", SpinMatrix.identity(2).to_json())
    out_of_range = files("g.json", {"vertices": 2, "edges": [[1, 3, 1]]})
    assert run(capsys, "eval", "--graph", out_of_range, "--matrix", a)[0] == 2
    asym = files("asym.json", {"n": 2, "entries": [["1", "2"], ["3", "1"]]})
    g = files("g2.json", Multigraph.path(2).to_json())
    assert run(capsys, "eval", "--graph", g, "--matrix", asym)[0] == 2
    assert run(capsys, "eval", "--graph", g, "--matrix", a, "--order", "1,x")[0] == 2
    assert run(capsys, "eval", "--graph", g, "--matrix", a, "--order", "1")[0] == 2
    assert run(capsys, "eval", "--graph", g, "--matrix", files("none.json", "x") + ".missing")[0] == 2
    assert run(capsys, "lattice", "--n", "2", "--x", "1/0")[0] == 2
    assert run(capsys, "rank", "--matrix", a, "--k", "-1")[0] == 2


def test_rank_examples(files, capsys):
    i2 = files("i2.json", SpinMatrix.identity(2).to_json())
    code, out, _ = run(capsys, "rank", "--matrix", i2, "--k", "1")
    report = json.loads(out)
    assert code == 0 and report["rank"] <= 2 and report["bound_nk"] == 2 and report["factorization_ok"]
    one = files("one.json", {"n": 1, "entries": [["1"]]})
    assert json.loads(run(capsys, "rank", "--matrix", one, "--k", "2")[1])["rank"] == 1
    table = files("t.json", TableSource.tabulate(lambda g: 3**g.vertex_count, 4, 4).to_json())
    assert json.loads(run(capsys, "rank", "--table", table, "--k", "0")[1])["rank"] == 1


def test_rank_table_coverage_gap_lists_keys(files, capsys):
    table = files("t.json", {"0/": "1", "1/0": "1"})
    code, _, err = run(capsys, "rank", "--table", table, "--k", "0", "--max-vertices", "1", "--max-edges", "0")
    assert code == 2 and "2/0,0,0" in err


def test_lattice_examples(capsys):
    out = json.loads(run(capsys, "lattice", "--n", "2", "--x", "1")[1])
    assert out["det_p_matrix"] == "0"
    assert out["moebius"] == [["1", "-1"], ["0", "1"]]
    assert out["partitions"] == ["01", "00"]
    assert out["diagonalization"]["passed"]
    out = json.loads(run(capsys, "lattice", "--n", "3", "--x", "3")[1])
    assert out["det_p_matrix"] != "0"


def test_algebra_examples(capsys):
    for k in (1, 2):
        out = json.loads(run(capsys, "algebra", "--k", k)[1])
        assert out["b_idempotent"]
    out = json.loads(run(capsys, "algebra", "--k", "4")[1])
    assert out["convolution_identity"] == {"targets": 15, "failures": []}
    assert out["np_join_law"]["failures"] == []


def test_guard_exit_code(capsys):
    code, _, err = run(capsys, "lattice", "--n", "12")
    assert code == 3 and "resource guard" in err


def test_check_exit_codes(files, capsys):
    i2 = files("i2.json", SpinMatrix.identity(2).to_json())
    code, out, _ = run(capsys, "check", "--matrix", i2, "--json")
    assert code == 0 and json.loads(out)["verdict"] == "consistent-up-to"
    half = files("half.json", TableSource.tabulate(lambda g: Fraction(1, 2) ** g.vertex_count, 4, 3).to_json())
    code, out, _ = run(capsys, "check", "--table", half, "--json")
    assert code == 1 and json.loads(out)["verdict"] == "violation"
    code, out, _ = run(capsys, "check", "--table", half)
    assert code == 1 and "moebius" in out


def test_threads_flag_matches_serial(files, capsys, monkeypatch):
    monkeypatch.delenv("SPINRANK_THREADS", raising=False)
    i2 = files("i2.json", SpinMatrix.identity(2).to_json())
    serial = run(capsys, "--threads", "1", "rank", "--matrix", i2, "--k", "1")
    parallel = run(capsys, "--threads", "2", "rank", "--matrix", i2, "--k", "1")
    assert serial == parallel
