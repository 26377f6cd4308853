import json

import pytest

from symprog import cli, verify
from symprog.core import SpaceParams, SymmetricSet
from symprog.generate import generate_random_set, point_density


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_restricted_example(capsys):
    assert run(capsys, "count", "restricted", "--q", "3", "--n", "6", "--arrangement", "[[2,2,2],[2,2,2],[2,2,2]]") == (0, "900\n", "")


def test_count_full(capsys):
    code, out, _ = run(capsys, "count", "full", "--p", "3", "--n", "2", "--arrangement", "[[1,1,0],[1,1,0],[1,1,0]]")
    assert (code, out) == (0, "2\n")


def test_feasible_enumerate_example(capsys):
    assert run(capsys, "feasible", "enumerate", "--q", "3", "--N", "5", "--count-only")[:2] == (0, "625\n")


def test_feasible_check_and_derive(capsys):
    assert run(capsys, "feasible", "check", "--arrangement", "[[2,2,2],[2,2,2],[1,3,2]]")[1] == "infeasible\n"
    assert run(capsys, "feasible", "check", "--N", "5", "--arrangement", "[[1,0],[0,1],[0,0]]")[1] == "feasible\n"
    code, out, _ = run(capsys, "feasible", "derive", "--w1", "1,0", "--w2", "0,1")
    assert json.loads(out) == [[1, 0], [0, 1], [0, 0]]


def test_parse_errors_exit_2(capsys):
    assert run(capsys, "count", "restricted", "--q", "3", "--arrangement", "[[2,2")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "oracle", "--sets", "/nonexistent.json")[0] == 2
    assert run(capsys, "modp", "solvable", "--p", "4", "--w", "0,0")[0] == 2
    assert run(capsys, "generate", "--q", "3", "--n", "4", "--density", "1.5")[0] == 2


def test_budget_refusal_exit_3(capsys, monkeypatch):
    assert run(capsys, "--budget", "10", "feasible", "enumerate", "--q", "3", "--N", "5", "--count-only")[0] == 3
    monkeypatch.setenv("SYMPROG_BUDGET", "10")
    code, out, err = run(capsys, "feasible", "enumerate", "--q", "3", "--N", "5", "--count-only")
    assert code == 3 and out == "" and "budget" in err
    assert run(capsys, "--budget", "0", "feasible", "enumerate", "--q", "3", "--N", "5")[0] == 2


def test_verify_failure_exit_1(capsys, monkeypatch):
    def broken(tier):
        verify._require(False, "counterexample: w = (1, 0)")

    monkeypatch.setattr(verify, "CHECKS", [(1, "broken check", broken)])
    code, out, _ = run(capsys, "verify", "all")
    assert code == 1
    assert "[FAIL]" in out and "counterexample: w = (1, 0)" in out


def test_verify_quick_passes(capsys):
    code, out, _ = run(capsys, "verify", "all", "--tier", "quick")
    assert code == 0
    assert out.count("[PASS]") == 10


def write_sets(tmp_path, sets, name="sets.json"):
    path = tmp_path / name
    path.write_text(json.dumps([s.to_json() for s in sets]))
    return str(path)


def test_oracle_and_product_agree(tmp_path, capsys):
    sets = [generate_random_set(3, 5, 0.6, s) for s in range(3)]
    path = write_sets(tmp_path, sets)
    oc, ocsv = tmp_path / "o.csv", tmp_path / "c.csv"
    _, out1, _ = run(capsys, "oracle", "--sets", path, "--csv", str(oc))
    _, out2, _ = run(capsys, "count", "product", "--sets", path, "--csv", str(ocsv))
    assert out1 == out2
    raw = oc.read_bytes()
    assert raw == ocsv.read_bytes()
    assert raw.startswith(b"arrangement,count\n") and b"\r" not in raw


def test_generate_is_deterministic(capsys):
    _, a, _ = run(capsys, "generate", "--q", "3", "--n", "7", "--density", "0.4", "--seed", "11")
    _, b, _ = run(capsys, "generate", "--q", "3", "--n", "7", "--density", "0.4", "--seed", "11")
    assert a == b
    obj = json.loads(a)
    s = SymmetricSet.from_json(obj)
    assert obj["point_density"] == str(point_density(s))


def test_generate_extremes():
    p = SpaceParams(3, 5)
    assert generate_random_set(3, 5, 1, 0) == SymmetricSet.full(p)
    assert len(generate_random_set(3, 5, 0, 0)) == 0


def test_modp_outputs(tmp_path, capsys):
    code, out, _ = run(capsys, "modp", "matrices", "--p", "3", "--emit", "json")
    m = json.loads(out)
    assert code == 0 and len(m["A"]) == 6 and len(m["B"]) == 8
    assert run(capsys, "modp", "solvable", "--p", "3", "--w", "1,0,0,0,0,0")[1] == "unsolvable\n"
    sets = [generate_random_set(3, 4, 0.7, s) for s in range(3)]
    path = write_sets(tmp_path, sets)
    code, out, _ = run(capsys, "modp", "removal", "--sets", path, "--mu", "1/10")
    rep = json.loads(out)
    assert code == 0 and rep["threshold"] == "1/180"
    code, out, _ = run(capsys, "modp", "split", "--sets", path)
    assert code == 0 and len(json.loads(out)["sets"]) == 3


def test_encode_outputs(tmp_path, capsys):
    r = tmp_path / "r.json"
    r.write_text(json.dumps([[0, 0]]))
    code, out, _ = run(capsys, "encode", "triangles", "--N", "1", "--set", str(r))
    assert code == 0 and int(out) >= 9
    rs = tmp_path / "rs.json"
    rs.write_text(json.dumps([[[1, 2]], [[3, 4]], [[1, 2]]]))
    csv_path = tmp_path / "h.csv"
    code, out, _ = run(capsys, "encode", "simplices", "--q", "3", "--N", "5", "--sets", str(rs), "--csv", str(csv_path))
    assert code == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "label,simplices"
    assert int(out) == sum(int(l.split(",")[1]) for l in lines[1:])


def test_clt_outputs(capsys):
    code, out, _ = run(capsys, "clt", "compare", "--ell", "2", "--n", "6", "--w", "2,2")
    lines = out.splitlines()
    assert lines[0] == "n,w,exact,leading,rel_err"
    assert lines[1].split(",")[2] == "10/81"
    _, out, _ = run(capsys, "clt", "scan", "--ell", "2", "--ns", "300,30000", "--radius", "0", "--digits", "10")
    assert "e-" not in out and "E" not in out
