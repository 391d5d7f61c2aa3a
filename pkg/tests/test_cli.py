import json

import pytest

from quadgkm.cli import main
from quadgkm.graph_cohomology import make_M
from quadgkm.quadric_graph import build


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_graph_dot(capsys):
    code, out, _ = run(capsys, "graph", "--n", "2", "--format", "dot")
    assert code == 0
    assert out.count("--") == 12
    assert out.count('[label="') == 18


def test_graph_json(capsys):
    code, out, _ = run(capsys, "graph", "--n", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["valid"]
    assert data["f"] == {"1": "-x3", "2": "x1 - x3", "3": "x2 - x3",
                         "4": "0", "5": "-x1 + x2", "6": "x2"}


@pytest.mark.parametrize("argv", [
    ["graph", "--n", "0"],
    ["graph", "--n", "two"],
    ["hilbert", "--n", "2", "--max-d", "-1"],
    ["frobnicate", "--n", "2"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_product_needs_sets(capsys):
    code, _, err = run(capsys, "product", "--n", "2", "--K", "2,3,6")
    assert code == 2 and "--H" in err
    code, _, _ = run(capsys, "product", "--n", "2", "--K", "1,6,2", "--H", "3,5,6")
    assert code == 2


def test_product(capsys):
    code, out, _ = run(capsys, "product", "--n", "2", "--K", "2,3,6", "--H", "3,5,6")
    assert code == 0
    assert "equal: true" in out
    assert "(M_1 + M_4 - X)" in out


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--roundtrips", "20")
    assert code == 0
    assert "FAIL" not in out and "all suites passed" in out


def test_verify_detects_flipped_sign(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--flip-sign", "1,5", "--roundtrips", "0")
    assert code == 1
    assert "[FAIL] graph lemmas" in out
    assert "(1, 5)" in out


def test_verify_json_deterministic(capsys):
    first = run(capsys, "verify", "--n", "2", "--seed", "3", "--roundtrips", "10", "--format", "json")[1]
    second = run(capsys, "verify", "--n", "2", "--seed", "3", "--roundtrips", "10", "--format", "json")[1]
    assert first == second and json.loads(first)["ok"]


def test_graph_rejects_non_edge(capsys):
    code, _, _ = run(capsys, "graph", "--n", "2", "--flip-sign", "1,6")
    assert code == 2


def test_reduce(tmp_path, capsys):
    g = build(2)
    f = tmp_path / "m1.json"
    f.write_text(json.dumps(make_M(g, 1).to_json()))
    code, out, _ = run(capsys, "reduce", "--n", "2", str(f))
    assert code == 0
    assert json.loads(out)["g_poly"] == ["0", "1", "0"]

    const = tmp_path / "x1.json"
    const.write_text(json.dumps({"n": 2, "values": {str(v): "x1" for v in g.vertices}}))
    code, out, _ = run(capsys, "reduce", "--n", "2", str(const))
    assert json.loads(out)["g_poly"][0] == "x1"


def test_reduce_non_class(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"n": 2, "values": {"1": "x1"}}))
    code, _, err = run(capsys, "reduce", "--n", "2", str(f))
    assert code == 1
    assert "edge (1," in err


def test_reduce_bad_file(tmp_path, capsys):
    code, _, _ = run(capsys, "reduce", "--n", "2", str(tmp_path / "missing.json"))
    assert code == 2
    f = tmp_path / "wrong_n.json"
    f.write_text(json.dumps({"n": 3, "values": {"1": "x1"}}))
    assert run(capsys, "reduce", "--n", "2", str(f))[0] == 2


def test_hilbert(capsys):
    code, out, _ = run(capsys, "hilbert", "--n", "2", "--max-d", "4", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert [r["rank"] for r in data["ranks"]] == [1, 4, 11, 23, 41]
    assert all(r["rank"] == r["expected"] for r in data["ranks"])


def test_hilbert_csv(capsys, tmp_path):
    out_file = tmp_path / "ranks.csv"
    code, out, _ = run(capsys, "hilbert", "--n", "2", "--max-d", "2", "--format", "csv",
                       "--out", str(out_file))
    assert code == 0 and out == ""
    assert out_file.read_text().splitlines()[0] == "d,degree,rank,expected,torsion"


def test_ordinary(capsys):
    code, out, _ = run(capsys, "ordinary", "--n", "3")
    assert code == 0
    assert "Betti: (1, 1, 1, 2, 1, 1, 1)" in out
    assert "parity verdict: x^2 = 0" in out


def test_ordinary_json(capsys):
    code, out, _ = run(capsys, "ordinary", "--n", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert data["betti"] == [1, 1, 2, 1, 1]
    assert data["rewrite"]["3,5,6"]["to"] == [1, 2, 3]
