import json

import pytest

from hessbetti import cli
from hessbetti.errors import InvariantViolation


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("j,profile", [("all", "1,2,1"), ("none", "1,4,1"), ("1", "1,3,1"),
                                       ("2", "1,3,1")])
def test_betti_peterson(capsys, j, profile):
    code, out, _ = run(capsys, "betti", "A2", "--hess", "afunc:2,3,3", "--j", j)
    assert code == 0
    assert f"profile: {profile}" in out
    assert "palindromic: yes" in out


def test_betti_borel(capsys):
    code, out, _ = run(capsys, "betti", "A2", "--hess", "borel", "--j", "all")
    assert code == 0 and "profile: 1\n" in out and "irreducible: no" in out


def test_betti_json(capsys):
    code, out, _ = run(capsys, "betti", "A2", "--hess", "full", "--j", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["counts"] == [1, 2, 2, 1]
    assert doc["poincare"] == "1 + 2q^2 + 2q^4 + q^6"
    assert doc["hess"]["neg_roots"] == [[-1, -1], [-1, 0], [0, -1]]
    assert doc["j"] == [1] and doc["m_h"] == 3 and doc["irreducible"] is True


@pytest.mark.parametrize("arg", ["height:1", "roots:[[-1,0],[0,-1]]", "afunc:2,3,3"])
def test_hess_spellings_agree(capsys, arg):
    code, out, _ = run(capsys, "betti", "A2", "--hess", arg, "--format", "json")
    assert code == 0 and json.loads(out)["hess"]["neg_roots"] == [[-1, 0], [0, -1]]


def test_weyl_type_full(capsys):
    code, out, _ = run(capsys, "weyl-type", "A2", "--hess", "full", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and len(doc["subsets"]) == 6
    assert sorted(map(tuple, (r["representative"] for r in doc["subsets"]))) == sorted(
        [(), (1,), (2,), (1, 2), (2, 1), (1, 2, 1)])


def test_weyl_type_borel_and_peterson(capsys):
    _, out, _ = run(capsys, "weyl-type", "A2", "--hess", "borel", "--format", "json")
    assert [r["subset"] for r in json.loads(out)["subsets"]] == [[]]
    _, out, _ = run(capsys, "weyl-type", "A2", "--hess", "afunc:2,3,3", "--j", "1",
                    "--format", "json")
    rows = json.loads(out)["subsets"]
    assert len(rows) == 4
    by_size = [0, 0, 0]
    for r in rows:
        by_size[r["size"]] += r["block_size"]
    assert by_size == [1, 3, 1]


def test_bijection_table(capsys):
    code, out, _ = run(capsys, "bijection", "A2", "--hess", "afunc:2,3,3", "--j", "1",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["k"] == [2]
    pairs = {tuple(p["w"]): tuple(p["w_bar"]) for b in doc["blocks"] for p in b["pairs"]}
    assert pairs[(1,)] == (1, 2)
    assert pairs[(2, 1)] == (2,)
    assert pairs[()] == (1, 2, 1)


def test_bijection_rank_one(capsys):
    code, out, _ = run(capsys, "bijection", "A1", "--hess", "full", "--format", "json")
    pairs = {tuple(p["w"]): tuple(p["w_bar"]) for b in json.loads(out)["blocks"] for p in b["pairs"]}
    assert code == 0 and pairs == {(): (1,), (1,): ()}


def test_bijection_full_j_matches_nilpotent_complement(capsys):
    code, out, _ = run(capsys, "bijection", "B3", "--hess", "height:2", "--j", "all")
    assert code == 0 and "pairs" in out


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "A2", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert [r["vector"] for r in doc["roots"]] == [[-1, -1], [0, -1], [-1, 0], [1, 0], [0, 1], [1, 1]]


def test_out_file(capsys, tmp_path):
    target = tmp_path / "report.txt"
    code, out, _ = run(capsys, "betti", "A2", "--out", str(target))
    assert code == 0 and out == "" and "profile: 1,2,2,1" in target.read_text()


@pytest.mark.parametrize("argv", [
    ["betti", "A0"], ["betti", "X3"], ["betti", "A2", "--hess", "roots:[[-1,-1]]"],
    ["betti", "A2", "--hess", "afunc:3,2,3"], ["betti", "A2", "--j", "4"],
    ["betti", "A2", "--hess", "sideways"], ["betti", "B2", "--hess", "afunc:2,2"],
    ["verify", "--types", "Q"],
])
def test_parse_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == "" and "error" in err


def test_usage_error_exit_1(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["betti"])
    assert info.value.code == 1


def test_budget_exit_2(capsys):
    code, _, err = run(capsys, "betti", "F4", "--max-order", "100")
    assert code == 2 and "cap" in err


def test_invariant_exit_3(capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise InvariantViolation("forced")
    monkeypatch.setattr(cli, "betti_profile", broken)
    code, _, err = run(capsys, "betti", "A2")
    assert code == 3 and "forced" in err


def test_verify_violation_exit_3(capsys, monkeypatch):
    def fake(systems, **kwargs):
        return {"schema_version": 1, "tool_version": "x", "systems": [], "case_count": 0,
                "check_count": 1, "violations": [{"check": "palindromic", "system": "A1"}],
                "ok": False, "records": []}
    monkeypatch.setattr(cli, "run_sweep", fake)
    code, out, _ = run(capsys, "verify", "--max-rank", "1")
    assert code == 3 and "VIOLATION" in out and out.rstrip().endswith("FAIL")


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--max-rank", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["ok"]
    assert doc["config"]["systems"] == ["A1", "A2", "B2", "G2"]
    assert doc["case_count"] == 2 * 2 + 5 * 4 + 6 * 4 + 8 * 4


def test_verify_type_filter(capsys):
    code, out, _ = run(capsys, "verify", "--types", "G", "--max-rank", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and [s["system"] for s in doc["systems"]] == ["G2"]
    assert doc["systems"][0]["weyl_order"] == 12


def test_verify_rank3_includes_c3(capsys):
    code, out, _ = run(capsys, "verify", "--max-rank", "3", "--types", "C")
    assert code == 0 and "C3:" in out and out.rstrip().endswith("PASS")
