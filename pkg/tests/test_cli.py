import json
import math

import pytest

from hypgraft.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hexagon_solve_json(capsys):
    code, out, _ = run(capsys, "hexagon", "solve", "1,1,1")
    d = json.loads(out)
    assert code == 0 and d["schema"] == 1
    assert d["determined"][0] == pytest.approx(1.70491283235801369, rel=1e-12)


def test_hexagon_necks_csv(capsys):
    code, out, _ = run(capsys, "hexagon", "necks", "1,2,1", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "label,kind,length" and len(lines) == 10


def test_hexagon_map(capsys):
    code, out, _ = run(capsys, "hexagon", "map", "0.5,3,3", "2,3,3")
    assert code == 0 and json.loads(out)["K"] > 1


def test_pants_with_cusp(capsys):
    code, out, _ = run(capsys, "pants", "1,0,2")
    d = json.loads(out)
    assert code == 0 and d["seams"][0] == "inf" and d["collars"][1]["kind"] == "cusp"


def test_graft_infinite(capsys):
    code, out, _ = run(capsys, "graft", "0.5", "inf")
    d = json.loads(out)
    assert code == 0 and d["L"] == "inf" and d["cusp"] is True


def test_flow_trace_csv(capsys):
    code, out, _ = run(capsys, "flow", "trace", "--length", "0.05", "--steps", "3", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "t,curve,L_t,R_I,R_II,Delta_I,Delta_II,delta_I"
    assert lines[-1].split(",")[2] == "inf"


def test_chabauty_needs_seed(capsys, monkeypatch):
    monkeypatch.delenv("HYPGRAFT_SEED", raising=False)
    code, _, err = run(capsys, "chabauty", "run", "k_to_K", "--steps", "3")
    assert code == 64 and "seed" in err
    monkeypatch.setenv("HYPGRAFT_SEED", "7")
    code, out, _ = run(capsys, "chabauty", "run", "k_to_K", "--steps", "3")
    d = json.loads(out)
    assert code == 0 and d["seed"] == 7 and len(d["distances"]) == 3


def test_chabauty_classify(capsys):
    code, out, _ = run(capsys, "chabauty", "classify", "2,0,0,0.5")
    d = json.loads(out)
    assert code == 0 and d["kind"] == "hyperbolic" and d["axis"] == [0.0, "inf"]
    assert d["translation_length"] == pytest.approx(2 * math.log(2))
    code, _, _ = run(capsys, "chabauty", "classify", "1,0,0,-1")
    assert code == 2


def test_lens(capsys):
    code, out, _ = run(capsys, "lens", "--orders", "2,3,inf")
    assert code == 0 and out.splitlines()[0] == "L(1,1) ≅ S^3" and "pi1 order: 1" in out
    code, out, _ = run(capsys, "lens", "--orders", "3,4,inf", "--format", "json")
    assert json.loads(out)["space"] == "L(5,2)"


@pytest.mark.parametrize("argv,expected", [
    (["lens", "--orders", "2,2,inf"], 2),
    (["lens", "--orders", "2,3,7"], 2),
    (["hexagon", "solve", "0,1,1"], 2),
    (["hexagon", "solve", "-1,1,1"], 64),
    (["hexagon", "solve", "1,2"], 64),
    (["nonsense"], 64),
    ([], 64),
    (["chabauty", "run", "nope", "--seed", "1"], 64),
])
def test_exit_codes(capsys, argv, expected):
    code, _, _ = run(capsys, *argv)
    assert code == expected


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "selftest" in out


def test_selftest_json(capsys):
    code, out, _ = run(capsys, "selftest", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["passed"] and len(d["checks"]) == 11
