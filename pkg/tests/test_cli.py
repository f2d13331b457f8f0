import json
import subprocess
import sys

import pytest

from twrgraph.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hypothesis_q4(capsys):
    code, out, _ = run(capsys, "hypothesis", "--q", "4", "--json")
    assert code == 0
    d = json.loads(out)
    assert d["status"] == "pass" and d["p"] == 2 and d["m"] == 2


def test_hypothesis_q9(capsys):
    code, out, _ = run(capsys, "hypothesis", "--q", "9")
    d = json.loads(out)
    assert code == 0 and (d["p"], d["m"]) == (3, 2)
    assert d["metadata"]["modulus_str"] == "x^2 + 1"


@pytest.mark.parametrize("argv", [["hypothesis", "--q", "6"], ["hypothesis", "--q", "3"],
                                  ["hypothesis"], ["nonsense"], ["verify-graph", "--q", "11"],
                                  ["ball", "--q", "4", "--radius", "2", "--dot", "x.dot"],
                                  ["verify-graph", "--q", "4", "--threads", "0"]])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_verify_graph_q4(capsys):
    code, out, _ = run(capsys, "verify-graph", "--q", "4", "--json")
    d = json.loads(out)
    assert code == 0 and d["status"] == "pass" and d["first_failure"] is None
    names = [c["name"] for c in d["checks"]]
    order = ["hypothesis", "RQ isomorphic to P", "R not centralised by V ker(phi)",
             "valency and bipartite at u", "two-arc transitive at u", "two-arc transitive at v",
             "star quotient", "block action of type HS", "Pi block property", "connectivity"]
    assert [n for n in names if n in order] == order
    conn = d["checks"][-1]
    assert conn["detail"]["basis"] == "theory-backed"


def test_verify_graph_q5(capsys):
    code, out, _ = run(capsys, "verify-graph", "--q", "5", "--json")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_inject_fault(capsys):
    code, out, _ = run(capsys, "verify-graph", "--q", "4", "--inject-fault", "--json")
    d = json.loads(out)
    assert code == 1
    assert d["first_failure"] == "R normalised by Q"


def test_report_written_to_file(tmp_path, capsys):
    path = tmp_path / "rep.json"
    code, out, _ = run(capsys, "hypothesis", "--q", "5", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["q"] == 5


def test_determinism_across_threads(tmp_path, capsys):
    outs = []
    for threads in ("1", "1", "4"):
        code, out, _ = run(capsys, "verify-graph", "--q", "4", "--json", "--threads", threads)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1] == outs[2]


def test_timings_flag_adds_elapsed(capsys):
    code, out, _ = run(capsys, "verify-graph", "--q", "4", "--json", "--timings")
    assert code == 0 and "elapsed_s" in out
    _, plain, _ = run(capsys, "verify-graph", "--q", "4", "--json")
    assert "elapsed_s" not in plain


def test_catalog_dump(capsys):
    code, out, _ = run(capsys, "catalog", "--q", "5")
    d = json.loads(out)
    assert code == 0
    assert d["orders"] == {"P": 3000, "Q": 120, "T": 60}
    assert d["hypothesis"]["ok"]


def test_construct_r(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, _, _ = run(capsys, "construct-r", "--q", "4", "--out", str(path))
    d = json.loads(path.read_text())
    assert code == 0
    assert len(d["u"]) == 15 and len(d["R_basis"]) == 4
    assert all(c["status"] == "pass" for c in d["checks"])
    assert d["metadata"]["seed"] == 0x5EED


def test_ball_export(tmp_path, capsys):
    path, dot = tmp_path / "b.jsonl", tmp_path / "b.dot"
    code, _, err = run(capsys, "ball", "--q", "4", "--side", "right", "--radius", "1",
                       "--out", str(path), "--dot", str(dot))
    assert code == 0
    lines = [json.loads(s) for s in path.read_text().splitlines()]
    assert len(lines) == 17
    assert lines[0]["side"] == "right" and len(lines[0]["neighbors"]) == 16
    assert all(rec["side"] == "left" for rec in lines[1:])
    assert dot.read_text().count("--") == 16
    assert json.loads(err)["vertices"] == 17


def test_ball_radius2_stdout(capsys):
    code, out, _ = run(capsys, "ball", "--q", "4", "--radius", "2")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 257


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "twrgraph", "hypothesis", "--q", "6"],
                         capture_output=True, text=True)
    assert res.returncode == 2
    assert "not a prime power" in res.stderr


def test_remark_command(capsys):
    code, out, _ = run(capsys, "remark-asl52", "--json")
    d = json.loads(out)
    assert code == 0 and d["hom_dim"] == 0 and d["W_dim"] == 124
