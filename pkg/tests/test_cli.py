import json
import subprocess
import sys

import pytest

from nilgraph.cli import run
from nilgraph.graph import from_json


def test_graph_dot_s4(tmp_path, capsys):
    assert run(["graph", "--group", "S4", "--format", "dot"]) == 0
    out = capsys.readouterr().out
    nodes = set()
    for line in out.splitlines():
        if "--" in line:
            a, b = line.strip().rstrip(";").split(" -- ")
            nodes |= {a, b}
    assert len(nodes) == 23


def test_graph_json_to_file(tmp_path):
    out = tmp_path / "s3.json"
    assert run(["graph", "--group", "S3", "--format", "json", "--out", str(out)]) == 0
    g = from_json(out.read_text())
    assert g.n == 5 and g.n_edges == 9


def test_graph_all_vertices(capsys):
    assert run(["graph", "--group", "C2xS3", "--format", "json", "--all-vertices"]) == 0
    assert json.loads(capsys.readouterr().out)["n_vertices"] == 12


def test_verify_joint_cycles(capsys):
    assert run(["verify", "--suite", "joint-cycles", "--n", "6"]) == 0
    assert capsys.readouterr().out.strip().endswith("PASS")


def test_verify_json(capsys):
    assert run(["verify", "--suite", "degree-example", "--format", "json"]) == 0
    (res,) = json.loads(capsys.readouterr().out)
    assert res["ok"] and res["data"]["degree"] == 8


def test_embed_path(tmp_path, capsys):
    f = tmp_path / "path3.edges"
    f.write_text("3\n1 2\n2 3\n")
    assert run(["embed", "--input", str(f), "--verify"]) == 0
    out = capsys.readouterr().out
    assert "verified" in out and "transcript only" in out


def test_embed_json_input_materialized(tmp_path, capsys):
    f = tmp_path / "edge.json"
    f.write_text(json.dumps({"group": "", "n_vertices": 2, "vertices": ["a", "b"], "edges": [[0, 1]]}))
    assert run(["embed", "--input", str(f), "--verify", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["ok"] and data["materialized"] and data["order"] == "50"


def test_embed_symmetric_check(tmp_path, capsys):
    f = tmp_path / "two.edges"
    f.write_text("2\n")
    assert run(["embed", "--input", str(f), "--verify", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["symmetric"] is True


def test_embed_tower_json(tmp_path, capsys):
    f = tmp_path / "k3.edges"
    f.write_text("3\n1 2\n1 3\n2 3\n")
    assert run(["embed", "--input", str(f), "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [lv["p"] for lv in data["levels"]] == [2, 5, 13]


def test_random_requires_seed(capsys):
    assert run(["random", "--n", "7", "--samples", "100"]) == 2
    assert "--seed" in capsys.readouterr().err


def test_random_is_reproducible(capsys):
    argv = ["random", "--n", "8", "--perm", "(1 2 3)", "--samples", "1500", "--seed", "3", "--format", "json"]
    assert run(argv) == 0
    first = json.loads(capsys.readouterr().out)
    assert run(argv + ["--workers", "2"]) == 0
    assert json.loads(capsys.readouterr().out) == first


def test_ledger_and_count(capsys):
    assert run(["ledger", "--n", "9"]) == 0
    assert "z | 15 - 1 = 14" in capsys.readouterr().out
    assert run(["ledger", "--n", "12", "--kind", "A", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["certified"]
    assert run(["count", "--n", "7", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)["rows"]
    assert {"type": "2+2+3", "count": 48, "count_alternating": 12, "even": True} in rows


def test_degrees(capsys):
    assert run(["degrees", "--n", "4", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["holds"] is False
    assert run(["degrees", "--group", "S3"]) == 0


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["nonsense"],
        ["graph"],
        ["graph", "--group", "Q8"],
        ["graph", "--group", "S9", "--budget", "1000"],
        ["verify", "--suite", "nope"],
        ["count", "--format", "dot", "--n", "5"],
        ["embed", "--input", "/nonexistent/file"],
        ["ledger", "--n", "2"],
    ],
)
def test_usage_errors(argv):
    assert run(argv) == 2


def test_console_script():
    res = subprocess.run(
        [sys.executable, "-m", "nilgraph.cli", "ledger", "--n", "10"], capture_output=True, text=True
    )
    assert res.returncode == 0 and "z = 1" in res.stdout
