import pytest

from nilgraph import checks
from nilgraph.cli import run


@pytest.mark.parametrize(
    "name,params",
    [
        ("degree-example", {}),
        ("multipartite", {}),
        ("hypercenter", {"max_order": 60}),
        ("partner-counts", {"n": 5}),
        ("prime-sums", {"limit": 500}),
        ("ledgers", {"n_max": 20}),
        ("degree-bounds", {}),
        ("joint-cycles", {"n": 6}),
        ("partition-invariance", {"n": 6}),
        ("cycle-ratios", {"n": 5}),
        ("prime-order-degrees", {"n": 5}),
        ("embedding", {"k_full": 2, "k_transcript": 4}),
        ("diameter", {"max_order": 60}),
    ],
)
def test_suites_pass(name, params):
    res = checks.run_suite(name, **params)
    assert res.ok, res.to_text()
    assert res.to_dict()["suite"] == name


def test_every_suite_is_listed():
    assert len(checks.SUITES) == 13


def test_unknown_suite():
    with pytest.raises(KeyError):
        checks.run_suite("nope")


def test_failed_check_is_reported():
    res = checks.SuiteResult("x")
    assert not res.check(False, "broken")
    assert not res.ok and res.to_text().endswith("FAIL")


def test_cli_exit_one_on_failure(monkeypatch, capsys):
    def broken(**_):
        res = checks.SuiteResult("degree-example")
        res.check(False, "forced")
        return res

    monkeypatch.setitem(checks.SUITES, "degree-example", broken)
    assert run(["verify", "--suite", "degree-example"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_all_graphs_counts():
    assert [sum(1 for _ in checks.all_graphs(k)) for k in range(1, 5)] == [1, 2, 8, 64]
