import io
import json
from fractions import Fraction
from importlib.resources import files

import pytest

from gjcluster import cli

SAMPLES = files("gjcluster") / "samples"


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_asc_table_last_row():
    code, text = run("tables", "--name", "asc", "--n", "9")
    assert code == 0
    assert text.splitlines()[-1].split(None, 1)[1] == "1 + 133*t + 451*t^2 + 235*t^3 + 15*t^4"


def test_parity_tables():
    _, text = run("tables", "--name", "asc-parity", "--n", "10", "--format", "json")
    doc = json.loads(text)
    got = {s["name"]: [int(r["terms"][0]["coeff"]) for r in s["rows"]] for s in doc["series"]}
    assert got["asc-E"] == [1, 1, 1, 1, 2, 5, 12, 27, 60, 135, 309]
    assert got["asc-O"] == [1, 1, 2, 4, 8, 16, 33, 70, 152, 336, 754]
    _, text = run("tables", "--name", "pv-parity", "--n", "8", "--format", "json")
    last = {s["name"]: s["rows"][-1]["terms"][0]["coeff"] for s in json.loads(text)["series"]}
    assert last == {"pv-O-E0": "136", "pv-E0-O": "208", "pv-O-O": "137", "pv-E0-E0": "131"}


def test_misprint_cells_annotated():
    _, text = run("tables", "--name", "peak", "--n", "5")
    line = [ln for ln in text.splitlines() if ln.strip().startswith("4 ")][0]
    assert "4 + 4*t + t^2" in line and "misprinted" in line
    _, text = run("tables", "--name", "pv", "--n", "6")
    assert sum("misprinted" in ln for ln in text.splitlines()) == 1


def test_unknown_table(capsys):
    code, _ = run("tables", "--name", "humps")
    assert code == 2
    assert "unknown" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ("tables", "--name", "pv", "--n", "8"),
        ("tables", "--name", "pv-parity", "--n", "8"),
        ("series", "--name", "pv:O/E0", "--n", "8"),
        ("series", "--name", "asc", "--t", "1/2", "--n", "6"),
        ("network", "--file", str(SAMPLES / "coin_flip.json"), "--avoid", "ab", "--prob", "--n", "6"),
        ("network", "--file", str(SAMPLES / "two_vertex.json"), "--entry", "1,2", "--n", "7"),
    ],
)
def test_renderings_round_trip(argv):
    data = {}
    for fmt in ("plain", "csv", "json"):
        code, text = run(*argv, "--format", fmt)
        assert code == 0
        data[fmt] = cli.normalize(cli.parse_rendering(text, fmt))
        # determinism
        assert run(*argv, "--format", fmt)[1] == text
    assert data["plain"] == data["csv"] == data["json"]
    assert data["plain"]


def test_series_routes_agree():
    outs = {r: run("series", "--name", "plt1", "--route", r, "--n", "10")[1] for r in cli.ROUTES}
    assert len(set(outs.values())) == 1


def test_series_t_assignment():
    _, text = run("series", "--name", "pv", "--t", "t1=1,t2=1", "--n", "8", "--format", "json")
    coeffs = [int(r["terms"][0]["coeff"]) for r in json.loads(text)["series"][0]["rows"]]
    assert coeffs == [1, 1, 2, 4, 9, 21, 51, 127, 323]
    code, _ = run("series", "--name", "pv", "--t", "t1=1")
    assert code == 2


def test_series_lattice_and_restricted():
    _, text = run("series", "--name", "schroeder", "--n", "8", "--format", "json")
    coeffs = [r["terms"][0]["coeff"] if r["terms"] else "0" for r in json.loads(text)["series"][0]["rows"]]
    assert coeffs == ["1", "0", "2", "0", "6", "0", "22", "0", "90"]
    _, text = run("series", "--name", "asc-start:", "--n", "5")
    assert [ln.split()[1] for ln in text.splitlines()[1:]] == ["1"] * 6


def test_network_worked_example_t0():
    _, text = run("network", "--file", str(SAMPLES / "two_vertex.json"), "--entry", "1,2", "--t", "0", "--n", "8")
    vals = [int(ln.split()[1]) for ln in text.splitlines()[1:]]
    # (2x - x^2 + x^4) = F * (1 - x - 3x^2 + 2x^3 - x^5)
    den = [1, -1, -3, 2, 0, -1]
    prod = [sum(den[j] * vals[n - j] for j in range(len(den)) if n - j >= 0) for n in range(9)]
    assert prod == [0, 2, -1, 0, 1, 0, 0, 0, 0]


def test_network_all_t_one():
    _, text = run("network", "--file", str(SAMPLES / "two_vertex.json"), "--entry", "1,2", "--t", "1", "--n", "8")
    vals = [int(ln.split()[1]) for ln in text.splitlines()[1:]]
    assert all(vals[n] - vals[n - 1] - 4 * (vals[n - 2] if n > 1 else 0) == (2 if n == 1 else 0) for n in range(1, 9))


def test_coin_flip_probability():
    _, text = run("network", "--file", str(SAMPLES / "coin_flip.json"), "--avoid", "ab", "--prob", "--n", "2")
    assert text.splitlines()[-1].split()[1] == "3/4"


def test_network_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": 2,\n "arcs": [}')
    assert run("network", "--file", str(bad))[0] == 2
    assert "line 2" in capsys.readouterr().err
    diamond = {
        "vertices": 4,
        "arcs": [
            {"from": 1, "to": 2, "letters": ["a"]},
            {"from": 2, "to": 4, "letters": ["a"]},
            {"from": 1, "to": 3, "letters": ["a"]},
            {"from": 3, "to": 4, "letters": ["a"]},
        ],
    }
    p = tmp_path / "diamond.json"
    p.write_text(json.dumps(diamond))
    assert run("network", "--file", str(p))[0] == 2
    err = capsys.readouterr().err
    assert "'aa'" in err and "1->2->4" in err and "1->3->4" in err
    assert run("network", "--file", str(SAMPLES / "two_vertex.json"), "--entry", "3,1")[0] == 2


def test_cluster_command():
    code, text = run("cluster", "--patterns", "acb,bc", "--n", "5")
    assert code == 0
    assert "acbc {(1,acb), (3,bc)}" in text
    _, text = run("cluster", "--patterns", "aba,abab", "--n", "5", "--format", "json")
    words = {c["word"] for c in json.loads(text)["clusters"]}
    assert {"aba", "abab", "ababa"} <= words


def test_verify_pass_and_report():
    code, text = run("verify", "--suite", "algebra,corollaries")
    assert code == 0
    assert "algebra: PASS" in text and "corollaries: PASS" in text
    assert "info: one-peak" in text


def test_verify_failure_reports_counterexample(monkeypatch):
    from gjcluster import verify

    def broken(N=12):
        r = verify.SuiteResult("broken")
        r.expect_equal(1, 2, "n=3, asc")
        return r

    monkeypatch.setitem(verify.SUITES, "broken", broken)
    code, text = run("verify", "--suite", "broken")
    assert code == 1
    assert "first counterexample: n=3, asc: expected 2, got 1" in text


def test_plain_parser_handles_rationals_and_signs():
    parsed = cli._parse_plain_poly("-1/2 + 3*t1^2*t2 - t2", ["t1", "t2"])
    assert parsed == {(0, 0): Fraction(-1, 2), (2, 1): 3, (0, 1): -1}
