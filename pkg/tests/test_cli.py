import csv
import json

import numpy as np
import pytest

from grasp.cli import main, summarize_runs, _read_runs
from grasp.graph import Dag, format_graph, parse_graph, to_cpdag
from grasp.oracle import CiStatement, format_model
from grasp.scoring import Dataset, save_dataset
from grasp.simulate import SimConfig, sample_sem


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_simulate_writes_three_files_deterministically(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    for prefix in (a, b):
        code, _, _ = run(capsys, "simulate", "--vars", "6", "--avg-degree", "2", "--n", "50", "--seed", "1", "--out", str(prefix))
        assert code == 0
    for suffix in (".csv", ".truth.txt"):
        assert (tmp_path / f"a{suffix}").read_bytes() == (tmp_path / f"b{suffix}").read_bytes()
    man = json.loads((tmp_path / "a.manifest.json").read_text())
    assert man["config"]["m"] == 6 and man["seed"] == 1 and man["version"]


def test_simulate_zero_degree(tmp_path, capsys):
    run(capsys, "simulate", "--vars", "4", "--avg-degree", "0", "--n", "10", "--out", str(tmp_path / "z"))
    assert parse_graph((tmp_path / "z.truth.txt").read_text()).edge_count == 0


def test_usage_errors_exit_1(tmp_path, capsys):
    assert run(capsys, "simulate", "--vars", "4", "--avg-degree", "9", "--n", "10", "--out", str(tmp_path / "x"))[0] == 1
    assert run(capsys, "search", "x.csv", "--out", "y", "--tier", "7")[0] == 1
    assert run(capsys, "search", "x.csv", "--out", "y", "--depth", "1", "--uncovered-depth", "2")[0] == 1
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys)[0] == 1


def test_data_errors_exit_2(tmp_path, capsys):
    assert run(capsys, "search", str(tmp_path / "missing.csv"), "--out", str(tmp_path / "o"))[0] == 2
    const = tmp_path / "const.csv"
    save_dataset(Dataset(np.column_stack([np.ones(20), np.arange(20.0)])), const)
    assert run(capsys, "search", str(const), "--out", str(tmp_path / "o"))[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("dag 2\n1 x\n")
    assert run(capsys, "eval", str(bad), str(bad))[0] == 2
    g2, g3 = tmp_path / "g2.txt", tmp_path / "g3.txt"
    g2.write_text(format_graph(Dag(2)))
    g3.write_text(format_graph(Dag(3)))
    assert run(capsys, "eval", str(g2), str(g3))[0] == 2


def test_search_recovers_chain(tmp_path, capsys):
    chain = Dag(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    b = np.zeros((5, 5))
    for j, k in chain.edges:
        b[j, k] = 0.7
    data = tmp_path / "chain.csv"
    save_dataset(sample_sem(chain, SimConfig(5, 1, 50_000, seed=3), b), data)
    code, _, _ = run(capsys, "search", str(data), "--out", str(tmp_path / "est"))
    assert code == 0
    assert parse_graph((tmp_path / "est.cpdag.txt").read_text()) == to_cpdag(chain)
    assert json.loads((tmp_path / "est.manifest.json").read_text())["config"]["tier"] == 2


def test_search_single_variable(tmp_path, capsys):
    data = tmp_path / "one.csv"
    save_dataset(Dataset(np.random.default_rng(0).normal(size=(30, 1))), data)
    assert run(capsys, "search", str(data), "--out", str(tmp_path / "one"))[0] == 0
    assert parse_graph((tmp_path / "one.dag.txt").read_text()) == Dag(1)


def test_search_tiers_dominate(tmp_path, capsys):
    run(capsys, "simulate", "--vars", "10", "--avg-degree", "4", "--n", "300", "--seed", "5", "--out", str(tmp_path / "d"))
    scores = []
    for t in (0, 1, 2):
        run(capsys, "search", str(tmp_path / "d.csv"), "--tier", str(t), "--out", str(tmp_path / f"t{t}"))
        scores.append(json.loads((tmp_path / f"t{t}.manifest.json").read_text())["config"]["score"])
    assert scores[0] <= scores[1] + 1e-9 <= scores[2] + 2e-9


def test_search_restarts_keep_the_best(tmp_path, capsys):
    run(capsys, "simulate", "--vars", "8", "--avg-degree", "3", "--n", "200", "--seed", "2", "--out", str(tmp_path / "d"))
    run(capsys, "search", str(tmp_path / "d.csv"), "--starts", "1", "--out", str(tmp_path / "s1"))
    run(capsys, "search", str(tmp_path / "d.csv"), "--starts", "4", "--out", str(tmp_path / "s4"))
    one = json.loads((tmp_path / "s1.manifest.json").read_text())["config"]["score"]
    four = json.loads((tmp_path / "s4.manifest.json").read_text())["config"]["score"]
    assert four >= one


def test_oracle_search(tmp_path, capsys):
    truth = Dag(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    model = tmp_path / "m.txt"
    model.write_text(format_model(truth, [CiStatement(1, 3)], 4))
    code, out, _ = run(capsys, "oracle-search", str(model), "--tier", "1", "--start", "2,4,1,3", "--depth", "16", "--uncovered-depth", "16", "--nonsingular-depth", "16")
    assert code == 0 and "edges 5" in out
    code, out, _ = run(capsys, "oracle-search", str(model), "--tier", "2", "--start", "2,4,1,3", "--out", str(tmp_path / "g.txt"))
    assert "edges 4" in out
    assert parse_graph((tmp_path / "g.txt").read_text()).edge_count == 4
    faithful = tmp_path / "f.txt"
    faithful.write_text(format_graph(truth))
    code, out, _ = run(capsys, "oracle-search", str(faithful), "--start", "4 3 2 1")
    assert "edges 4" in out
    assert run(capsys, "oracle-search", str(model), "--start", "1,2")[0] == 1


def test_eval(tmp_path, capsys):
    truth = tmp_path / "t.txt"
    truth.write_text(format_graph(Dag(3, [(0, 2), (1, 2)])))
    code, out, _ = run(capsys, "eval", str(truth), str(truth))
    rows = list(csv.reader(out.splitlines()))
    assert code == 0 and rows[1][:6] == ["1"] * 6
    empty = tmp_path / "e.txt"
    empty.write_text(format_graph(Dag(3)))
    rows = list(csv.reader(run(capsys, "eval", str(empty), str(truth))[1].splitlines()))
    assert rows[1][1] == "0" and rows[1][0] == "NA"
    est = tmp_path / "h.txt"
    est.write_text("dag 3\n1 -- 2\n2 -- 3\n")
    chain_truth = tmp_path / "c.txt"
    chain_truth.write_text("dag 3\n1 -- 2\n1 -- 3\n")
    rows = list(csv.reader(run(capsys, "eval", str(est), str(chain_truth))[1].splitlines()))
    assert rows[1][:2] == ["0.5", "0.5"]


def test_unit_tests_tier0(tmp_path, capsys):
    out = tmp_path / "ut.csv"
    code, _, err = run(capsys, "unit-tests", "--tiers", "0", "--out", str(out))
    assert code == 0 and "tier 0: 0/61" in err
    rows = [r for r in csv.reader(ln for ln in out.read_text().splitlines() if not ln.startswith("#"))]
    assert rows[-1] == ["summary-udag", "0", "0", "61"]
    assert ["tier2-trap", "0", "0", "90"] in rows or any(r[0] == "tier2-trap" for r in rows)


def test_benchmark_resumes_and_aggregates(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("GRASP_JOBS", "1")
    args = ["benchmark", "--vars", "6", "--avg-degree", "2", "--n", "200", "--tiers", "0,2", "--reps", "2", "--out", str(tmp_path / "b")]
    assert run(capsys, *args)[0] == 0
    runs = _read_runs(tmp_path / "b" / "runs.csv")
    assert len(runs) == 4
    code, out, _ = run(capsys, *args)
    assert "0 new runs" in out
    assert len(_read_runs(tmp_path / "b" / "runs.csv")) == 4
    summary = _read_runs(tmp_path / "b" / "summary.csv")
    assert len(summary) == 2
    for cell in summary:
        group = [r for r in runs if r["tier"] == cell["tier"]]
        vals = [float(r["AP"]) for r in group if r["AP"] != "NA"]
        assert float(cell["AP"]) == pytest.approx(sum(vals) / len(vals), rel=1e-5)
        assert cell["runs"] == "2"


def test_benchmark_is_reproducible(tmp_path, capsys):
    cols = ("AP", "AR", "AHP", "AHR", "est_edges", "true_edges")
    results = []
    for name in ("x", "y"):
        run(capsys, "benchmark", "--vars", "5", "--avg-degree", "2", "--n", "150", "--reps", "2", "--jobs", "2", "--out", str(tmp_path / name))
        results.append([tuple(r[c] for c in cols) for r in sorted(_read_runs(tmp_path / name / "runs.csv"), key=lambda r: r["run_id"])])
    assert results[0] == results[1]


def test_summarize_runs_skips_missing():
    rows = [
        {"m": "3", "avg_degree": "1", "n": "10", "tier": "2", "seconds": "1", "AP": "NA", "AR": "0.5", "AHP": "NA", "AHR": "NA", "est_edges": "0", "true_edges": "1"},
        {"m": "3", "avg_degree": "1", "n": "10", "tier": "2", "seconds": "3", "AP": "1", "AR": "1", "AHP": "NA", "AHR": "NA", "est_edges": "1", "true_edges": "1"},
    ]
    (line,) = summarize_runs(rows)
    assert line[4] == "2"
    assert line[5:9] == ["2", "2", "1", "1"]
    assert line[9:11] == ["0.75", "2"]
