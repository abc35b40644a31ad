"""Command-line entry point: ``grasp <command> ...``.

Every command that writes an artifact also writes ``<artifact>.manifest.json``
recording the command line, resolved configuration, seed, timestamps and
library version.  Exit status is 0 on success, 1 on usage errors and 2 on
data errors (unreadable or malformed inputs, degenerate data).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .errors import GraspError
from .graph import Dag, format_graph, parse_graph, to_cpdag
from .induce import Permutation, induce_ru
from .metrics import CSV_COLUMNS, compare, csv_row, fmt_value, mean_defined
from .models.catalog import udag_catalog
from .models.recovery import recovery_test
from .oracle import parse_model
from .scoring import BicScorer, CovarianceModel, OracleScorer, covariance, load_dataset, save_dataset
from .search import SearchConfig, SearchStats, grasp
from .simulate import SimConfig, random_dag, sample_sem

CSV_VERSION = "1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# -- manifests ---------------------------------------------------------------


@dataclass
class RunManifest:
    command: List[str]
    config: Dict
    seed: Optional[int]
    started: str
    finished: str = ""
    seconds: float = 0.0
    version: str = __version__
    outputs: List[str] = field(default_factory=list)

    @classmethod
    def begin(cls, argv: Sequence[str], config: Dict, seed: Optional[int]) -> "RunManifest":
        m = cls(list(argv), config, seed, _now())
        m._t0 = time.perf_counter()
        return m

    def finish(self, outputs: Sequence[str]) -> "RunManifest":
        self.finished = _now()
        self.seconds = time.perf_counter() - getattr(self, "_t0", time.perf_counter())
        self.outputs = [str(p) for p in outputs]
        return self

    def write(self, path: Path) -> Path:
        target = Path(str(path) + ".manifest.json")
        target.write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n")
        return target


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


# -- shared pipeline pieces -------------------------------------------------


def search_dataset(c: CovarianceModel, cfg: SearchConfig, penalty: float = 2.0, starts: int = 1) -> Tuple[Dag, float, SearchStats]:
    """Tiered search from ``starts`` random permutations; the best-scoring result wins.

    Start permutations are drawn from a PCG64 stream seeded by ``cfg.seed``.
    """
    if starts < 1:
        raise ValueError("starts must be positive")
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    scorer = BicScorer(c, penalty)
    stats = SearchStats()
    best = None
    for _ in range(starts):
        start = Permutation(int(v) for v in rng.permutation(c.m))
        out = grasp(scorer, start, cfg, stats)
        masks, score = scorer.evaluate(out.order)
        if best is None or scorer.better(score, best[1]):
            best = (masks, score)
    return Dag.from_parent_masks(best[0]), best[1], stats


def _read_graph(path: str):
    return parse_graph(Path(path).read_text())


def _search_config(a) -> SearchConfig:
    try:
        return SearchConfig(a.tier, a.depth, a.uncovered_depth, a.nonsingular_depth, a.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _sim_config(m, deg, n, seed) -> SimConfig:
    try:
        return SimConfig(m, deg, n, seed=seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- commands ------------------------------------------------------------------


def cmd_simulate(a, argv) -> int:
    cfg = _sim_config(a.vars, a.avg_degree, a.n, a.seed)
    man = RunManifest.begin(argv, cfg.as_dict(), cfg.seed)
    prefix = Path(a.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    g = random_dag(cfg)
    data_path = Path(f"{prefix}.csv")
    truth_path = Path(f"{prefix}.truth.txt")
    save_dataset(sample_sem(g, cfg), data_path)
    truth_path.write_text(format_graph(g))
    man.finish([data_path, truth_path]).write(prefix)
    print(f"wrote {data_path} {truth_path} ({g.edge_count} edges)")
    return 0


def cmd_search(a, argv) -> int:
    cfg = _search_config(a)
    if a.starts < 1:
        raise UsageError("--starts must be positive")
    man = RunManifest.begin(argv, {**asdict(cfg), "penalty": a.penalty, "starts": a.starts, "data": a.data}, cfg.seed)
    c = covariance(load_dataset(a.data))
    g, score, stats = search_dataset(c, cfg, a.penalty, a.starts)
    prefix = Path(a.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    dag_path, cpdag_path = Path(f"{prefix}.dag.txt"), Path(f"{prefix}.cpdag.txt")
    dag_path.write_text(format_graph(g))
    cpdag_path.write_text(format_graph(to_cpdag(g)))
    man.config["score"] = score
    man.config["stats"] = asdict(stats)
    man.finish([dag_path, cpdag_path]).write(prefix)
    print(f"score {score:.6f} edges {g.edge_count} tucks {stats.tucks}")
    return 0


def cmd_oracle_search(a, argv) -> int:
    oracle = parse_model(Path(a.model).read_text())
    cfg = _search_config(a)
    if a.start:
        try:
            start = Permutation.from_labels(int(t) for t in a.start.replace(",", " ").split())
        except ValueError as exc:
            raise UsageError(f"--start: {exc}") from None
        if len(start) != oracle.m:
            raise UsageError("--start must list every vertex once")
    else:
        start = Permutation.identity(oracle.m)
    man = RunManifest.begin(argv, {**asdict(cfg), "model": a.model, "start": list(start.labels())}, cfg.seed)
    out = grasp(OracleScorer(oracle), start, cfg)
    g = induce_ru(oracle, out)
    text = format_graph(g)
    if a.out:
        path = Path(a.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        man.finish([path]).write(path)
    sys.stdout.write(text)
    print(f"permutation {' '.join(map(str, out.labels()))}")
    print(f"edges {g.edge_count}")
    return 0


def cmd_eval(a, argv) -> int:
    est, truth = _read_graph(a.estimate), _read_graph(a.truth)
    cmp = compare(est, truth)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["AP", "AR", "AF1", "AHP", "AHR", "AHF1", "est_edges", "true_edges"])
    w.writerow([fmt_value(v) for v in (cmp.ap, cmp.ar, cmp.af1, cmp.ahp, cmp.ahr, cmp.ahf1, cmp.est_edges, cmp.true_edges)])
    return 0


def cmd_unit_tests(a, argv) -> int:
    tiers = sorted(set(a.tiers))
    models = udag_catalog()
    man = RunManifest.begin(argv, {"tiers": tiers, "models": len(models)}, None)
    rows, counts = [], {t: 0 for t in tiers}
    for mdl in models:
        for t in tiers:
            ok, fails = recovery_test(mdl, t)
            counts[t] += ok and mdl.name.startswith("udag")
            rows.append([mdl.name, t, int(ok), len(fails)])
    n_udag = sum(mdl.name.startswith("udag") for mdl in models)
    out = open(a.out, "w", newline="") if a.out else sys.stdout
    try:
        out.write(f"# grasp unit-tests csv v{CSV_VERSION}\n")
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["model", "tier", "recovered", "failures"])
        w.writerows(rows)
        for t in tiers:
            w.writerow(["summary-udag", t, counts[t], n_udag])
    finally:
        if a.out:
            out.close()
    if a.out:
        man.finish([a.out]).write(Path(a.out))
    print("recovered uDAGs: " + ", ".join(f"tier {t}: {counts[t]}/{n_udag}" for t in tiers), file=sys.stderr)
    return 0


# -- benchmark -----------------------------------------------------------------


def _benchmark_run(job):
    run_id, m, deg, n, tier, seed, penalty = job
    sim = SimConfig(m, deg, n, seed=seed)
    truth = random_dag(sim)
    c = covariance(sample_sem(truth, sim))
    t0 = time.perf_counter()
    g, _, _ = search_dataset(c, SearchConfig(tier=tier, seed=seed), penalty)
    secs = time.perf_counter() - t0
    return csv_row(run_id, m, deg, n, tier, secs, compare(g, truth))


def _float(v: str) -> Optional[float]:
    return None if v == "NA" else float(v)


def summarize_runs(rows: Sequence[Dict[str, str]]) -> List[List[str]]:
    """Per-cell means over run rows; undefined ratios are skipped and counted."""
    cells: Dict[Tuple[str, str, str, str], List[Dict[str, str]]] = {}
    for r in rows:
        cells.setdefault((r["m"], r["avg_degree"], r["n"], r["tier"]), []).append(r)
    out = []
    for key in sorted(cells, key=lambda k: tuple(float(x) for x in k)):
        group = cells[key]
        line = list(key) + [str(len(group))]
        for col in ("seconds", "AP", "AR", "AHP", "AHR", "est_edges", "true_edges"):
            mean, valid = mean_defined(_float(r[col]) for r in group)
            line += [fmt_value(mean), str(valid)]
        out.append(line)
    return out


SUMMARY_COLUMNS = ["m", "avg_degree", "n", "tier", "runs"] + [
    f"{c}{suffix}" for c in ("seconds", "AP", "AR", "AHP", "AHR", "est_edges", "true_edges") for suffix in ("", "_valid")
]


def _read_runs(path: Path) -> List[Dict[str, str]]:
    if not path.exists():
        return []
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def cmd_benchmark(a, argv) -> int:
    if a.reps < 1:
        raise UsageError("--reps must be positive")
    for m in a.vars:
        for deg in a.avg_degree:
            _sim_config(m, deg, a.n[0], 0)
    if any(t not in (0, 1, 2) for t in a.tiers):
        raise UsageError("tiers must be 0, 1 or 2")
    config = {"vars": a.vars, "avg_degree": a.avg_degree, "n": a.n, "tiers": a.tiers, "reps": a.reps, "penalty": a.penalty}
    man = RunManifest.begin(argv, config, a.seed)
    outdir = Path(a.out)
    outdir.mkdir(parents=True, exist_ok=True)
    runs_path = outdir / "runs.csv"
    done = {r["run_id"] for r in _read_runs(runs_path)}
    jobs = []
    for m in a.vars:
        for deg in a.avg_degree:
            for n in a.n:
                for tier in a.tiers:
                    for rep in range(a.reps):
                        seed = a.seed + rep
                        run_id = f"m{m}-d{deg:g}-n{n}-t{tier}-s{seed}"
                        if run_id not in done:
                            jobs.append((run_id, m, deg, n, tier, seed, a.penalty))
    fresh = not runs_path.exists()
    with open(runs_path, "a", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if fresh:
            fh.write(f"# grasp benchmark runs csv v{CSV_VERSION}\n")
            w.writerow(CSV_COLUMNS)
        if a.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=a.jobs) as pool:
                for row in pool.map(_benchmark_run, jobs):
                    w.writerow(row)
                    fh.flush()
        else:
            for job in jobs:
                w.writerow(_benchmark_run(job))
                fh.flush()
    summary_path = outdir / "summary.csv"
    with open(summary_path, "w", newline="") as fh:
        fh.write(f"# grasp benchmark summary csv v{CSV_VERSION}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUMMARY_COLUMNS)
        w.writerows(summarize_runs(_read_runs(runs_path)))
    man.finish([runs_path, summary_path]).write(summary_path)
    print(f"{len(jobs)} new runs, {len(done)} reused; summary in {summary_path}")
    return 0


# -- argument parsing -------------------------------------------------------------


def _add_search_flags(p, default_seed=0):
    p.add_argument("--tier", type=int, choices=(0, 1, 2), default=2)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--uncovered-depth", type=int, default=1)
    p.add_argument("--nonsingular-depth", type=int, default=1)
    p.add_argument("--seed", type=int, default=default_seed)


def _int_list(text: str) -> List[int]:
    return [int(t) for t in text.replace(",", " ").split()]


def _float_list(text: str) -> List[float]:
    return [float(t) for t in text.replace(",", " ").split()]


def _env_jobs() -> int:
    try:
        return max(1, int(os.environ.get("GRASP_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="grasp", description="Permutation-based causal discovery by tuck search.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("simulate", help="random DAG plus linear-Gaussian sample")
    s.add_argument("--vars", type=int, required=True)
    s.add_argument("--avg-degree", type=float, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True, help="output prefix; writes PREFIX.csv and PREFIX.truth.txt")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("search", help="BIC search on a CSV dataset")
    s.add_argument("data")
    s.add_argument("--out", required=True, help="output prefix; writes PREFIX.dag.txt and PREFIX.cpdag.txt")
    _add_search_flags(s)
    s.add_argument("--penalty", type=float, default=2.0)
    s.add_argument("--starts", type=int, default=1)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("oracle-search", help="search against a model file's independence oracle")
    s.add_argument("model")
    s.add_argument("--start", help="1-based start permutation, e.g. 2,4,1,3")
    s.add_argument("--out")
    _add_search_flags(s)
    s.set_defaults(func=cmd_oracle_search)

    s = sub.add_parser("eval", help="adjacency and arrowhead precision/recall")
    s.add_argument("estimate")
    s.add_argument("truth")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("unit-tests", help="all-permutations recovery of the bundled unit models")
    s.add_argument("--tiers", type=_int_list, default=[0, 1, 2])
    s.add_argument("--out")
    s.set_defaults(func=cmd_unit_tests)

    s = sub.add_parser("benchmark", help="simulate/search/eval sweep with per-cell means")
    s.add_argument("--vars", type=_int_list, default=[20])
    s.add_argument("--avg-degree", type=_float_list, default=[4.0])
    s.add_argument("--n", type=_int_list, default=[1000])
    s.add_argument("--tiers", type=_int_list, default=[2])
    s.add_argument("--reps", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--penalty", type=float, default=2.0)
    s.add_argument("--jobs", type=int, default=_env_jobs())
    s.add_argument("--out", required=True, help="output directory")
    s.set_defaults(func=cmd_benchmark)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, ["grasp"] + argv)
    except UsageError as exc:
        print(f"grasp: error: {exc}", file=sys.stderr)
        return 1
    except (GraspError, OSError, ValueError) as exc:
        print(f"grasp: data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
