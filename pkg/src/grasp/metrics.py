"""Adjacency and arrowhead precision/recall between CPDAGs.

DAG arguments are converted with :func:`grasp.graph.to_cpdag` first, so two
Markov-equivalent DAGs always score perfectly against each other.  A ratio
with a zero denominator is reported as ``None`` rather than 0 or 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple, Union

from .errors import DimensionMismatch
from .graph import Cpdag, Dag, as_cpdag

GraphLike = Union[Dag, Cpdag]

CSV_COLUMNS = (
    "run_id", "m", "avg_degree", "n", "tier", "seconds",
    "AP", "AR", "AHP", "AHR", "est_edges", "true_edges",
)


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn) < 0:
            raise ValueError("confusion counts must be nonnegative")


def _pair(est: GraphLike, truth: GraphLike) -> Tuple[Cpdag, Cpdag]:
    a, b = as_cpdag(est), as_cpdag(truth)
    if a.m != b.m:
        raise DimensionMismatch(f"estimate has {a.m} vertices, truth has {b.m}")
    return a, b


def adjacency_confusion(est: GraphLike, truth: GraphLike) -> ConfusionCounts:
    a, b = _pair(est, truth)
    ea, eb = a.adjacencies(), b.adjacencies()
    return ConfusionCounts(len(ea & eb), len(ea - eb), len(eb - ea))


def arrowhead_confusion(est: GraphLike, truth: GraphLike) -> ConfusionCounts:
    """Counts over directed CPDAG edges.

    An undirected estimated edge never counts as a positive, so against a
    directed true edge it only contributes a false negative.
    """
    a, b = _pair(est, truth)
    da, db = set(a.directed), set(b.directed)
    return ConfusionCounts(len(da & db), len(da - db), len(db - da))


def _ratio(num: int, den: int) -> Optional[float]:
    return num / den if den else None


def precision_recall(c: ConfusionCounts) -> Tuple[Optional[float], Optional[float], Optional[float]]:
    p = _ratio(c.tp, c.tp + c.fp)
    r = _ratio(c.tp, c.tp + c.fn)
    if p is None or r is None:
        f1 = None
    else:
        f1 = 2 * p * r / (p + r) if p + r else 0.0
    return p, r, f1


@dataclass(frozen=True)
class Comparison:
    ap: Optional[float]
    ar: Optional[float]
    af1: Optional[float]
    ahp: Optional[float]
    ahr: Optional[float]
    ahf1: Optional[float]
    est_edges: int
    true_edges: int


def compare(est: GraphLike, truth: GraphLike) -> Comparison:
    a, b = _pair(est, truth)
    ap, ar, af1 = precision_recall(adjacency_confusion(a, b))
    hp, hr, hf1 = precision_recall(arrowhead_confusion(a, b))
    return Comparison(ap, ar, af1, hp, hr, hf1, len(a.adjacencies()), len(b.adjacencies()))


def mean_defined(values: Iterable[Optional[float]]) -> Tuple[Optional[float], int]:
    """Mean over the defined entries and how many there were."""
    vals = [v for v in values if v is not None]
    return (sum(vals) / len(vals) if vals else None), len(vals)


def fmt_value(v) -> str:
    if v is None:
        return "NA"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def csv_row(run_id: str, m: int, avg_degree: float, n: int, tier: int, seconds: float, cmp: Comparison) -> List[str]:
    vals = (run_id, m, avg_degree, n, tier, seconds, cmp.ap, cmp.ar, cmp.ahp, cmp.ahr, cmp.est_edges, cmp.true_edges)
    return [fmt_value(v) for v in vals]
