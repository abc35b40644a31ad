"""Linear-Gaussian BIC over sample covariances.

The local score of ``x`` given parents ``P`` is

    -n * ln(resid_var) - penalty * |P| * ln(n)

where ``resid_var`` is the OLS residual variance of ``x`` on ``P`` computed
from the covariance matrix.  Larger is better.  Constants that do not depend
on the parent set are dropped.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ._bits import iter_bits, to_mask
from .errors import DegenerateData, ParseError, SingularParentMatrix
from .graph import Dag
from .induce import Permutation, grow_shrink_mask, prefix_masks, ru_parents
from .oracle import IndependenceOracle

VARIANCE_FLOOR = 1e-12
DEFAULT_PENALTY = 2.0
# relative pivot size below which a parent set is treated as rank deficient
_RANK_TOL = 1e-10


@dataclass
class Dataset:
    values: np.ndarray
    names: List[str] = field(default_factory=list)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 2:
            raise ValueError("dataset must be a 2-d array")
        if not self.names:
            self.names = [f"X{i + 1}" for i in range(self.values.shape[1])]
        if len(self.names) != self.values.shape[1]:
            raise ValueError("one name per column is required")
        if not np.all(np.isfinite(self.values)):
            raise DegenerateData("dataset contains missing or non-finite values")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def m(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class CovarianceModel:
    n: int
    cov: np.ndarray

    @property
    def m(self) -> int:
        return self.cov.shape[0]


def covariance(d: Dataset) -> CovarianceModel:
    if d.n < 2:
        raise DegenerateData("at least two samples are needed")
    flat = np.flatnonzero(np.ptp(d.values, axis=0) == 0)
    if flat.size:
        raise DegenerateData(f"zero variance in column(s) {[d.names[i] for i in flat]}")
    cov = np.cov(d.values, rowvar=False, ddof=1).reshape(d.m, d.m)
    cov = (cov + cov.T) / 2
    cov.setflags(write=False)
    return CovarianceModel(d.n, cov)


def load_dataset(path: Union[str, Path]) -> Dataset:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ParseError(f"{path}: empty file")
    names = [s.strip() for s in rows[0]]
    try:
        values = np.array([[float(c) for c in r] for r in rows[1:] if r], dtype=float)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from None
    if values.size == 0:
        values = values.reshape(0, len(names))
    if values.shape[1] != len(names):
        raise ParseError(f"{path}: rows do not match the header width")
    return Dataset(values, names)


def save_dataset(d: Dataset, path: Union[str, Path]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(d.names)
        for row in d.values:
            w.writerow([repr(float(v)) for v in row])


def _parent_list(x: int, parents) -> List[int]:
    if isinstance(parents, int):
        plist = list(iter_bits(parents))
    else:
        plist = sorted(set(parents))
    if x in plist:
        raise ValueError("target cannot be its own parent")
    return plist


def _residual_variance(cov: np.ndarray, x: int, plist: List[int]) -> float:
    if not plist:
        return float(cov[x, x])
    idx = plist + [x]
    sub = cov[np.ix_(idx, idx)]
    scale = np.sqrt(np.diag(sub))
    try:
        chol = np.linalg.cholesky(sub)
        piv = np.diag(chol)
        if np.all(piv[:-1] > _RANK_TOL * scale[:-1]):
            return float(piv[-1] ** 2)
    except np.linalg.LinAlgError:
        pass
    # either the parents are collinear or x is (numerically) determined by them
    try:
        chol = np.linalg.cholesky(sub[:-1, :-1])
    except np.linalg.LinAlgError:
        chol = None
    if chol is None or not np.all(np.diag(chol) > _RANK_TOL * scale[:-1]):
        raise SingularParentMatrix(f"parents {plist} of {x} are linearly dependent")
    coef = np.linalg.solve(sub[:-1, :-1], sub[:-1, -1])
    return float(sub[-1, -1] - coef @ sub[:-1, -1])


def local_bic(c: CovarianceModel, x: int, parents, penalty: float = DEFAULT_PENALTY) -> float:
    plist = _parent_list(x, parents)
    var = max(_residual_variance(c.cov, x, plist), VARIANCE_FLOOR)
    return -c.n * math.log(var) - penalty * len(plist) * math.log(c.n)


class ScoreCache:
    """Memo of local scores keyed by (target, parent bitmask).

    Meant to be owned by one search worker.  With ``capacity`` set, the oldest
    entries are evicted first; correctness never depends on a hit.
    """

    def __init__(self, capacity: Optional[int] = None):
        self.capacity = capacity
        self.hits = 0
        self.misses = 0
        self._data: Dict[Tuple[int, int], float] = {}

    def get(self, key):
        val = self._data.get(key)
        if val is None:
            self.misses += 1
        else:
            self.hits += 1
        return val

    def put(self, key, value: float) -> None:
        if self.capacity is not None and len(self._data) >= self.capacity:
            del self._data[next(iter(self._data))]
        self._data[key] = value

    def __len__(self) -> int:
        return len(self._data)


def cached_local_bic(c: CovarianceModel, x: int, mask: int, penalty: float, cache: Optional[ScoreCache]) -> float:
    if cache is None:
        return local_bic(c, x, mask, penalty)
    key = (x, mask)
    val = cache.get(key)
    if val is None:
        val = local_bic(c, x, mask, penalty)
        cache.put(key, val)
    return val


def graph_bic(c: CovarianceModel, g: Dag, penalty: float = DEFAULT_PENALTY, cache: Optional[ScoreCache] = None) -> float:
    if g.m != c.m:
        raise ValueError("graph and covariance dimensions differ")
    return math.fsum(cached_local_bic(c, v, g.parent_masks[v], penalty, cache) for v in range(g.m))


class BicEvaluator:
    """Local evaluator for grow-shrink backed by the Gaussian BIC."""

    tol = 1e-10

    def __init__(self, c: CovarianceModel, penalty: float = DEFAULT_PENALTY, cache: Optional[ScoreCache] = None):
        if c.n < c.m + 2:
            raise DegenerateData(f"BIC needs n >= m + 2 (n={c.n}, m={c.m})")
        self.c = c
        self.penalty = penalty
        self.cache = cache if cache is not None else ScoreCache()
        self._log_n = math.log(c.n)

    def score(self, x: int, mask: int) -> float:
        return cached_local_bic(self.c, x, mask, self.penalty, self.cache)

    def add_gains(self, x: int, mask: int, candidates: Sequence[int]) -> List[float]:
        cov = self.c.cov
        cands = list(candidates)
        plist = list(iter_bits(mask))
        cost = self.penalty * self._log_n
        if plist:
            a = cov[np.ix_(plist, plist)]
            cols = [x] + cands
            b = cov[np.ix_(plist, cols)]
            try:
                w = np.linalg.solve(a, b)
            except np.linalg.LinAlgError:
                return self._gains_direct(x, mask, cands, adding=True)
            var_x = cov[x, x] - b[:, 0] @ w[:, 0]
            cxy = cov[x, cands] - b[:, 0] @ w[:, 1:]
            var_y = cov[cands, cands] - np.einsum("ij,ij->j", b[:, 1:], w[:, 1:])
        else:
            var_x = cov[x, x]
            cxy = cov[x, cands]
            var_y = cov[cands, cands]
        var_x = max(var_x, VARIANCE_FLOOR)
        with np.errstate(divide="ignore", invalid="ignore"):
            new = var_x - cxy**2 / var_y
        new = np.maximum(new, VARIANCE_FLOOR)
        gains = -self.c.n * np.log(new / var_x) - cost
        # candidates already (numerically) spanned by the parents cannot be added
        gains[~(var_y > _RANK_TOL * np.diag(cov)[cands])] = -np.inf
        return gains.tolist()

    def drop_gains(self, x: int, mask: int, members: Sequence[int]) -> List[float]:
        cov = self.c.cov
        members = list(members)
        plist = list(iter_bits(mask))
        pos = {v: i for i, v in enumerate(plist)}
        idx = plist + [x]
        try:
            prec = np.linalg.inv(cov[np.ix_(idx, idx)])
        except np.linalg.LinAlgError:
            return self._gains_direct(x, mask, members, adding=False)
        qxx = prec[-1, -1]
        if not np.isfinite(prec).all() or qxx <= 0:
            return self._gains_direct(x, mask, members, adding=False)
        var_full = max(1.0 / qxx, VARIANCE_FLOOR)
        cost = self.penalty * self._log_n
        out = []
        for y in members:
            i = pos[y]
            q = qxx - prec[-1, i] ** 2 / prec[i, i]
            var_drop = max(1.0 / q, VARIANCE_FLOOR) if q > 0 else math.inf
            out.append(-self.c.n * math.log(var_drop / var_full) + cost)
        return out

    def _gains_direct(self, x, mask, items, adding):
        base = self.score(x, mask)
        out = []
        for y in items:
            other = mask | (1 << y) if adding else mask & ~(1 << y)
            try:
                out.append(self.score(x, other) - base)
            except SingularParentMatrix:
                out.append(-math.inf)
        return out


class OracleScorer:
    """Scores a permutation by minus the edge count of its RU-induced DAG."""

    mode = "oracle"

    def __init__(self, oracle: IndependenceOracle):
        self.oracle = oracle
        self.m = oracle.m
        self._local: Dict[Tuple[int, int], int] = {}

    def parents(self, x: int, prefix: int) -> int:
        key = (x, prefix)
        pa = self._local.get(key)
        if pa is None:
            pa = ru_parents(self.oracle, x, prefix)
            self._local[key] = pa
        return pa

    def evaluate(self, order: Sequence[int]) -> Tuple[Tuple[int, ...], int]:
        pa = [0] * self.m
        for v, pre in prefix_masks(order):
            pa[v] = self.parents(v, pre)
        return tuple(pa), -sum(mask.bit_count() for mask in pa)

    @staticmethod
    def better(new, old) -> bool:
        return new > old

    @staticmethod
    def tie(new, old) -> bool:
        return new == old


class BicScorer:
    """Scores a permutation by the summed grow-shrink BIC of its VP-induced DAG.

    Grow-shrink results are memoised per (vertex, prefix) so that re-scoring a
    permutation only pays for vertices whose predecessor set changed.
    """

    mode = "sample"

    def __init__(self, c: CovarianceModel, penalty: float = DEFAULT_PENALTY, cache: Optional[ScoreCache] = None, tol: float = 1e-10):
        self.evaluator = BicEvaluator(c, penalty, cache)
        self.c = c
        self.m = c.m
        self.penalty = penalty
        self.tol = tol
        self._local: Dict[Tuple[int, int], Tuple[int, float]] = {}

    @property
    def cache(self) -> ScoreCache:
        return self.evaluator.cache

    def boundary(self, x: int, prefix: int) -> Tuple[int, float]:
        key = (x, prefix)
        res = self._local.get(key)
        if res is None:
            res = grow_shrink_mask(self.evaluator, x, prefix)
            self._local[key] = res
        return res

    def evaluate(self, order: Sequence[int]) -> Tuple[Tuple[int, ...], float]:
        pa = [0] * self.m
        local = [0.0] * self.m
        for v, pre in prefix_masks(order):
            pa[v], local[v] = self.boundary(v, pre)
        return tuple(pa), math.fsum(local)

    def _slack(self, a: float, b: float) -> float:
        # summed local scores carry rounding error proportional to their size
        return self.tol * max(1.0, abs(a), abs(b))

    def better(self, new, old) -> bool:
        return new > old + self._slack(new, old)

    def tie(self, new, old) -> bool:
        return abs(new - old) <= self._slack(new, old)


def permutation_score(scorer, p: Permutation) -> Tuple[Dag, float]:
    """The DAG induced by ``p`` under ``scorer`` together with its score."""
    if len(p) != scorer.m:
        raise ValueError("permutation length does not match the scorer")
    masks, score = scorer.evaluate(p.order)
    return Dag.from_parent_masks(masks), score
