"""Tuck moves, the tuck depth-first search and the tiered GRaSP driver.

A search state is a permutation together with the parent bitmasks of the DAG
it induces and that DAG's score.  Scorers (see :mod:`grasp.scoring`) supply
``evaluate(order) -> (parent_masks, score)`` plus ``better``/``tie``
comparisons, so the same search runs against an independence oracle or a
sample covariance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence, Set, Tuple

from ._bits import iter_bits
from .errors import OrderViolation
from .graph import Dag, is_covered, is_singular
from .induce import Permutation

# edge classes used for per-class depth limits
COVERED, SINGULAR, GENERAL = 0, 1, 2


@dataclass(frozen=True)
class SearchConfig:
    """Search bounds.

    Tucks of covered edges are tried down to recursion level ``depth``;
    singular but uncovered edges down to ``uncovered_depth``; all remaining
    edges down to ``nonsingular_depth``.  Level 1 is the top-level DFS call.
    """

    tier: int = 2
    depth: int = 3
    uncovered_depth: int = 1
    nonsingular_depth: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.tier not in (0, 1, 2):
            raise ValueError(f"tier must be 0, 1 or 2, got {self.tier}")
        if self.depth < 1:
            raise ValueError("depth must be positive")
        if not 0 <= self.nonsingular_depth <= self.uncovered_depth <= self.depth:
            raise ValueError("need 0 <= nonsingular_depth <= uncovered_depth <= depth")

    @classmethod
    def unbounded(cls, m: int, tier: int = 2, seed: int = 0) -> "SearchConfig":
        d = max(m * m, 1)
        return cls(tier=tier, depth=d, uncovered_depth=d, nonsingular_depth=d, seed=seed)

    def limit(self, edge_class: int) -> int:
        return (self.depth, self.uncovered_depth, self.nonsingular_depth)[edge_class]


@dataclass
class SearchStats:
    tucks: int = 0
    improvements: int = 0
    dfs_calls: int = 0


class _State(NamedTuple):
    order: Tuple[int, ...]
    masks: Tuple[int, ...]
    score: float


def fingerprint(g: Dag) -> Tuple[int, Tuple[int, ...]]:
    """Exact key for a DAG: vertex count plus per-vertex parent bitmasks."""
    return (g.m, g.parent_masks)


def _ancestors_within(masks: Sequence[int], k: int, allowed: int) -> int:
    anc = 0
    frontier = masks[k] & allowed
    while frontier:
        anc |= frontier
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= masks[v]
        frontier = nxt & allowed & ~anc
    return anc


def _tuck(order: Sequence[int], masks: Sequence[int], j: int, k: int) -> Tuple[int, ...]:
    pj = order.index(j)
    pk = order.index(k, pj + 1)
    between = order[pj + 1 : pk]
    seg = 0
    for v in between:
        seg |= 1 << v
    anc = _ancestors_within(masks, k, seg)
    gamma = [v for v in between if anc >> v & 1]
    rest = [v for v in between if not anc >> v & 1]
    return tuple(order[:pj]) + tuple(gamma) + (k, j) + tuple(rest) + tuple(order[pk + 1 :])


def tuck(p: Permutation, j: int, k: int, g: Dag) -> Permutation:
    """Move ``k`` (with its ancestors lying between ``j`` and ``k``) in front of ``j``.

    Returns ``p`` unchanged when ``j -> k`` is not an edge of ``g``.
    """
    if p.index[j] >= p.index[k]:
        raise OrderViolation(f"{j} does not precede {k} in the permutation")
    if not g.has_edge(j, k):
        return p
    return Permutation(_tuck(p.order, g.parent_masks, j, k))


def _candidate_edges(masks: Sequence[int], tier: int) -> List[Tuple[int, int, int]]:
    """(j, k, class) for tier-eligible edges, in canonical order."""
    g = Dag.from_parent_masks(masks)
    out = []
    for j, k in g.edges:
        if is_covered(g, j, k):
            cls = COVERED
        elif is_singular(g, j, k):
            cls = SINGULAR
        else:
            cls = GENERAL
        if cls <= tier:
            out.append((j, k, cls))
    return out


def _dfs(scorer, state: _State, cfg: SearchConfig, tier: int, level: int, visited: Set, stats: SearchStats) -> _State:
    stats.dfs_calls += 1
    for j, k, cls in _candidate_edges(state.masks, tier):
        if level > cfg.limit(cls):
            continue
        order = _tuck(state.order, state.masks, j, k)
        masks, score = scorer.evaluate(order)
        stats.tucks += 1
        cand = _State(order, masks, score)
        if scorer.better(score, state.score):
            return cand
        if level < cfg.depth and scorer.tie(score, state.score) and masks not in visited:
            visited.add(masks)
            cand = _dfs(scorer, cand, cfg, tier, level + 1, visited, stats)
            if scorer.better(cand.score, state.score):
                return cand
    return state


def dfs(scorer, p: Permutation, cfg: SearchConfig, current_depth: int = 1, visited: Optional[Set] = None, tier: Optional[int] = None) -> Permutation:
    """One depth-first pass over tucks of tier-``tier`` edges (default ``cfg.tier``).

    Returns the first strictly better permutation found, or ``p`` itself.
    ``visited`` holds parent-mask tuples of DAGs already expanded; it is
    updated in place.
    """
    if current_depth < 1:
        raise ValueError("current_depth starts at 1")
    masks, score = scorer.evaluate(p.order)
    if visited is None:
        visited = set()
    visited.add(masks)
    t = cfg.tier if tier is None else tier
    out = _dfs(scorer, _State(p.order, masks, score), cfg, t, current_depth, visited, SearchStats())
    return p if out.order == p.order else Permutation(out.order)


def grasp(scorer, p: Permutation, cfg: SearchConfig, stats: Optional[SearchStats] = None) -> Permutation:
    """Run tiers 0..cfg.tier in turn, each until its DFS stops improving."""
    stats = stats if stats is not None else SearchStats()
    masks, score = scorer.evaluate(p.order)
    state = _State(p.order, masks, score)
    for t in range(cfg.tier + 1):
        while True:
            new = _dfs(scorer, state, cfg, t, 1, {state.masks}, stats)
            if not scorer.better(new.score, state.score):
                break
            stats.improvements += 1
            state = new
    return Permutation(state.order)
