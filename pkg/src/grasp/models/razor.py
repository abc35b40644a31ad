"""Brute-force razor sets by enumerating every labelled DAG on a few vertices.

Each DAG is summarised by a bitmask of the singleton d-separations it entails,
indexed like :func:`grasp.graph.singleton_queries`.  Markov equivalence is
then equality of masks, and entailment inclusion is mask inclusion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import FrozenSet, List, Set, Tuple

from ..errors import TooLarge
from ..graph import Dag, _find_cycle, reachable_mask, singleton_queries
from ..induce import Permutation, induce_ru
from ..oracle import IndependenceOracle

MAX_RAZOR_VERTICES = 5
MAX_SP_VERTICES = 7

Fingerprint = Tuple[int, Tuple[int, ...]]


@dataclass(frozen=True)
class RazorSets:
    cmc: FrozenSet[Fingerprint]
    sgs: FrozenSet[Fingerprint]
    frugal: FrozenSet[Fingerprint]
    u_frugal: FrozenSet[Fingerprint]
    p_minimal: FrozenSet[Fingerprint]
    u_p_minimal: FrozenSet[Fingerprint]
    faithful: FrozenSet[Fingerprint]

    def chain(self) -> List[Tuple[str, FrozenSet[Fingerprint]]]:
        """The sets in nesting order, narrowest first."""
        return [
            ("u_p_minimal", self.u_p_minimal),
            ("faithful", self.faithful),
            ("u_frugal", self.u_frugal),
            ("frugal", self.frugal),
            ("p_minimal", self.p_minimal),
            ("sgs", self.sgs),
            ("cmc", self.cmc),
        ]


def _fp(m: int, pa: Tuple[int, ...]) -> Fingerprint:
    return (m, pa)


@lru_cache(maxsize=None)
def _statement_index(m: int):
    queries = singleton_queries(m)
    return queries, {q: idx for idx, q in enumerate(queries)}


def _independence_mask(m: int, pa: Tuple[int, ...]) -> int:
    g = Dag.from_parent_masks(pa)
    _, index = _statement_index(m)
    full = (1 << m) - 1
    out = 0
    for i in range(m):
        for j in range(i + 1, m):
            rest = full & ~(1 << i) & ~(1 << j)
            z = rest
            while True:
                if not reachable_mask(g, i, z) >> j & 1:
                    out |= 1 << index[(i, j, z)]
                if z == 0:
                    break
                z = (z - 1) & rest
    return out


@lru_cache(maxsize=None)
def all_dags(m: int) -> Tuple[Tuple[Tuple[int, ...], int, int], ...]:
    """Every labelled DAG on ``m`` vertices as (parent masks, edge count, independence mask)."""
    if m > MAX_RAZOR_VERTICES:
        raise TooLarge(f"DAG enumeration is capped at {MAX_RAZOR_VERTICES} vertices")
    pairs = list(combinations(range(m), 2))
    out = []
    for states in product((0, 1, 2), repeat=len(pairs)):
        pa = [0] * m
        ch = [0] * m
        for (a, b), s in zip(pairs, states):
            if s == 1:
                pa[b] |= 1 << a
                ch[a] |= 1 << b
            elif s == 2:
                pa[a] |= 1 << b
                ch[b] |= 1 << a
        if _find_cycle(m, ch) is not None:
            continue
        pa = tuple(pa)
        out.append((pa, sum(states.count(s) for s in (1, 2)), _independence_mask(m, pa)))
    return tuple(out)


def razor_sets(o: IndependenceOracle, m: int) -> RazorSets:
    if m != o.m:
        raise ValueError("m does not match the oracle")
    if m > MAX_RAZOR_VERTICES:
        raise TooLarge(f"razor sets need m <= {MAX_RAZOR_VERTICES}")
    queries, _ = _statement_index(m)
    p_mask = o.statement_mask(queries)
    markov = [(pa, e, im) for pa, e, im in all_dags(m) if im & ~p_mask == 0]
    markov_set = {pa for pa, _, _ in markov}

    def minimal_edges(pa):
        for x in range(m):
            bits = pa[x]
            while bits:
                low = bits & -bits
                sub = pa[:x] + (pa[x] & ~low,) + pa[x + 1 :]
                if sub in markov_set:
                    return False
                bits ^= low
        return True

    cmc = {pa for pa, _, _ in markov}
    sgs = {pa for pa in cmc if minimal_edges(pa)}
    fewest = min((e for _, e, _ in markov), default=None)
    frugal_rows = [(pa, im) for pa, e, im in markov if e == fewest]
    frugal = {pa for pa, _ in frugal_rows}
    u_frugal = frugal if len({im for _, im in frugal_rows}) == 1 else set()
    masks = {im for _, _, im in markov}
    # strict superset among Markovian masks
    maximal = {im for im in masks if not any(o2 != im and o2 & im == im for o2 in masks)}
    pmin_rows = [(pa, im) for pa, _, im in markov if im in maximal]
    p_minimal = {pa for pa, _ in pmin_rows}
    u_p_minimal = p_minimal if len(maximal) == 1 else set()
    faithful = {pa for pa, _, im in markov if im == p_mask}

    def fps(s):
        return frozenset(_fp(m, pa) for pa in s)

    return RazorSets(fps(cmc), fps(sgs), fps(frugal), fps(u_frugal), fps(p_minimal), fps(u_p_minimal), fps(faithful))


def sp_exhaustive(o: IndependenceOracle, m: int) -> Set[Dag]:
    """Sparsest DAGs induced (RU rule) over all ``m!`` permutations."""
    if m != o.m:
        raise ValueError("m does not match the oracle")
    if m > MAX_SP_VERTICES:
        raise TooLarge(f"exhaustive SP needs m <= {MAX_SP_VERTICES}")
    best, out = None, set()
    for perm in permutations(range(m)):
        g = induce_ru(o, Permutation(perm))
        e = g.edge_count
        if best is None or e < best:
            best, out = e, {g}
        elif e == best:
            out.add(g)
    return out
