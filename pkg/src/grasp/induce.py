"""DAGs induced by a permutation.

Two constructions are provided.  ``induce_ru`` adds ``j -> k`` whenever ``j``
precedes ``k`` and stays dependent on ``k`` given the rest of ``k``'s prefix.
``induce_vp`` makes ``k``'s parents a Markov boundary of ``k`` within its
prefix, estimated here by grow-shrink against a local evaluator.

A local evaluator exposes

* ``score(x, mask)``: local score of ``x`` with parent bitmask ``mask``;
* ``add_gains(x, mask, candidates)``: score change from adding each candidate;
* ``drop_gains(x, mask, members)``: score change from dropping each member;
* ``tol``: a change counts as an improvement only if it exceeds ``tol``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, FrozenSet, Iterable, List, Sequence, Tuple

from ._bits import from_mask, iter_bits, to_mask
from .errors import NonUniqueBoundary, TooLarge
from .graph import Dag
from .oracle import IndependenceOracle

MAX_BOUNDARY_CANDIDATES = 12


class Permutation:
    """A vertex ordering with its inverse index (``index[v]`` is v's position)."""

    __slots__ = ("order", "index")

    def __init__(self, order: Iterable[int]):
        order = tuple(order)
        m = len(order)
        if sorted(order) != list(range(m)):
            raise ValueError(f"{order} is not a permutation of 0..{m - 1}")
        index = [0] * m
        for pos, v in enumerate(order):
            index[v] = pos
        self.order = order
        self.index = tuple(index)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(range(m))

    @classmethod
    def from_labels(cls, labels: Iterable[int]) -> "Permutation":
        """Build from 1-based vertex labels."""
        return cls(v - 1 for v in labels)

    def labels(self) -> Tuple[int, ...]:
        return tuple(v + 1 for v in self.order)

    def prefix(self, v: int) -> FrozenSet[int]:
        return frozenset(self.order[: self.index[v]])

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.order == other.order

    def __hash__(self) -> int:
        return hash(self.order)

    def __repr__(self) -> str:
        return f"Permutation({list(self.order)})"


def prefix_masks(order: Sequence[int]) -> List[Tuple[int, int]]:
    """(vertex, bitmask of its predecessors) in permutation order."""
    out = []
    seen = 0
    for v in order:
        out.append((v, seen))
        seen |= 1 << v
    return out


def ru_parents(oracle: IndependenceOracle, x: int, prefix: int) -> int:
    parents = 0
    for j in iter_bits(prefix):
        if not oracle.ci_mask(j, x, prefix & ~(1 << j)):
            parents |= 1 << j
    return parents


def induce_ru(oracle: IndependenceOracle, p: Permutation) -> Dag:
    if len(p) != oracle.m:
        raise ValueError("permutation does not span the oracle's vertices")
    pa = [0] * oracle.m
    for v, pre in prefix_masks(p.order):
        pa[v] = ru_parents(oracle, v, pre)
    return Dag.from_parent_masks(pa)


class OracleEvaluator:
    """Local evaluator driven by CI answers instead of a likelihood.

    Adding ``y`` to ``M`` gains +1 when ``x`` and ``y`` are dependent given
    ``M`` and -1 otherwise; dropping ``y`` gains +1 when ``x`` and ``y`` are
    independent given ``M \\ {y}``.  This is the limit behaviour of a locally
    consistent score.  The local score of a parent set is minus its size.
    """

    tol = 0

    def __init__(self, oracle: IndependenceOracle):
        self.oracle = oracle

    def score(self, x: int, mask: int) -> int:
        return -mask.bit_count()

    def add_gains(self, x: int, mask: int, candidates: Sequence[int]) -> List[int]:
        ci = self.oracle.ci_mask
        return [-1 if ci(x, y, mask) else 1 for y in candidates]

    def drop_gains(self, x: int, mask: int, members: Sequence[int]) -> List[int]:
        ci = self.oracle.ci_mask
        return [1 if ci(x, y, mask & ~(1 << y)) else -1 for y in members]


def _best(gains, items):
    # first maximum wins, so ties go to the lowest vertex index
    best_i = 0
    for i in range(1, len(gains)):
        if gains[i] > gains[best_i]:
            best_i = i
    return items[best_i], gains[best_i]


def grow_mask(ev, x: int, z: int) -> int:
    selected = 0
    remaining = z
    while remaining:
        cands = list(iter_bits(remaining))
        y, gain = _best(ev.add_gains(x, selected, cands), cands)
        if gain <= ev.tol:
            break
        selected |= 1 << y
        remaining &= ~(1 << y)
    return selected


def shrink_mask(ev, x: int, z: int) -> Tuple[int, float]:
    kept = z
    while kept:
        members = list(iter_bits(kept))
        y, gain = _best(ev.drop_gains(x, kept, members), members)
        if gain <= ev.tol:
            break
        kept &= ~(1 << y)
    return kept, ev.score(x, kept)


def grow(ev, x: int, z: Iterable[int]) -> FrozenSet[int]:
    """Greedy forward selection of a blanket for ``x`` out of ``z``."""
    z = to_mask(z)
    if z >> x & 1:
        raise ValueError("target must not be among the candidates")
    return from_mask(grow_mask(ev, x, z))


def shrink(ev, x: int, z: Iterable[int]) -> Tuple[FrozenSet[int], float]:
    """Greedy backward elimination; returns the kept set and its local score."""
    z = to_mask(z)
    if z >> x & 1:
        raise ValueError("target must not be among the candidates")
    kept, score = shrink_mask(ev, x, z)
    return from_mask(kept), score


def grow_shrink_mask(ev, x: int, z: int) -> Tuple[int, float]:
    return shrink_mask(ev, x, grow_mask(ev, x, z))


def grow_shrink_provider(ev) -> Callable[[int, FrozenSet[int]], FrozenSet[int]]:
    def provider(x, prefix):
        kept, _ = grow_shrink_mask(ev, x, to_mask(prefix))
        return from_mask(kept)

    return provider


def induce_vp(boundary_provider: Callable[[int, FrozenSet[int]], Iterable[int]], p: Permutation) -> Dag:
    pa = [0] * len(p)
    for pos, v in enumerate(p.order):
        boundary = to_mask(boundary_provider(v, frozenset(p.order[:pos])))
        allowed = to_mask(p.order[:pos])
        if boundary & ~allowed:
            raise ValueError(f"boundary for {v} leaves its prefix")
        pa[v] = boundary
    return Dag.from_parent_masks(pa)


def markov_boundary_bruteforce(oracle: IndependenceOracle, x: int, z: Iterable[int]) -> FrozenSet[int]:
    """The unique minimal blanket of ``x`` within ``z``, found by enumeration."""
    z = sorted(set(z))
    if x in z:
        raise ValueError("target must not be among the candidates")
    if len(z) > MAX_BOUNDARY_CANDIDATES:
        raise TooLarge(f"{len(z)} candidates exceed the enumeration guard ({MAX_BOUNDARY_CANDIDATES})")
    z_mask = to_mask(z)
    blankets = []
    for size in range(len(z) + 1):
        for combo in combinations(z, size):
            m_mask = to_mask(combo)
            rest = z_mask & ~m_mask
            if all(oracle.ci_mask(x, w, m_mask) for w in iter_bits(rest)):
                blankets.append(m_mask)
    minimal = [b for b in blankets if not any(o != b and o & b == o for o in blankets)]
    if len(minimal) != 1:
        raise NonUniqueBoundary(f"{len(minimal)} minimal blankets for {x}: {[sorted(from_mask(b)) for b in minimal]}")
    return from_mask(minimal[0])
