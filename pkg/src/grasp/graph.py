"""DAGs, d-separation, edge tiers, CPDAGs and Markov equivalence.

Vertices are the integers ``0..m-1``.  Text files use 1-based labels; the
conversion happens only in :func:`parse_graph` / :func:`format_graph`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from itertools import combinations
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from ._bits import from_mask, iter_bits, subsets, to_mask
from .errors import CycleDetected, InvalidQuery, ParseError, SelfLoop, TooLarge, VertexOutOfRange

Edge = Tuple[int, int]

MAX_ENUMERATION_VERTICES = 12


class EdgeTier(IntEnum):
    COVERED = 0
    SINGULAR = 1
    ALL = 2


class Dag:
    """Immutable directed acyclic graph over ``0..m-1``.

    Parent and child sets are kept as bitmasks so that covered-edge tests and
    reachability are cheap.  Use :func:`validate_dag` (or the constructor) for
    untrusted input; :meth:`from_parent_masks` skips the cycle check and is
    meant for graphs that are acyclic by construction (induced DAGs).
    """

    __slots__ = ("m", "_pa", "_ch", "_edges", "_desc", "_anc")

    def __init__(self, m: int, edges: Iterable[Edge] = ()):
        if m < 1:
            raise VertexOutOfRange(f"vertex count must be positive, got {m}")
        pa = [0] * m
        for j, k in edges:
            if not (0 <= j < m and 0 <= k < m):
                raise VertexOutOfRange(f"edge ({j}, {k}) outside 0..{m - 1}")
            if j == k:
                raise SelfLoop(f"self-loop at vertex {j}")
            pa[k] |= 1 << j
        self._init(m, tuple(pa))
        cycle = _find_cycle(m, self._ch)
        if cycle is not None:
            raise CycleDetected(cycle)

    @classmethod
    def from_parent_masks(cls, parent_masks: Sequence[int]) -> "Dag":
        g = cls.__new__(cls)
        g._init(len(parent_masks), tuple(parent_masks))
        return g

    def _init(self, m: int, pa: Tuple[int, ...]) -> None:
        self.m = m
        self._pa = pa
        ch = [0] * m
        for k, mask in enumerate(pa):
            for j in iter_bits(mask):
                ch[j] |= 1 << k
        self._ch = tuple(ch)
        self._edges = None
        self._desc = None
        self._anc = None

    # -- basic structure -------------------------------------------------

    @property
    def parent_masks(self) -> Tuple[int, ...]:
        return self._pa

    @property
    def child_masks(self) -> Tuple[int, ...]:
        return self._ch

    @property
    def edges(self) -> Tuple[Edge, ...]:
        """All edges in canonical (lexicographic) order."""
        if self._edges is None:
            self._edges = tuple(sorted((j, k) for k in range(self.m) for j in iter_bits(self._pa[k])))
        return self._edges

    @property
    def edge_count(self) -> int:
        return sum(mask.bit_count() for mask in self._pa)

    def has_edge(self, j: int, k: int) -> bool:
        return bool(self._pa[k] >> j & 1)

    def adjacent(self, j: int, k: int) -> bool:
        return self.has_edge(j, k) or self.has_edge(k, j)

    def parents(self, j: int) -> FrozenSet[int]:
        return from_mask(self._pa[j])

    def children(self, j: int) -> FrozenSet[int]:
        return from_mask(self._ch[j])

    def descendant_mask(self, j: int) -> int:
        """Descendants of ``j``, including ``j`` itself."""
        if self._desc is None:
            desc = [0] * self.m
            for v in reversed(self.topological_order()):
                mask = 1 << v
                for c in iter_bits(self._ch[v]):
                    mask |= desc[c]
                desc[v] = mask
            self._desc = tuple(desc)
        return self._desc[j]

    def ancestor_mask(self, j: int) -> int:
        """Proper ancestors of ``j`` (transitive closure of the parents)."""
        if self._anc is None:
            anc = [0] * self.m
            for v in self.topological_order():
                mask = 0
                for p in iter_bits(self._pa[v]):
                    mask |= anc[p] | (1 << p)
                anc[v] = mask
            self._anc = tuple(anc)
        return self._anc[j]

    def descendants(self, j: int) -> FrozenSet[int]:
        return from_mask(self.descendant_mask(j))

    def ancestors(self, j: int) -> FrozenSet[int]:
        return from_mask(self.ancestor_mask(j))

    def nondescendants(self, j: int) -> FrozenSet[int]:
        return from_mask(((1 << self.m) - 1) & ~self.descendant_mask(j))

    def topological_order(self) -> List[int]:
        indeg = [mask.bit_count() for mask in self._pa]
        ready = [v for v in range(self.m) if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop()
            order.append(v)
            for c in iter_bits(self._ch[v]):
                indeg[c] -= 1
                if indeg[c] == 0:
                    ready.append(c)
        return order

    def skeleton(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset((min(j, k), max(j, k)) for j, k in self.edges)

    def __eq__(self, other) -> bool:
        return isinstance(other, Dag) and self.m == other.m and self._pa == other._pa

    def __hash__(self) -> int:
        return hash((self.m, self._pa))

    def __repr__(self) -> str:
        return f"Dag(m={self.m}, edges={list(self.edges)})"


def _find_cycle(m: int, ch: Sequence[int]) -> Optional[List[int]]:
    WHITE, GREY, BLACK = 0, 1, 2
    colour = [WHITE] * m
    parent = [-1] * m
    for root in range(m):
        if colour[root] != WHITE:
            continue
        stack = [(root, iter(iter_bits(ch[root])))]
        colour[root] = GREY
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[v] = BLACK
                stack.pop()
            elif colour[nxt] == GREY:
                cycle = [nxt]
                u = v
                while u != nxt:
                    cycle.append(u)
                    u = parent[u]
                cycle.append(nxt)
                cycle.reverse()
                return cycle
            elif colour[nxt] == WHITE:
                colour[nxt] = GREY
                parent[nxt] = v
                stack.append((nxt, iter(iter_bits(ch[nxt]))))
    return None


def validate_dag(m: int, edges: Iterable[Edge]) -> Dag:
    return Dag(m, edges)


# -- d-separation ----------------------------------------------------------


def reachable_mask(g: Dag, i: int, z_mask: int) -> int:
    """Vertices d-connected to ``i`` given ``z_mask`` (Bayes-ball traversal)."""
    pa, ch = g._pa, g._ch
    # Z together with its ancestors: colliders in this set are open.
    opens = z_mask
    for v in iter_bits(z_mask):
        opens |= g.ancestor_mask(v)
    reached = 0
    seen_up = 0  # arrived from a child, moving against edge direction
    seen_down = 0  # arrived from a parent
    stack = [(i, True)]
    while stack:
        v, up = stack.pop()
        bit = 1 << v
        if up:
            if seen_up & bit:
                continue
            seen_up |= bit
        else:
            if seen_down & bit:
                continue
            seen_down |= bit
        in_z = z_mask & bit
        if not in_z:
            reached |= bit
        if up:
            if not in_z:
                for p in iter_bits(pa[v]):
                    stack.append((p, True))
                for c in iter_bits(ch[v]):
                    stack.append((c, False))
        else:
            if not in_z:
                for c in iter_bits(ch[v]):
                    stack.append((c, False))
            if opens & bit:
                for p in iter_bits(pa[v]):
                    stack.append((p, True))
    return reached & ~(1 << i)


def _check_query(m: int, i: int, j: int, z_mask: int) -> None:
    if not (0 <= i < m and 0 <= j < m) or z_mask >> m:
        raise InvalidQuery(f"query ({i}, {j} | {sorted(iter_bits(z_mask))}) outside 0..{m - 1}")
    if i == j:
        raise InvalidQuery("query needs two distinct vertices")
    if z_mask >> i & 1 or z_mask >> j & 1:
        raise InvalidQuery("conditioning set must exclude the queried vertices")


def d_separated(g: Dag, i: int, j: int, z: Iterable[int] = ()) -> bool:
    z_mask = to_mask(z)
    _check_query(g.m, i, j, z_mask)
    return not (reachable_mask(g, i, z_mask) >> j & 1)


def singleton_queries(m: int) -> List[Tuple[int, int, int]]:
    """Every (i, j, z_mask) with i < j and i, j not in z, in a fixed order."""
    if m > MAX_ENUMERATION_VERTICES:
        raise TooLarge(f"m={m} exceeds the enumeration guard ({MAX_ENUMERATION_VERTICES})")
    full = (1 << m) - 1
    out = []
    for i, j in combinations(range(m), 2):
        rest = full & ~(1 << i) & ~(1 << j)
        for z in sorted(subsets(rest)):
            out.append((i, j, z))
    return out


def all_dsep_statements(g: Dag) -> Set[Tuple[int, int, FrozenSet[int]]]:
    """Every singleton d-separation ``(i, j, z)`` with ``i < j`` entailed by ``g``."""
    if g.m > MAX_ENUMERATION_VERTICES:
        raise TooLarge(f"m={g.m} exceeds the enumeration guard ({MAX_ENUMERATION_VERTICES})")
    full = (1 << g.m) - 1
    out = set()
    for i in range(g.m):
        for z in subsets(full & ~(1 << i)):
            reach = reachable_mask(g, i, z)
            free = full & ~z & ~reach & ~((1 << (i + 1)) - 1)
            zs = from_mask(z)
            for j in iter_bits(free):
                out.add((i, j, zs))
    return out


# -- edge tiers ------------------------------------------------------------


def is_covered(g: Dag, j: int, k: int) -> bool:
    return g._pa[j] == g._pa[k] & ~(1 << j)


def is_singular(g: Dag, j: int, k: int) -> bool:
    others = g._ch[j] & ~(1 << k)
    for c in iter_bits(others):
        if g.descendant_mask(c) >> k & 1:
            return False
    return True


def covered_edges(g: Dag) -> List[Edge]:
    return [(j, k) for j, k in g.edges if is_covered(g, j, k)]


def singular_edges(g: Dag) -> List[Edge]:
    return [(j, k) for j, k in g.edges if is_singular(g, j, k)]


def edges_of_tier(g: Dag, t: Union[EdgeTier, int]) -> List[Edge]:
    t = EdgeTier(t)
    if t == EdgeTier.COVERED:
        return covered_edges(g)
    if t == EdgeTier.SINGULAR:
        return singular_edges(g)
    return list(g.edges)


# -- CPDAGs ----------------------------------------------------------------


@dataclass(frozen=True)
class Cpdag:
    """Mixed graph: ``directed`` holds (j, k) pairs, ``undirected`` holds (a, b) with a < b."""

    m: int
    directed: FrozenSet[Edge]
    undirected: FrozenSet[Tuple[int, int]]

    def __post_init__(self):
        und = frozenset((min(a, b), max(a, b)) for a, b in self.undirected)
        object.__setattr__(self, "undirected", und)
        object.__setattr__(self, "directed", frozenset(self.directed))
        for a, b in self.directed | und:
            if a == b:
                raise SelfLoop(f"self-loop at vertex {a}")
            if not (0 <= a < self.m and 0 <= b < self.m):
                raise VertexOutOfRange(f"edge ({a}, {b}) outside 0..{self.m - 1}")
        dir_pairs = [(min(a, b), max(a, b)) for a, b in self.directed]
        if len(set(dir_pairs)) != len(dir_pairs) or set(dir_pairs) & und:
            raise ValueError("a vertex pair carries more than one edge mark")

    def adjacencies(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset((min(a, b), max(a, b)) for a, b in self.directed) | self.undirected


def v_structures(g: Dag) -> Set[Tuple[int, int, int]]:
    """Triples (a, k, b) with a < b, a -> k <- b and a, b non-adjacent."""
    out = set()
    for k in range(g.m):
        for a, b in combinations(sorted(iter_bits(g._pa[k])), 2):
            if not g.adjacent(a, b):
                out.add((a, k, b))
    return out


def to_cpdag(g: Dag) -> Cpdag:
    m = g.m
    adj = [0] * m
    for j, k in g.edges:
        adj[j] |= 1 << k
        adj[k] |= 1 << j
    directed = set()
    for a, k, b in v_structures(g):
        directed.add((a, k))
        directed.add((b, k))
    undirected = {(j, k) for j, k in g.edges if (j, k) not in directed}

    def is_adj(a, b):
        return bool(adj[a] >> b & 1)

    def orient(a, b):
        undirected.discard((a, b))
        undirected.discard((b, a))
        directed.add((a, b))

    changed = True
    while changed:
        changed = False
        for x, y in sorted(undirected):
            if (x, y) not in undirected:
                continue
            for a, b in ((x, y), (y, x)):
                if _meek_applies(a, b, m, directed, undirected, is_adj):
                    orient(a, b)
                    changed = True
                    break
    und = frozenset((min(a, b), max(a, b)) for a, b in undirected)
    return Cpdag(m, frozenset(directed), und)


def _meek_applies(a, b, m, directed, undirected, is_adj) -> bool:
    """Whether one of Meek's rules R1-R4 orients the undirected edge a - b as a -> b."""

    def und(p, q):
        return (p, q) in undirected or (q, p) in undirected

    # R1: c -> a - b with c, b non-adjacent.
    for c in range(m):
        if (c, a) in directed and not is_adj(c, b) and c != b:
            return True
    # R2: a -> c -> b.
    for c in range(m):
        if (a, c) in directed and (c, b) in directed:
            return True
    # R3: a - c -> b, a - d -> b, c and d non-adjacent.
    cands = [c for c in range(m) if und(a, c) and (c, b) in directed]
    for c, d in combinations(cands, 2):
        if not is_adj(c, d):
            return True
    # R4: a - c -> d -> b with c, b non-adjacent and a adjacent to d.
    for d in range(m):
        if (d, b) in directed and is_adj(a, d):
            for c in range(m):
                if und(a, c) and (c, d) in directed and not is_adj(c, b) and c != b:
                    return True
    return False


def markov_equivalent(g: Dag, h: Dag) -> bool:
    if g.m != h.m:
        raise ValueError("graphs have different vertex counts")
    return g.skeleton() == h.skeleton() and v_structures(g) == v_structures(h)


def reverse_edge(g: Dag, j: int, k: int) -> Dag:
    edges = [e for e in g.edges if e != (j, k)] + [(k, j)]
    return Dag(g.m, edges)


# -- text format -----------------------------------------------------------


def format_graph(g: Union[Dag, Cpdag]) -> str:
    lines = [f"dag {g.m}"]
    if isinstance(g, Dag):
        lines += [f"{j + 1} {k + 1}" for j, k in g.edges]
    else:
        lines += [f"{j + 1} {k + 1}" for j, k in sorted(g.directed)]
        lines += [f"{a + 1} -- {b + 1}" for a, b in sorted(g.undirected)]
    return "\n".join(lines) + "\n"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_graph(text: str) -> Union[Dag, Cpdag]:
    """Parse the edge-list format; returns a Cpdag only if undirected edges appear."""
    m = None
    directed, undirected = [], []
    for lineno, line in _content_lines(text):
        parts = line.split()
        if m is None:
            if len(parts) != 2 or parts[0] != "dag":
                raise ParseError(f"line {lineno}: expected 'dag <m>' header")
            m = _parse_int(parts[1], lineno)
            continue
        if len(parts) == 3 and parts[1] == "--":
            undirected.append((_parse_int(parts[0], lineno) - 1, _parse_int(parts[2], lineno) - 1))
        elif len(parts) == 2:
            directed.append((_parse_int(parts[0], lineno) - 1, _parse_int(parts[1], lineno) - 1))
        else:
            raise ParseError(f"line {lineno}: cannot parse edge {line!r}")
    if m is None:
        raise ParseError("missing 'dag <m>' header")
    if undirected:
        return Cpdag(m, frozenset(directed), frozenset(undirected))
    return Dag(m, directed)


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, got {token!r}") from None


def as_cpdag(g: Union[Dag, Cpdag]) -> Cpdag:
    return to_cpdag(g) if isinstance(g, Dag) else g
