"""Conditional-independence oracles answering singleton queries ``i _||_ j | z``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Optional, Set, Tuple

from ._bits import from_mask, to_mask
from .errors import ParseError, VertexOutOfRange
from .graph import Dag, _check_query, _content_lines, _parse_int, format_graph, parse_graph, reachable_mask, singleton_queries


@dataclass(frozen=True, order=True)
class CiStatement:
    """A singleton CI statement, normalised so that ``i < j``."""

    i: int
    j: int
    z: FrozenSet[int] = frozenset()

    def __post_init__(self):
        z = frozenset(self.z)
        i, j = self.i, self.j
        if i == j:
            raise ValueError("CI statement needs two distinct vertices")
        if i in z or j in z:
            raise ValueError("conditioning set must exclude the queried vertices")
        if i > j:
            i, j = j, i
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "z", z)

    @property
    def key(self) -> Tuple[int, int, int]:
        return (self.i, self.j, to_mask(self.z))

    def __str__(self) -> str:
        zs = ",".join(str(v + 1) for v in sorted(self.z))
        return f"<{self.i + 1},{self.j + 1}|{zs}>"


class IndependenceOracle:
    """Answers ``ci(i, j, z)`` from a DAG's d-separations, an explicit list, or both.

    ``kind`` is ``"dsep"`` (d-separation in ``dag``), ``"augmented"``
    (d-separation or listed) or ``"explicit"`` (listed only).  Listed
    statements are taken literally; no graphoid closure is computed.

    Answers are memoised in a plain dict.  Concurrent readers are fine under
    CPython since a racing write only stores the same boolean twice.
    """

    def __init__(self, m: int, dag: Optional[Dag] = None, extra: Iterable[CiStatement] = (), explicit: bool = False):
        if dag is not None and dag.m != m:
            raise ValueError("dag vertex count does not match m")
        self.m = m
        self.dag = dag
        extra = frozenset(s if isinstance(s, CiStatement) else CiStatement(*s) for s in extra)
        for s in extra:
            if s.j >= m or s.i < 0 or any(v < 0 or v >= m for v in s.z):
                raise VertexOutOfRange(f"statement {s} outside 1..{m}")
        self.extra = extra
        self._listed = frozenset(s.key for s in extra)
        if explicit:
            self.kind = "explicit"
        elif extra:
            self.kind = "augmented"
        else:
            self.kind = "dsep"
        if self.kind != "explicit" and dag is None:
            raise ValueError("a dag is required unless the oracle is explicit")
        self._cache: Dict[Tuple[int, int, int], bool] = {}

    def ci(self, i: int, j: int, z: Iterable[int] = ()) -> bool:
        z_mask = to_mask(z)
        _check_query(self.m, i, j, z_mask)
        return self.ci_mask(i, j, z_mask)

    def ci_mask(self, i: int, j: int, z_mask: int) -> bool:
        """Unchecked query with the conditioning set given as a bitmask."""
        if i > j:
            i, j = j, i
        key = (i, j, z_mask)
        ans = self._cache.get(key)
        if ans is None:
            ans = key in self._listed
            if not ans and self.kind != "explicit":
                ans = not (reachable_mask(self.dag, i, z_mask) >> j & 1)
            self._cache[key] = ans
        return ans

    def statements(self) -> Set[CiStatement]:
        """Every singleton statement the oracle affirms (small m only)."""
        return {CiStatement(i, j, from_mask(z)) for i, j, z in singleton_queries(self.m) if self.ci_mask(i, j, z)}

    def statement_mask(self, queries=None) -> int:
        """Affirmed statements as a bitmask over ``singleton_queries(m)``."""
        queries = singleton_queries(self.m) if queries is None else queries
        out = 0
        for idx, (i, j, z) in enumerate(queries):
            if self.ci_mask(i, j, z):
                out |= 1 << idx
        return out

    def __repr__(self) -> str:
        return f"IndependenceOracle(kind={self.kind!r}, m={self.m}, listed={len(self.extra)})"


def oracle_from_dag(g: Dag) -> IndependenceOracle:
    return IndependenceOracle(g.m, dag=g)


def oracle_augmented(g: Dag, extra: Iterable[CiStatement]) -> IndependenceOracle:
    return IndependenceOracle(g.m, dag=g, extra=extra)


def oracle_from_list(statements: Iterable[CiStatement], m: int) -> IndependenceOracle:
    return IndependenceOracle(m, extra=statements, explicit=True)


# -- text format -----------------------------------------------------------


def format_ci_list(statements: Iterable[CiStatement], m: int) -> str:
    lines = [f"ci {m}"]
    for s in sorted(statements):
        z = " ".join(str(v + 1) for v in sorted(s.z))
        lines.append(f"{s.i + 1} {s.j + 1} | {z}".rstrip())
    return "\n".join(lines) + "\n"


def parse_ci_list(text: str) -> Tuple[int, Set[CiStatement]]:
    m = None
    out = set()
    for lineno, line in _content_lines(text):
        if m is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "ci":
                raise ParseError(f"line {lineno}: expected 'ci <m>' header")
            m = _parse_int(parts[1], lineno)
            continue
        if "|" not in line:
            raise ParseError(f"line {lineno}: statement needs a '|' separator")
        left, right = line.split("|", 1)
        pair = left.split()
        if len(pair) != 2:
            raise ParseError(f"line {lineno}: expected two vertices before '|'")
        i, j = (_parse_int(t, lineno) - 1 for t in pair)
        z = frozenset(_parse_int(t, lineno) - 1 for t in right.split())
        try:
            out.add(CiStatement(i, j, z))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if m is None:
        raise ParseError("missing 'ci <m>' header")
    return m, out


def format_model(g: Optional[Dag], statements: Iterable[CiStatement], m: int) -> str:
    text = format_graph(g) if g is not None else ""
    return text + format_ci_list(statements, m)


def parse_model(text: str) -> IndependenceOracle:
    """Parse a model file: an optional ``dag`` block followed by an optional ``ci`` block."""
    dag_lines, ci_lines, current = [], [], None
    for raw in text.splitlines():
        head = raw.split("#", 1)[0].split()
        if head and head[0] in ("dag", "ci") and len(head) == 2:
            current = dag_lines if head[0] == "dag" else ci_lines
        if current is None:
            if head:
                raise ParseError("model file must start with a 'dag' or 'ci' block")
            continue
        current.append(raw)
    g = parse_graph("\n".join(dag_lines)) if dag_lines else None
    if g is not None and not isinstance(g, Dag):
        raise ParseError("model dag block must not contain undirected edges")
    if ci_lines:
        m, stmts = parse_ci_list("\n".join(ci_lines))
    else:
        m, stmts = (g.m if g is not None else None), set()
    if g is None:
        if m is None:
            raise ParseError("empty model file")
        return oracle_from_list(stmts, m)
    if m != g.m:
        raise ParseError(f"ci block declares {m} vertices but dag has {g.m}")
    return oracle_augmented(g, stmts)
