from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grasp.errors import CycleDetected, InvalidQuery, ParseError, SelfLoop, TooLarge, VertexOutOfRange
from grasp.graph import (
    Cpdag,
    Dag,
    EdgeTier,
    all_dsep_statements,
    covered_edges,
    d_separated,
    edges_of_tier,
    format_graph,
    is_covered,
    is_singular,
    markov_equivalent,
    parse_graph,
    reverse_edge,
    singleton_queries,
    to_cpdag,
    v_structures,
)

from .conftest import dags, labels, random_dag_np


# -- brute-force references ----------------------------------------------------


def simple_paths(g, i, j):
    adj = {v: set() for v in range(g.m)}
    for a, b in g.edges:
        adj[a].add(b)
        adj[b].add(a)

    def walk(path):
        v = path[-1]
        if v == j:
            yield list(path)
            return
        for w in sorted(adj[v]):
            if w not in path:
                path.append(w)
                yield from walk(path)
                path.pop()

    yield from walk([i])


def path_dseparated(g, i, j, z):
    z = set(z)
    for path in simple_paths(g, i, j):
        open_ = True
        for a, v, b in zip(path, path[1:], path[2:]):
            collider = g.has_edge(a, v) and g.has_edge(b, v)
            if collider:
                if not (g.descendants(v) & z):
                    open_ = False
                    break
            elif v in z:
                open_ = False
                break
        if open_:
            return False
    return True


def mec_members(g):
    """All DAGs on g's skeleton that entail exactly g's d-separations."""
    target = all_dsep_statements(g)
    skel = sorted(g.skeleton())
    out = []
    for flips in product((False, True), repeat=len(skel)):
        edges = [(b, a) if f else (a, b) for (a, b), f in zip(skel, flips)]
        try:
            h = Dag(g.m, edges)
        except CycleDetected:
            continue
        if all_dsep_statements(h) == target:
            out.append(h)
    return out


def has_other_directed_path(g, j, k):
    # any directed j ~> k path of length >= 2
    stack = [c for c in g.children(j) if c != k]
    seen = set()
    while stack:
        v = stack.pop()
        if v == k:
            return True
        if v in seen:
            continue
        seen.add(v)
        stack.extend(g.children(v))
    return False


# -- construction ----------------------------------------------------------------


def test_cycle_is_rejected_with_witness():
    with pytest.raises(CycleDetected) as exc:
        Dag(3, [(0, 1), (1, 2), (2, 0)])
    assert set(exc.value.cycle) >= {0, 1, 2}


def test_bad_edges():
    with pytest.raises(SelfLoop):
        Dag(2, [(1, 1)])
    with pytest.raises(VertexOutOfRange):
        Dag(2, [(0, 2)])
    with pytest.raises(VertexOutOfRange):
        Dag(0)


def test_accessors_on_small_graph():
    g = Dag(4, [(0, 1), (1, 2), (0, 3)])
    assert g.parents(2) == {1}
    assert g.children(0) == {1, 3}
    assert g.ancestors(2) == {0, 1}
    assert g.descendants(0) == {0, 1, 2, 3}
    assert g.nondescendants(1) == {0, 3}
    assert g.edge_count == 3
    order = g.topological_order()
    assert all(order.index(a) < order.index(b) for a, b in g.edges)


def test_from_parent_masks_round_trip():
    g = Dag(4, [(0, 2), (1, 2), (2, 3)])
    assert Dag.from_parent_masks(g.parent_masks) == g
    assert hash(Dag.from_parent_masks(g.parent_masks)) == hash(g)


# -- d-separation ----------------------------------------------------------------


def test_collider_chain_fork():
    chain = Dag(3, [(0, 1), (1, 2)])
    fork = Dag(3, [(1, 0), (1, 2)])
    collider = Dag(3, [(0, 1), (2, 1)])
    for g in (chain, fork):
        assert not d_separated(g, 0, 2)
        assert d_separated(g, 0, 2, {1})
    assert d_separated(collider, 0, 2)
    assert not d_separated(collider, 0, 2, {1})


def test_descendant_of_collider_opens_it():
    g = Dag(4, [(0, 1), (2, 1), (1, 3)])
    assert not d_separated(g, 0, 2, {3})


def test_invalid_queries():
    g = Dag(3, [(0, 1)])
    with pytest.raises(InvalidQuery):
        d_separated(g, 0, 0)
    with pytest.raises(InvalidQuery):
        d_separated(g, 0, 1, {1})
    with pytest.raises(InvalidQuery):
        d_separated(g, 0, 5)


def test_dsep_matches_path_enumeration_on_random_graphs():
    rng = np.random.default_rng(7)
    for _ in range(200):
        g = random_dag_np(rng, int(rng.integers(2, 7)))
        for i, j, z in singleton_queries(g.m):
            zs = {v for v in range(g.m) if z >> v & 1}
            assert d_separated(g, i, j, zs) == path_dseparated(g, i, j, zs), (g, i, j, zs)


@given(dags(min_m=2, max_m=6), st.data())
def test_dsep_symmetric(g, data):
    i, j = data.draw(st.lists(st.integers(0, g.m - 1), min_size=2, max_size=2, unique=True))
    z = data.draw(st.sets(st.sampled_from([v for v in range(g.m) if v not in (i, j)] or [None])))
    z.discard(None)
    assert d_separated(g, i, j, z) == d_separated(g, j, i, z)


def test_singleton_query_guard():
    with pytest.raises(TooLarge):
        singleton_queries(13)


# -- edge classes ----------------------------------------------------------------


TUCK_DAG = labels([(1, 3), (1, 4), (2, 5), (3, 4), (4, 5), (3, 6), (4, 6), (5, 7)])


def test_edge_classes_on_seven_vertex_example():
    g = Dag(7, TUCK_DAG)
    assert is_covered(g, 2, 3)
    assert not is_covered(g, 3, 4) and is_singular(g, 3, 4)
    assert not is_singular(g, 0, 3)  # 1 -> 3 -> 4 is another path
    assert set(edges_of_tier(g, EdgeTier.COVERED)) <= set(edges_of_tier(g, EdgeTier.SINGULAR))
    assert set(edges_of_tier(g, 2)) == set(g.edges)


@given(dags(min_m=2, max_m=6))
def test_covered_implies_singular_and_matches_definition(g):
    for j, k in g.edges:
        assert is_covered(g, j, k) == (g.parents(j) == g.parents(k) - {j})
        assert is_singular(g, j, k) == (not has_other_directed_path(g, j, k))
        if is_covered(g, j, k):
            assert is_singular(g, j, k)


@given(dags(min_m=2, max_m=5))
def test_reversing_a_covered_edge_stays_in_the_class(g):
    for j, k in covered_edges(g):
        assert markov_equivalent(g, reverse_edge(g, j, k))


# -- CPDAGs ----------------------------------------------------------------------


def test_cpdag_examples():
    chain = to_cpdag(Dag(3, [(0, 1), (1, 2)]))
    assert chain.directed == frozenset() and chain.undirected == {(0, 1), (1, 2)}
    coll = to_cpdag(Dag(3, [(0, 2), (1, 2)]))
    assert coll.directed == {(0, 2), (1, 2)} and not coll.undirected
    # collider followed by a chain: Meek R1 orients 2 -> 3
    g = Dag(4, [(0, 2), (1, 2), (2, 3)])
    assert to_cpdag(g).directed == {(0, 2), (1, 2), (2, 3)}


def test_cpdag_matches_mec_enumeration():
    rng = np.random.default_rng(11)
    for _ in range(120):
        g = random_dag_np(rng, int(rng.integers(2, 6)))
        members = mec_members(g)
        assert g in members
        c = to_cpdag(g)
        for a, b in g.skeleton():
            dirs = {(x, y) for h in members for x, y in h.edges if {x, y} == {a, b}}
            if len(dirs) == 1:
                assert dirs <= c.directed
            else:
                assert (a, b) in c.undirected
        for h in members:
            assert to_cpdag(h) == c
            assert markov_equivalent(g, h)


@given(dags(min_m=2, max_m=5))
def test_markov_equivalence_agrees_with_dseps(g):
    for j, k in g.edges:
        try:
            h = reverse_edge(g, j, k)
        except CycleDetected:
            continue
        assert markov_equivalent(g, h) == (all_dsep_statements(g) == all_dsep_statements(h))


def test_v_structures():
    g = Dag(4, [(0, 2), (1, 2), (0, 1), (2, 3), (1, 3)])
    assert v_structures(g) == set()
    assert v_structures(Dag(3, [(0, 2), (1, 2)])) == {(0, 2, 1)}


# -- text format -----------------------------------------------------------------


@given(dags(min_m=1, max_m=7))
def test_graph_text_round_trip(g):
    assert parse_graph(format_graph(g)) == g
    c = to_cpdag(g)
    back = parse_graph(format_graph(c))
    if c.undirected:
        assert back == c
    else:
        assert back == g or to_cpdag(back) == c


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_graph("1 2\n")
    with pytest.raises(ParseError):
        parse_graph("dag 3\n1 x\n")
    with pytest.raises(ParseError):
        parse_graph("dag 3\n1 2 3 4\n")
    with pytest.raises(CycleDetected):
        parse_graph("dag 2\n1 2\n2 1\n")
    c = parse_graph("# comment\ndag 3\n1 3\n2 -- 3\n")
    assert isinstance(c, Cpdag) and c.undirected == {(1, 2)}
