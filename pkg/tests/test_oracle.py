import pytest
from hypothesis import given
from hypothesis import strategies as st

from grasp.errors import InvalidQuery, ParseError, VertexOutOfRange
from grasp.graph import Dag, d_separated, singleton_queries
from grasp.oracle import (
    CiStatement,
    IndependenceOracle,
    format_ci_list,
    format_model,
    oracle_augmented,
    oracle_from_dag,
    oracle_from_list,
    parse_ci_list,
    parse_model,
)

from .conftest import dags


def test_statement_normalisation():
    s = CiStatement(3, 1, {0})
    assert (s.i, s.j, s.z) == (1, 3, frozenset({0}))
    assert str(s) == "<2,4|1>"
    with pytest.raises(ValueError):
        CiStatement(1, 1)
    with pytest.raises(ValueError):
        CiStatement(0, 1, {1})


def test_kinds():
    g = Dag(3, [(0, 1), (1, 2)])
    assert oracle_from_dag(g).kind == "dsep"
    assert oracle_augmented(g, [CiStatement(0, 2)]).kind == "augmented"
    assert oracle_augmented(g, []).kind == "dsep"
    assert oracle_from_list([], 3).kind == "explicit"
    with pytest.raises(ValueError):
        IndependenceOracle(3)
    with pytest.raises(VertexOutOfRange):
        oracle_from_list([CiStatement(0, 5)], 3)


def test_dsep_oracle_answers():
    g = Dag(3, [(0, 1), (1, 2)])
    o = oracle_from_dag(g)
    assert o.ci(0, 2, [1])
    assert not o.ci(0, 2)
    with pytest.raises(InvalidQuery):
        o.ci(0, 0)


def test_augmented_adds_listed_statement():
    g = Dag(3, [(0, 1), (1, 2), (0, 2)])
    o = oracle_augmented(g, [CiStatement(0, 2)])
    assert o.ci(0, 2) and o.ci(2, 0)
    assert not o.ci(0, 2, [1])


def test_explicit_list_is_literal():
    o = oracle_from_list([CiStatement(0, 1)], 3)
    assert o.ci(0, 1)
    assert not o.ci(0, 1, [2])  # no closure under graphoid rules
    assert o.statements() == {CiStatement(0, 1)}


@given(dags(min_m=2, max_m=5))
def test_oracle_symmetric_and_equals_dsep(g):
    o = oracle_from_dag(g)
    for i, j, z in singleton_queries(g.m):
        zs = [v for v in range(g.m) if z >> v & 1]
        assert o.ci(i, j, zs) == o.ci(j, i, zs) == d_separated(g, i, j, zs)


@given(dags(min_m=2, max_m=5), st.data())
def test_augmented_is_union(g, data):
    queries = singleton_queries(g.m)
    picked = data.draw(st.lists(st.sampled_from(queries), max_size=4))
    extra = [CiStatement(i, j, {v for v in range(g.m) if z >> v & 1}) for i, j, z in picked]
    o = oracle_augmented(g, extra)
    base = oracle_from_dag(g)
    listed = {s.key for s in extra}
    for i, j, z in queries:
        assert o.ci_mask(i, j, z) == (base.ci_mask(i, j, z) or (i, j, z) in listed)


def test_ci_list_round_trip():
    stmts = {CiStatement(0, 4), CiStatement(1, 3, {0, 2})}
    m, back = parse_ci_list(format_ci_list(stmts, 5))
    assert m == 5 and back == stmts


def test_ci_list_errors():
    with pytest.raises(ParseError):
        parse_ci_list("1 2 |\n")
    with pytest.raises(ParseError):
        parse_ci_list("ci 3\n1 2\n")
    with pytest.raises(ParseError):
        parse_ci_list("ci 3\n1 2 3 |\n")
    with pytest.raises(ParseError):
        parse_ci_list("ci 3\n1 1 |\n")


def test_model_file_round_trip():
    g = Dag(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    text = format_model(g, [CiStatement(1, 3)], 4)
    o = parse_model(text)
    assert o.kind == "augmented" and o.dag == g and o.ci(1, 3)
    assert parse_model(format_model(g, [], 4)).kind == "dsep"
    explicit = parse_model("ci 3\n1 2 |\n")
    assert explicit.kind == "explicit" and explicit.ci(0, 1)


def test_model_file_errors():
    with pytest.raises(ParseError):
        parse_model("")
    with pytest.raises(ParseError):
        parse_model("1 2\n")
    with pytest.raises(ParseError):
        parse_model("dag 3\n1 2\nci 4\n")
    with pytest.raises(ParseError):
        parse_model("dag 3\n1 -- 2\n")
