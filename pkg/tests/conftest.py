import os
from itertools import combinations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from grasp.graph import Dag

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=300, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def dags(draw, min_m=1, max_m=6):
    """Random DAG: draw a vertex order, then a subset of forward pairs."""
    m = draw(st.integers(min_m, max_m))
    order = draw(st.permutations(range(m)))
    pairs = [(order[a], order[b]) for a, b in combinations(range(m), 2)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Dag(m, [e for e, k in zip(pairs, keep) if k])


def random_dag_np(rng: np.random.Generator, m: int, p: float = None) -> Dag:
    if p is None:
        p = rng.uniform(0.1, 0.9)
    order = rng.permutation(m)
    edges = [(int(order[a]), int(order[b])) for a, b in combinations(range(m), 2) if rng.random() < p]
    return Dag(m, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def labels(edges):
    """1-based edge list to 0-based."""
    return [(a - 1, b - 1) for a, b in edges]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
