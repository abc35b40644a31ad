"""Bundled unit models: true DAGs paired with unfaithful CI statements."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Tuple

from ..graph import Dag, d_separated
from ..oracle import CiStatement, IndependenceOracle, oracle_augmented
from .udag_data import UDAGS


@dataclass(frozen=True)
class UnitModel:
    """A true DAG plus the singleton CI statements it fails to entail.

    ``expected_sparsest_edges`` is the edge count of the sparsest DAG induced
    by any permutation under the augmented oracle.
    """

    name: str
    truth: Dag
    extra_ci: FrozenSet[CiStatement] = frozenset()
    expected_sparsest_edges: Optional[int] = None
    cancelled_pair: Optional[Tuple[int, int]] = None

    @property
    def m(self) -> int:
        return self.truth.m

    def oracle(self) -> IndependenceOracle:
        return oracle_augmented(self.truth, self.extra_ci)

    def unlisted_dseps(self) -> List[CiStatement]:
        """Listed statements that are in fact d-separations of the truth (should be empty)."""
        return [s for s in sorted(self.extra_ci) if d_separated(self.truth, s.i, s.j, s.z)]


def _model(name, m, edges, cis, sparsest=None, pair=None) -> UnitModel:
    truth = Dag(m, [(a - 1, b - 1) for a, b in edges])
    extra = frozenset(CiStatement(i - 1, j - 1, frozenset(v - 1 for v in z)) for i, j, z in cis)
    if sparsest is None:
        sparsest = truth.edge_count
    pair = None if pair is None else (pair[0] - 1, pair[1] - 1)
    return UnitModel(name, truth, extra, sparsest, pair)


def udag_models() -> List[UnitModel]:
    """The 61 single-cancellation models on five vertices."""
    return [_model(f"udag-{grp:02d}{chr(ord('a') + panel - 1)}", 5, edges, cis, pair=pair) for grp, panel, pair, edges, cis in UDAGS]


def collider_model() -> UnitModel:
    """1 -> 3 <- 2; its only independence is the marginal one between 1 and 2."""
    return _model("collider", 3, [(1, 3), (2, 3)], [])


def tier1_trap_model() -> UnitModel:
    """Four-vertex cancellation that tier 1 can miss but tier 2 always recovers."""
    return _model("tier1-trap", 4, [(1, 2), (2, 3), (3, 4), (1, 4)], [(2, 4, ())])


def tier2_trap_model() -> UnitModel:
    """Five-vertex cancellation with a start from which tier 2 gets stuck."""
    return _model("tier2-trap", 5, [(1, 3), (1, 4), (2, 4), (3, 4), (1, 5), (3, 5), (4, 5)], [(1, 5, ())])


def udag_catalog() -> List[UnitModel]:
    return udag_models() + [collider_model(), tier1_trap_model(), tier2_trap_model()]


def by_name(name: str) -> UnitModel:
    for model in udag_catalog():
        if model.name == name:
            return model
    raise KeyError(name)
