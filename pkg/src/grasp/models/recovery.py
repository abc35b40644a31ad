"""All-permutations recovery experiment for oracle unit models."""

from __future__ import annotations

from itertools import permutations
from typing import List, Optional, Tuple

from ..errors import TooLarge
from ..graph import markov_equivalent
from ..induce import Permutation, induce_ru
from ..scoring import OracleScorer
from ..search import SearchConfig, grasp
from .catalog import UnitModel

MAX_RECOVERY_VERTICES = 7


def recovery_test(model: UnitModel, tier: int, cfg: Optional[SearchConfig] = None, stop_early: bool = False) -> Tuple[bool, List[Permutation]]:
    """Run grasp from every start; recovered iff every result is Markov equivalent to the truth.

    ``cfg`` defaults to the unbounded-depth configuration; its tier is
    overridden by ``tier``.  With ``stop_early`` the scan ends at the first
    failing start.
    """
    m = model.m
    if m > MAX_RECOVERY_VERTICES:
        raise TooLarge(f"recovery test enumerates m! starts; m <= {MAX_RECOVERY_VERTICES} required")
    if cfg is None:
        cfg = SearchConfig.unbounded(m, tier=tier)
    elif cfg.tier != tier:
        cfg = SearchConfig(tier, cfg.depth, cfg.uncovered_depth, cfg.nonsingular_depth, cfg.seed)
    oracle = model.oracle()
    scorer = OracleScorer(oracle)
    failures = []
    for perm in permutations(range(m)):
        start = Permutation(perm)
        out = grasp(scorer, start, cfg)
        if not markov_equivalent(induce_ru(oracle, out), model.truth):
            failures.append(start)
            if stop_early:
                break
    return not failures, failures
