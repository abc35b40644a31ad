"""Random DAGs and linear-Gaussian SEM samples.

Randomness comes from numpy's PCG64.  The seed is expanded with
``SeedSequence(seed).spawn(3)`` into independent streams for the graph
structure, the edge coefficients and the noise, in that order, so changing
``n`` never changes the graph or its coefficients.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional, Tuple

import numpy as np

from .graph import Dag
from .scoring import Dataset


@dataclass(frozen=True)
class SimConfig:
    m: int
    avg_degree: float
    n: int
    coef_low: float = -1.0
    coef_high: float = 1.0
    noise_sd: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be positive")
        if not 0 <= self.avg_degree <= self.m - 1:
            raise ValueError(f"avg_degree must lie in [0, {self.m - 1}]")
        if self.n < 1:
            raise ValueError("n must be positive")
        if not self.coef_low < self.coef_high:
            raise ValueError("coef_low must be below coef_high")
        if not self.noise_sd > 0:
            raise ValueError("noise_sd must be positive")

    def as_dict(self) -> dict:
        return asdict(self)


def _streams(seed: int) -> Tuple[np.random.Generator, np.random.Generator, np.random.Generator]:
    structure, coefs, noise = np.random.SeedSequence(seed).spawn(3)
    return tuple(np.random.Generator(np.random.PCG64(s)) for s in (structure, coefs, noise))


def random_dag(cfg: SimConfig) -> Dag:
    """Erdos-Renyi DAG over a uniformly random causal order.

    Each forward pair is an edge with probability ``avg_degree / (m - 1)``,
    which makes the expected total degree of every vertex ``avg_degree``.
    """
    rng = _streams(cfg.seed)[0]
    m = cfg.m
    order = rng.permutation(m)
    if m < 2:
        return Dag(m)
    prob = cfg.avg_degree / (m - 1)
    draws = rng.random((m, m))
    edges = [(int(order[a]), int(order[b])) for a in range(m) for b in range(a + 1, m) if draws[a, b] < prob]
    return Dag(m, edges)


def sem_coefficients(g: Dag, cfg: SimConfig) -> np.ndarray:
    """Coefficient matrix ``B`` with ``B[j, k]`` the weight of ``j -> k``."""
    rng = _streams(cfg.seed)[1]
    b = np.zeros((g.m, g.m))
    for j, k in g.edges:
        w = 0.0
        while w == 0.0:
            w = rng.uniform(cfg.coef_low, cfg.coef_high)
        b[j, k] = w
    return b


def sample_sem(g: Dag, cfg: SimConfig, coefficients: Optional[np.ndarray] = None) -> Dataset:
    b = sem_coefficients(g, cfg) if coefficients is None else np.asarray(coefficients, dtype=float)
    if b.shape != (g.m, g.m):
        raise ValueError("coefficient matrix has the wrong shape")
    rng = _streams(cfg.seed)[2]
    x = rng.normal(0.0, cfg.noise_sd, size=(cfg.n, g.m))
    for k in g.topological_order():
        pa = sorted(g.parents(k))
        if pa:
            x[:, k] += x[:, pa] @ b[pa, k]
    return Dataset(x)


def sem_covariance(b: np.ndarray, noise_sd: float = 1.0) -> np.ndarray:
    """Population covariance of X = B^T X + e, i.e. (I - B)^-T (I - B)^-1 * sd^2."""
    inv = np.linalg.inv(np.eye(b.shape[0]) - b)
    return inv.T @ inv * noise_sd**2
