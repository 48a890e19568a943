"""Uniform Bernoulli edge sampling via geometric skips, plus the doubling
rate schedule used by the sampling-based matching driver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .graph import BipartiteMultigraph


@dataclass(frozen=True)
class SamplingConfig:
    p: float
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"sampling probability must be in [0, 1], got {self.p}")


def sample_edge_ids(m: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Indices of a Bernoulli(p) subset of range(m), via geometric skips.

    Skip lengths are floor(ln(uniform) / ln(1 - p)), so the work is
    proportional to the number of kept indices plus one; rejected indices
    are never touched.  p = 0 and p = 1 are exact special cases.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"sampling probability must be in [0, 1], got {p}")
    if m == 0 or p == 0.0:
        return np.empty(0, dtype=np.int64)
    if p == 1.0:
        return np.arange(m, dtype=np.int64)
    log_q = math.log1p(-p)
    est = int(m * p + 4.0 * math.sqrt(m * p * (1.0 - p)) + 16.0)
    chunks = []
    pos = -1
    while True:
        u = rng.random(est)
        skips = np.floor(np.log(u) / log_q).astype(np.int64)
        idx = pos + np.cumsum(skips + 1)
        pos = int(idx[-1])
        if pos >= m:
            chunks.append(idx[idx < m])
            break
        chunks.append(idx)
    return np.concatenate(chunks)


def sample_edges(g: BipartiteMultigraph, cfg: SamplingConfig) -> BipartiteMultigraph:
    """Keep each edge independently with probability cfg.p.

    The vertex set is unchanged; the result's edge_origin records the host
    graph's edge ids so witness sets can be audited on the sample.
    Deterministic given (g, cfg).
    """
    rng = np.random.default_rng(cfg.seed)
    ids = sample_edge_ids(g.m, cfg.p, rng)
    origin = ids if g.edge_origin is None else g.edge_origin[ids]
    return BipartiteMultigraph(g.n_left, g.n_right,
                               g.edge_u[ids], g.edge_v[ids],
                               edge_origin=origin)


def upper_bound_rate(n: int, d: int, c: float) -> float:
    """min(1, c * n * ln(n) / d^2), the theoretical sufficient sampling rate."""
    return min(1.0, c * n * math.log(n) / (d * d))


def rate_schedule(p0: float) -> Iterator[float]:
    """Yield p0, 2*p0, 4*p0, ... clamped at 1; stops after the clamped value."""
    if p0 <= 0:
        raise ValueError(f"initial rate must be positive, got {p0}")
    p = p0
    while p < 1.0:
        yield p
        p = min(1.0, 2.0 * p)
    yield 1.0
