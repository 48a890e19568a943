"""Monte Carlo experiment harness: survival curves, lower-bound family
checks, cut/witness preservation, and runtime benchmarks.

Every stochastic routine derives per-(grid point, trial) seeds from the
master seed, so results are reproducible and trials are independent.
Records serialize to a single fixed CSV schema.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from itertools import product
from typing import List, Optional, Tuple

import numpy as np

from . import _kernels
from .decomposition import _iter_mask_cuts, brute_force_min_cut, decompose
from .generators import (LowerBoundMeta, gen_lower_bound_family,
                         gen_random_regular, lower_bound_survival)
from .graph import (BipartiteMultigraph, GraphError, read_graph,
                    regular_degree)
from .matching import (_hk_arrays, euler_split_matching, find_perfect_matching,
                       hopcroft_karp)
from .sampling import sample_edge_ids
from .witness import minimal_witness_sets

CSV_HEADER = "family,n,d,p,trials,successes,survival,stderr,analytic_bound,wall_ms"


@dataclass
class ExperimentRecord:
    family: str
    n: int
    d: int
    p: float
    trials: int
    successes: int
    analytic_bound: Optional[float] = None
    wall_ms: Optional[float] = None

    @property
    def survival(self) -> float:
        return self.successes / self.trials if self.trials else 0.0

    @property
    def stderr(self) -> float:
        if self.trials == 0:
            return 0.0
        s = self.survival
        return math.sqrt(s * (1.0 - s) / self.trials)

    def to_row(self) -> str:
        def num(x):
            return "" if x is None else f"{x:.12g}"
        return ",".join([
            self.family, str(self.n), str(self.d), f"{self.p:.12g}",
            str(self.trials), str(self.successes),
            f"{self.survival:.12g}", f"{self.stderr:.12g}",
            num(self.analytic_bound), num(self.wall_ms),
        ])


def write_records(records: List[ExperimentRecord], path) -> None:
    with open(path, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for rec in records:
            fh.write(rec.to_row() + "\n")


@dataclass
class ExperimentConfig:
    family: str = "regular"
    n_values: Tuple[int, ...] = ()
    d_values: Tuple[int, ...] = ()
    p_values: Tuple[float, ...] = ()
    trials: int = 100
    seed: int = 0
    out: Optional[str] = None
    fixed_graph: bool = True
    input_path: Optional[str] = None
    epsilon: float = 0.5
    c: float = 3.0
    repeats: int = 5

    def require_grid(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.input_path is None and (not self.n_values or not self.d_values):
            raise ValueError("empty (n, d) grid and no input graph")


def _rng(*key) -> np.random.Generator:
    words = [int(k) & 0xFFFFFFFFFFFFFFFF for k in key]
    return np.random.default_rng(np.random.SeedSequence(words))


def _sampled_has_pm(g: BipartiteMultigraph, p: float,
                    rng: np.random.Generator) -> bool:
    ids = sample_edge_ids(g.m, p, rng)
    _, _, size, _ = _hk_arrays(g.n_left, g.n_right, g.edge_u[ids], g.edge_v[ids])
    return size == g.n_left == g.n_right


_BATCH_LIMIT = 40_000_000  # keep-matrix cells; ~40 MB of bools


def survival_estimate(g: BipartiteMultigraph, p: float, trials: int,
                      seed: int, point: int = 0) -> int:
    """Number of trials whose sampled subgraph keeps a perfect matching.

    Small graphs run through a batched kernel (one Bernoulli keep matrix,
    trial loop compiled); large graphs sample per trial with derived seeds
    so trials can be distributed.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"sampling probability must be in [0, 1], got {p}")
    if g.n_left != g.n_right:
        return 0
    if g.m * trials <= _BATCH_LIMIT:
        keep = _rng(seed, point).random((trials, g.m)) < p
        return int(_kernels.survival_count(g.n_left, g.n_right,
                                           g.edge_u, g.edge_v, keep))
    successes = 0
    for t in range(trials):
        if _sampled_has_pm(g, p, _rng(seed, point, t)):
            successes += 1
    return successes


def _grid_graphs(cfg: ExperimentConfig):
    """Yield (point_index, n, d, graph_or_None)."""
    if cfg.input_path is not None:
        g = read_graph(cfg.input_path)
        yield 0, g.n_left, regular_degree(g) or 0, g
        return
    point = 0
    for n, d in product(cfg.n_values, cfg.d_values):
        if d > n:
            raise ValueError(f"grid point d={d} exceeds n={n}")
        yield point, n, d, None
        point += 1


def run_survival_curve(cfg: ExperimentConfig) -> List[ExperimentRecord]:
    """Survival probability vs sampling rate over an (n, d, p) grid."""
    cfg.require_grid()
    if not cfg.p_values:
        raise ValueError("empty p grid")
    records = []
    for point, n, d, g in _grid_graphs(cfg):
        if g is None and cfg.fixed_graph:
            g = gen_random_regular(n, d, _rng(cfg.seed, point, -1))
        for pi, p in enumerate(cfg.p_values):
            if g is not None:
                successes = survival_estimate(g, p, cfg.trials,
                                              cfg.seed, point * 1000 + pi)
            else:
                successes = 0
                for t in range(cfg.trials):
                    trial_g = gen_random_regular(n, d, _rng(cfg.seed, point, pi, t, 1))
                    if _sampled_has_pm(trial_g, p, _rng(cfg.seed, point, pi, t, 0)):
                        successes += 1
            records.append(ExperimentRecord(cfg.family or "regular", n, d, p,
                                            cfg.trials, successes))
    if cfg.out:
        write_records(records, cfg.out)
    return records


def run_lower_bound_check(cfg: ExperimentConfig) -> List[ExperimentRecord]:
    """Monte Carlo survival vs the analytic chain-survival upper bound."""
    cfg.require_grid()
    if not cfg.p_values:
        raise ValueError("empty p grid")
    if cfg.input_path is not None:
        raise ValueError("lower-bound experiments build their own graph")
    records = []
    point = 0
    for n, d in product(cfg.n_values, cfg.d_values):
        g, meta = gen_lower_bound_family(n, d)
        for pi, p in enumerate(cfg.p_values):
            successes = 0
            if p > 0:
                successes = survival_estimate(g, p, cfg.trials,
                                              cfg.seed, point * 1000 + pi)
            records.append(ExperimentRecord(
                "lowerbound", n, d, p, cfg.trials, successes,
                analytic_bound=lower_bound_survival(meta, p)))
        point += 1
    if cfg.out:
        write_records(records, cfg.out)
    return records


@dataclass
class CutPreservationReport:
    p: float
    kappa: int
    trials: int
    cuts_ok: int        # trials where every cut stayed within (1 +/- eps) p * size
    witness_ok: int     # same for every minimal witness set in every piece
    n_witness_sets: int

    @property
    def cuts_ok_fraction(self) -> float:
        return self.cuts_ok / self.trials

    @property
    def witness_ok_fraction(self) -> float:
        return self.witness_ok / self.trials


def run_cut_preservation(cfg: ExperimentConfig) -> CutPreservationReport:
    """Check per-trial preservation of all cuts and all minimal witness sets.

    The rate is min(1, c * ln(nv) / (kappa * eps^2)) with kappa the
    brute-force minimum cut; a disconnected input (kappa = 0) is rejected.
    Witness sets are enumerated per decomposition piece and mapped back to
    host edge ids.
    """
    if cfg.input_path is None:
        raise ValueError("cut preservation requires an input graph")
    g = read_graph(cfg.input_path)
    return cut_preservation(g, cfg.epsilon, cfg.c, cfg.trials, cfg.seed)


def cut_preservation(g: BipartiteMultigraph, epsilon: float, c: float,
                     trials: int, seed: int) -> CutPreservationReport:
    nv = g.n_left + g.n_right
    if nv > 20:
        raise GraphError("cut enumeration refuses graphs over 20 vertices")
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    kappa = brute_force_min_cut(g)
    if kappa == 0:
        raise GraphError("graph is disconnected (min cut 0): decompose it "
                         "into pieces first")
    p = min(1.0, c * math.log(nv) / (kappa * epsilon * epsilon))

    m = g.m
    keep = np.zeros((m, trials), dtype=np.float32)
    for t in range(trials):
        ids = sample_edge_ids(m, p, _rng(seed, t))
        keep[ids, t] = 1.0

    lo_scale = (1.0 - epsilon) * p
    hi_scale = (1.0 + epsilon) * p
    cuts_ok = np.ones(trials, dtype=bool)
    full = (1 << nv) - 1
    gu, gv = g.edge_u, g.edge_v + g.n_left
    shifts = np.arange(nv, dtype=np.int64)
    for masks, true_cuts, _ in _iter_mask_cuts(g):
        sel = (masks != 0) & (masks != full)
        if not np.any(sel):
            continue
        bits = (masks[sel][:, None] >> shifts) & 1
        cross = (bits[:, gu] != bits[:, gv]).astype(np.float32)
        sampled = cross @ keep
        true = true_cuts[sel].astype(np.float64)[:, None]
        ok = (sampled >= lo_scale * true - 1e-9) & (sampled <= hi_scale * true + 1e-9)
        cuts_ok &= ok.all(axis=0)

    wit_rows = []
    for piece in decompose(g).pieces:
        sub = piece.subgraph
        origin = sub.edge_origin
        for side in ("left", "right"):
            for ws in minimal_witness_sets(sub, side):
                row = np.zeros(m, dtype=np.float32)
                for eid in ws.edge_ids:
                    host = eid if origin is None else int(origin[eid])
                    row[host] = 1.0
                wit_rows.append(row)
    if wit_rows:
        wit = np.stack(wit_rows)
        sampled = wit @ keep
        true = wit.sum(axis=1, dtype=np.float64)[:, None]
        ok = (sampled >= lo_scale * true - 1e-9) & (sampled <= hi_scale * true + 1e-9)
        witness_ok = int(ok.all(axis=0).sum())
    else:
        witness_ok = trials

    return CutPreservationReport(p=p, kappa=kappa, trials=trials,
                                 cuts_ok=int(cuts_ok.sum()),
                                 witness_ok=witness_ok,
                                 n_witness_sets=len(wit_rows))


def estimate_threshold_rate(g: BipartiteMultigraph, target: float = 0.95,
                            trials: int = 200, seed: int = 0,
                            tol: float = 0.02) -> float:
    """Bisection estimate of the smallest rate whose survival reaches target.

    Returns the upper end of the final bracket, so the true threshold is at
    most the returned value (up to Monte Carlo noise).
    """
    lo, hi = 0.0, 1.0
    point = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        successes = survival_estimate(g, mid, trials, seed, point)
        if successes / trials >= target:
            hi = mid
        else:
            lo = mid
        point += 1
    return hi


def _median_ms(fn, repeats: int) -> Tuple[float, object]:
    times = []
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        times.append((time.perf_counter() - t0) * 1000.0)
    return float(np.median(times)), result


def run_runtime_bench(cfg: ExperimentConfig) -> List[ExperimentRecord]:
    """Wall-clock medians: full Hopcroft-Karp vs sampling driver vs Euler split."""
    cfg.require_grid()
    records = []
    for point, n, d, g in _grid_graphs(cfg):
        if g is None:
            g = gen_random_regular(n, d, _rng(cfg.seed, point, -1))
        ms, matching = _median_ms(lambda: hopcroft_karp(g), cfg.repeats)
        records.append(ExperimentRecord(
            "bench-hk", n, d, 1.0, cfg.repeats,
            cfg.repeats if matching.size == n else 0, wall_ms=ms))
        ms, res = _median_ms(
            lambda: find_perfect_matching(g, c=cfg.c, seed=cfg.seed), cfg.repeats)
        eff_p = res.sampled_edges / g.m if g.m else 1.0
        records.append(ExperimentRecord(
            "bench-sampled", n, d, eff_p, cfg.repeats,
            cfg.repeats if res.is_perfect else 0, wall_ms=ms))
        if d >= 1 and d & (d - 1) == 0:
            ms, matching = _median_ms(lambda: euler_split_matching(g), cfg.repeats)
            records.append(ExperimentRecord(
                "bench-euler", n, d, 1.0, cfg.repeats,
                cfg.repeats if matching.size == n else 0, wall_ms=ms))
    if cfg.out:
        write_records(records, cfg.out)
    return records
