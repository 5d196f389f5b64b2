"""Shared test helpers: independent reference oracles and the seed-batch stats."""

from __future__ import annotations

import time
from statistics import fmean

import numpy as np
import pytest

from geopairs.grid import Image, Metric, edge_weight, neighbors
from geopairs.harness import GeneratorKind, generate_image
from geopairs.strategies import StrategyKind, run_strategy

SIZE_25 = (25, 25)
TREE_STRATEGIES = (
    StrategyKind.SPIRAL,
    StrategyKind.SPIRAL_REPULSION,
    StrategyKind.EXTREMA,
    StrategyKind.FILLING_RATE,
)


def random_image(rng: np.random.Generator, width: int, height: int) -> Image:
    return Image(rng.integers(1, 256, size=(height, width)))


def bellman_ford_distances(image: Image, metric: Metric, sources) -> np.ndarray:
    """Textbook label-correcting shortest paths, independent of the package engine.

    Relaxation sweeps over an adjacency built from the public neighbors/
    edge_weight functions, repeated until no distance improves.
    """
    n = image.size
    dims = (image.width, image.height)
    adj = [
        [(q, edge_weight(image, metric, p, q)) for q in neighbors(dims, p)]
        for p in range(n)
    ]
    inf = float("inf")
    dist = [inf] * n
    for s in sources:
        dist[s] = 0
    changed = True
    while changed:
        changed = False
        for p in range(n):
            dp = dist[p]
            if dp == inf:
                continue
            for q, w in adj[p]:
                if dp + w < dist[q]:
                    dist[q] = dp + w
                    changed = True
    return np.array(dist, dtype=np.int64)


def exhaustive_geodesic(image: Image, metric: Metric, src: int, dst: int) -> int:
    """Minimum path time over ALL simple paths; only viable on tiny images."""
    dims = (image.width, image.height)
    best = [float("inf")]

    def walk(p, seen, total):
        if total >= best[0]:
            return
        if p == dst:
            best[0] = total
            return
        for q in neighbors(dims, p):
            if q not in seen:
                walk(q, seen | {q}, total + edge_weight(image, metric, p, q))

    walk(src, {src}, 0)
    return int(best[0])


@pytest.fixture(scope="session")
def family_stats():
    """Mean propagation counts per strategy on 20 composite seeds per family.

    Seed k uses image seed k and run seed k, sampling both the analogue
    variability and the strategy RNG.  Returns per-family dicts of mean raw
    and adjusted counts plus the elapsed wall time.
    """
    n_seeds = 20
    out = {}
    t0 = time.perf_counter()
    for kind in GeneratorKind:
        raw = {s: [] for s in TREE_STRATEGIES}
        adj = {s: [] for s in TREE_STRATEGIES}
        for k in range(n_seeds):
            image = generate_image(kind, SIZE_25, seed=k)
            for strat in TREE_STRATEGIES:
                run = run_strategy(image, Metric.SUM, strat, seed=k)
                raw[strat].append(run.trace.raw_count)
                adj[strat].append(run.trace.adjusted_count)
        out[kind.value] = {
            "raw_mean": {s.value: fmean(raw[s]) for s in TREE_STRATEGIES},
            "adj_mean": {s.value: fmean(adj[s]) for s in TREE_STRATEGIES},
            "n_seeds": n_seeds,
        }
    out["elapsed_s"] = time.perf_counter() - t0
    return out
