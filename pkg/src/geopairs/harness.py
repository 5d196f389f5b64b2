"""Benchmark harness: test-image generators, brute-force oracle, experiment runner."""

from __future__ import annotations

import io
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from statistics import fmean

import numpy as np

from .distances import DistanceArray
from .grid import Image, Metric
from .propagation import GridGraph
from .strategies import (
    DEFAULT_REPULSION,
    StrategyKind,
    relative_difference,
    run_strategy,
)


class VerificationError(RuntimeError):
    """A completed distance array disagreed with the brute-force oracle."""


class GeneratorKind(Enum):
    BUMPS = "bumps"
    HAIRPIN = "hairpin"
    RANDOM = "random"


def generate_image(kind: GeneratorKind, size: tuple[int, int], seed: int = 0) -> Image:
    """Deterministic test image of the given family.

    * random  -- i.i.d. uniform grey levels in [1, 255]
    * bumps   -- 3 to 6 isotropic Gaussian bumps, rescaled to [1, 255]
    * hairpin -- a dark U-shaped corridor on a bright background, jittered
    """
    width, height = size
    if width < 1 or height < 1 or width * height < 2:
        raise ValueError(f"invalid image size {width}x{height}")
    rng = np.random.default_rng(seed)
    if kind is GeneratorKind.RANDOM:
        return Image(rng.integers(1, 256, size=(height, width)))
    if kind is GeneratorKind.BUMPS:
        return _bumps(width, height, rng)
    if kind is GeneratorKind.HAIRPIN:
        return _hairpin(width, height, rng)
    raise ValueError(f"unknown generator {kind!r}")


def _bumps(width: int, height: int, rng: np.random.Generator) -> Image:
    rows, cols = np.mgrid[0:height, 0:width]
    field = np.zeros((height, width), dtype=np.float64)
    span = min(width, height)
    # narrow bumps keep the valley floor traversable, so geodesics share
    # long subpaths and tree filling stays effective
    for _ in range(int(rng.integers(3, 7))):
        cr = rng.uniform(0, height - 1)
        cc = rng.uniform(0, width - 1)
        sigma = rng.uniform(span / 12, span / 6)
        amp = rng.uniform(0.5, 1.0)
        field += amp * np.exp(-((rows - cr) ** 2 + (cols - cc) ** 2) / (2 * sigma**2))
    lo, hi = field.min(), field.max()
    if hi == lo:  # flat field cannot happen with >= 3 bumps, but stay safe
        return Image(np.full((height, width), 128, dtype=np.int64))
    grey = 1 + np.rint(254 * (field - lo) / (hi - lo)).astype(np.int64)
    return Image(grey)


def _hairpin(width: int, height: int, rng: np.random.Generator) -> Image:
    grey = np.full((height, width), 240, dtype=np.int64)
    margin = max(1, min(width, height) // 8)
    thick = 3
    lo_r, hi_r = margin, max(margin + 1, height - margin)
    left = slice(margin, min(width, margin + thick))
    right = slice(max(0, width - margin - thick), width - margin)
    bottom = slice(max(lo_r, hi_r - thick), hi_r)
    grey[lo_r:hi_r, left] = 16    # left arm
    grey[lo_r:hi_r, right] = 16   # right arm
    grey[bottom, margin:width - margin] = 16  # bend joining the arms
    grey += rng.integers(-8, 9, size=(height, width))
    return Image(np.clip(grey, 1, 255))


def hairpin_corridor_mask(width: int, height: int) -> np.ndarray:
    """Boolean mask of the hairpin corridor (same layout the generator carves)."""
    mask = np.zeros((height, width), dtype=np.bool_)
    margin = max(1, min(width, height) // 8)
    thick = 3
    lo_r, hi_r = margin, max(margin + 1, height - margin)
    mask[lo_r:hi_r, margin:min(width, margin + thick)] = True
    mask[lo_r:hi_r, max(0, width - margin - thick):width - margin] = True
    mask[max(lo_r, hi_r - thick):hi_r, margin:width - margin] = True
    return mask


def brute_force_oracle(image: Image, metric: Metric = Metric.SUM, *,
                       force: bool = False) -> DistanceArray:
    """All pairs by N independent propagations with direct row fills only."""
    graph = GridGraph(image, metric)
    store = DistanceArray(graph.n, force=force)
    for source in range(graph.n):
        store.fill_from_source(source, graph.propagate([source]).dist)
    assert store.is_complete
    return store


@dataclass(frozen=True)
class RunRecord:
    """Counts and the filling trace of one (image, strategy, seed) run."""

    image: str
    metric: str
    strategy: str
    seed: int
    raw_count: int
    adjusted_count: int
    samples: list[tuple[int, int, Fraction]]
    width: int


@dataclass(frozen=True)
class StrategySummary:
    """Aggregates over seeds for one strategy on one image."""

    image: str
    metric: str
    strategy: str
    n_seeds: int
    raw_mean: float
    raw_min: int
    raw_max: int
    adjusted_mean: float
    adjusted_min: int
    adjusted_max: int
    delta_r_naive_raw: float | None
    delta_r_naive_adjusted: float | None
    delta_r_spiral_raw: float | None
    delta_r_spiral_adjusted: float | None


@dataclass(frozen=True)
class ExperimentReport:
    records: list[RunRecord]
    summaries: list[StrategySummary]
    completed: dict[tuple[str, str], DistanceArray]


def run_experiment(images, metrics, strategies, seeds, *,
                   repulsion: int = DEFAULT_REPULSION, naive_with_tree: bool = False,
                   verify: bool = True, force: bool = False) -> ExperimentReport:
    """Run every (image, metric, strategy, seed) combination and aggregate.

    ``images`` is a sequence of (label, Image) pairs.  With ``verify`` on,
    every completed array is checked entry-for-entry against the
    brute-force oracle (the oracle is computed once per image and metric);
    a mismatch raises VerificationError naming the offending run.
    """
    images = list(images)
    metrics = list(metrics)
    strategies = list(strategies)
    seeds = list(seeds)
    if not images or not metrics or not strategies or not seeds:
        raise ValueError("images, metrics, strategies and seeds must be non-empty")
    records: list[RunRecord] = []
    completed: dict[tuple[str, str], DistanceArray] = {}
    oracles: dict[tuple[str, str], DistanceArray] = {}
    for label, image in images:
        for metric in metrics:
            key = (label, metric.value)
            if verify and key not in oracles:
                oracles[key] = brute_force_oracle(image, metric, force=force)
            for kind in strategies:
                for seed in seeds:
                    run = run_strategy(
                        image, metric, kind, seed,
                        repulsion=repulsion, naive_with_tree=naive_with_tree,
                        force=force,
                    )
                    if verify:
                        oracle = oracles[key]
                        same = run.distances.is_complete and np.array_equal(
                            run.distances.dist, oracle.dist
                        )
                        if not same:
                            raise VerificationError(
                                f"distances disagree with the brute-force oracle "
                                f"(image={label}, metric={metric.value}, "
                                f"strategy={kind.value}, seed={seed})"
                            )
                    completed.setdefault(key, run.distances)
                    records.append(RunRecord(
                        label, metric.value, kind.value, seed,
                        run.trace.raw_count, run.trace.adjusted_count,
                        run.trace.samples, image.width,
                    ))
    return ExperimentReport(records, _summarize(records), completed)


def _summarize(records: list[RunRecord]) -> list[StrategySummary]:
    groups: dict[tuple[str, str, str], list[RunRecord]] = {}
    for rec in records:
        groups.setdefault((rec.image, rec.metric, rec.strategy), []).append(rec)
    raw_means = {key: fmean(r.raw_count for r in recs) for key, recs in groups.items()}
    summaries = []
    for (image, metric, strategy), recs in groups.items():
        raws = [r.raw_count for r in recs]
        adjs = [r.adjusted_count for r in recs]
        raw_mean, adj_mean = fmean(raws), fmean(adjs)
        deltas = []
        for baseline in (StrategyKind.NAIVE.value, StrategyKind.SPIRAL.value):
            base = raw_means.get((image, metric, baseline))
            if base is None or base <= 0:
                deltas += [None, None]
            else:
                deltas += [relative_difference(base, raw_mean),
                           relative_difference(base, adj_mean)]
        summaries.append(StrategySummary(
            image, metric, strategy, len(recs),
            raw_mean, min(raws), max(raws),
            adj_mean, min(adjs), max(adjs),
            *deltas,
        ))
    summaries.sort(key=lambda s: (s.image, s.metric, s.strategy))
    return summaries


def write_trace_csv(records: list[RunRecord]) -> bytes:
    """Filling traces as UTF-8 CSV, one row per propagation.

    Rows are ordered by (image, strategy, seed, propagation index); the
    filling rate is printed so it round-trips to the exact double.
    """
    out = io.StringIO()
    out.write("image,strategy,seed,propagation_index,source_row,source_col,tau\n")
    for rec in sorted(records, key=lambda r: (r.image, r.strategy, r.seed)):
        for index, source, tau in rec.samples:
            row, col = divmod(source, rec.width)
            out.write(
                f"{rec.image},{rec.strategy},{rec.seed},{index},{row},{col},"
                f"{float(tau)!r}\n"
            )
    return out.getvalue().encode("utf-8")


def write_report_csv(report: ExperimentReport) -> bytes:
    """Per-strategy aggregate counts and relative differences as UTF-8 CSV."""
    out = io.StringIO()
    out.write(
        "image,metric,strategy,seeds,raw_mean,raw_min,raw_max,"
        "adjusted_mean,adjusted_min,adjusted_max,"
        "delta_r_naive_raw_pct,delta_r_naive_adjusted_pct,"
        "delta_r_spiral_raw_pct,delta_r_spiral_adjusted_pct\n"
    )
    for s in report.summaries:
        deltas = ",".join(
            "" if d is None else repr(d)
            for d in (s.delta_r_naive_raw, s.delta_r_naive_adjusted,
                      s.delta_r_spiral_raw, s.delta_r_spiral_adjusted)
        )
        out.write(
            f"{s.image},{s.metric},{s.strategy},{s.n_seeds},"
            f"{s.raw_mean!r},{s.raw_min},{s.raw_max},"
            f"{s.adjusted_mean!r},{s.adjusted_min},{s.adjusted_max},{deltas}\n"
        )
    return out.getvalue().encode("utf-8")
