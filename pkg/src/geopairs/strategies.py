"""Source-selection strategies and the runner that fills the distances array.

Five ways to pick the source of the next geodesic propagation:

* naive           -- raster order, row/column fills only (no tree redundancy)
* spiral          -- random pick on the outermost unfilled concentric frame
* spiral-repulsion-- spiral, excluding pixels drawn too close along the frame
* extrema         -- farthest unfilled pixel from the geodesic centroid
* filling-rate    -- least-filled pixel, extrema rank breaking ties

All tree-based strategies exploit the same redundancy: one propagation's
shortest-path tree yields the distance between every ancestor/descendant
pair, not just source-to-pixel.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .distances import DistanceArray
from .grid import Image, Metric
from .propagation import GridGraph, boundary_pixels, build_tree

#: Propagations spent locating the geodesic extrema (border map + centroid map).
EXTREMA_OVERHEAD = 2

#: Default along-turn repulsion distance, in pixels.
DEFAULT_REPULSION = 3


class ArrayFullError(RuntimeError):
    """Raised when a source is requested but every pair is already filled."""


class StrategyKind(Enum):
    NAIVE = "naive"
    SPIRAL = "spiral"
    SPIRAL_REPULSION = "spiral-repulsion"
    EXTREMA = "extrema"
    FILLING_RATE = "filling-rate"


@dataclass(frozen=True)
class ExtremaContext:
    """Geodesic centroid and the pixels ranked by distance from it.

    ``centroid`` maximizes the geodesic distance from the image border;
    ``ext`` lists all pixels by decreasing ``dist_from_c`` (ties broken by
    pixel id).  Computing this costs EXTREMA_OVERHEAD propagations.
    """

    centroid: int
    ext: np.ndarray
    dist_from_c: np.ndarray


@dataclass(frozen=True)
class FillingTrace:
    """Per-propagation (index, source, filling rate) samples of one run.

    ``raw_count`` is the number of filling propagations executed;
    ``adjusted_count`` adds the extrema-determination overhead where the
    strategy needed one.
    """

    samples: list[tuple[int, int, Fraction]]
    raw_count: int
    adjusted_count: int


@dataclass(frozen=True)
class RunResult:
    distances: DistanceArray
    trace: FillingTrace
    seed: int


def spiral_turns(width: int, height: int) -> list[list[int]]:
    """Concentric one-pixel-wide frames, outermost first.

    Turn k holds the pixels at frame distance k from the border, listed
    clockwise from the top-left corner (k, k).
    """
    if width < 1 or height < 1:
        raise ValueError(f"invalid dimensions {width}x{height}")
    turns = []
    for k in range((min(width, height) + 1) // 2):
        top, bottom = k, height - 1 - k
        left, right = k, width - 1 - k
        ring = [top * width + c for c in range(left, right + 1)]
        ring += [r * width + right for r in range(top + 1, bottom + 1)]
        if bottom > top:
            ring += [bottom * width + c for c in range(right - 1, left - 1, -1)]
        if right > left:
            ring += [r * width + left for r in range(bottom - 1, top, -1)]
        turns.append(ring)
    return turns


def compute_extrema_context(image: Image, metric: Metric = Metric.SUM) -> ExtremaContext:
    """Locate the geodesic centroid and rank all pixels by distance from it."""
    return _extrema_context(GridGraph(image, metric))


def _extrema_context(graph: GridGraph) -> ExtremaContext:
    image = graph.image
    border = boundary_pixels((image.width, image.height))
    from_border = graph.propagate(border).dist
    centroid = int(np.argmax(from_border))  # first maximum = smallest pixel id
    dist_from_c = graph.propagate([centroid]).dist
    order = np.lexsort((np.arange(graph.n), -dist_from_c))
    return ExtremaContext(centroid, order.astype(np.int64), dist_from_c)


class NaiveSelector:
    """Raster order: the smallest-index pixel whose row is not fully marked."""

    def __init__(self, graph: GridGraph):
        self.n = graph.n

    def next_source(self, store: DistanceArray) -> int:
        open_rows = np.flatnonzero(store.point_filled_counts < self.n - 1)
        if open_rows.size == 0:
            raise ArrayFullError("every pair is already filled")
        return int(open_rows[0])


class SpiralSelector:
    """Uniform draw among unfilled pixels of the outermost unfilled turn."""

    def __init__(self, graph: GridGraph, rng: np.random.Generator):
        self.n = graph.n
        self.turns = spiral_turns(graph.image.width, graph.image.height)
        self.rng = rng

    def next_source(self, store: DistanceArray) -> int:
        counts = store.point_filled_counts
        full = self.n - 1
        for ring in self.turns:
            open_pixels = [p for p in ring if counts[p] < full]
            if open_pixels:
                return open_pixels[int(self.rng.integers(len(open_pixels)))]
        raise ArrayFullError("every pair is already filled")


class SpiralRepulsionSelector:
    """Spiral draw that also bars the nearest remaining pixels along the turn.

    After a draw, the h-1 nearest remaining candidates on each side of the
    source (in the turn's cyclic order) leave the candidate list; they are
    only removed from candidacy, not marked filled.  The candidate list is
    rebuilt from the unfilled pixels of the turn whenever it runs out.
    """

    def __init__(self, graph: GridGraph, rng: np.random.Generator,
                 repulsion: int = DEFAULT_REPULSION):
        if repulsion < 1:
            raise ValueError(f"repulsion distance must be >= 1, got {repulsion}")
        self.n = graph.n
        self.turns = spiral_turns(graph.image.width, graph.image.height)
        self.rng = rng
        self.repulsion = repulsion
        self._candidates: list[int] = []

    def next_source(self, store: DistanceArray) -> int:
        counts = store.point_filled_counts
        full = self.n - 1
        # drop candidates filled by earlier propagations
        self._candidates = [p for p in self._candidates if counts[p] < full]
        if not self._candidates:
            for ring in self.turns:
                open_pixels = [p for p in ring if counts[p] < full]
                if open_pixels:
                    self._candidates = open_pixels
                    break
            else:
                raise ArrayFullError("every pair is already filled")
        cands = self._candidates
        i = int(self.rng.integers(len(cands)))
        source = cands.pop(i)
        if cands:
            m = len(cands)
            barred = set()
            for k in range(min(self.repulsion - 1, m)):
                barred.add(cands[(i + k) % m])        # clockwise neighbors
                barred.add(cands[(i - 1 - k) % m])    # counterclockwise neighbors
            self._candidates = [p for p in cands if p not in barred]
        return source


class ExtremaSelector:
    """Farthest-from-centroid unfilled pixel; least filled breaks ties."""

    def __init__(self, ctx: ExtremaContext, n: int):
        self.ctx = ctx
        self.n = n

    def next_source(self, store: DistanceArray) -> int:
        counts = store.point_filled_counts
        open_mask = counts < self.n - 1
        if not open_mask.any():
            raise ArrayFullError("every pair is already filled")
        d = self.ctx.dist_from_c
        tied = open_mask & (d == d[open_mask].max())
        idx = np.flatnonzero(tied)
        return int(idx[np.argmin(counts[idx])])  # first minimum = smallest id


class FillingRateSelector:
    """Least-filled pixel; greatest extremum (then smallest id) breaks ties."""

    def __init__(self, ctx: ExtremaContext, n: int):
        self.ctx = ctx
        self.n = n

    def next_source(self, store: DistanceArray) -> int:
        counts = store.point_filled_counts
        open_mask = counts < self.n - 1
        if not open_mask.any():
            raise ArrayFullError("every pair is already filled")
        cmin = counts[open_mask].min()
        tied = np.flatnonzero(open_mask & (counts == cmin))
        return int(tied[np.argmax(self.ctx.dist_from_c[tied])])


def _make_selector(kind: StrategyKind, graph: GridGraph, rng: np.random.Generator,
                   repulsion: int):
    if kind is StrategyKind.NAIVE:
        return NaiveSelector(graph), 0
    if kind is StrategyKind.SPIRAL:
        return SpiralSelector(graph, rng), 0
    if kind is StrategyKind.SPIRAL_REPULSION:
        return SpiralRepulsionSelector(graph, rng, repulsion), 0
    ctx = _extrema_context(graph)
    if kind is StrategyKind.EXTREMA:
        return ExtremaSelector(ctx, graph.n), EXTREMA_OVERHEAD
    if kind is StrategyKind.FILLING_RATE:
        return FillingRateSelector(ctx, graph.n), EXTREMA_OVERHEAD
    raise ValueError(f"unknown strategy {kind!r}")


def run_strategy(image: Image, metric: Metric, kind: StrategyKind, seed: int = 0,
                 *, repulsion: int = DEFAULT_REPULSION, naive_with_tree: bool = False,
                 force: bool = False) -> RunResult:
    """Fill the all-pairs distance array with ``kind``'s source selection.

    Repeats propagate + fill until the filling rate reaches 1 and records a
    (propagation index, source, rate) sample after each fill.  The naive
    baseline marks only the source's row and column per propagation unless
    ``naive_with_tree`` asks it to exploit tree redundancy too.
    """
    graph = GridGraph(image, metric)
    store = DistanceArray(graph.n, force=force)
    rng = np.random.default_rng(seed)
    selector, overhead = _make_selector(kind, graph, rng, repulsion)
    use_tree = kind is not StrategyKind.NAIVE or naive_with_tree
    samples: list[tuple[int, int, Fraction]] = []
    count = 0
    while not store.is_complete:
        source = selector.next_source(store)
        result = graph.propagate([source])
        if use_tree:
            store.fill_from_tree(build_tree(result, source))
        else:
            store.fill_from_source(source, result.dist)
        count += 1
        samples.append((count, source, store.filling_rate()))
    trace = FillingTrace(samples, count, count + overhead)
    return RunResult(store, trace, seed)


def relative_difference(n_baseline: float, n_method: float) -> float:
    """Percent reduction of ``n_method`` relative to ``n_baseline``."""
    if n_baseline <= 0:
        raise ValueError(f"baseline count must be positive, got {n_baseline}")
    return 100.0 * (n_baseline - n_method) / n_baseline
