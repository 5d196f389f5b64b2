"""Geodesic propagations (single- or multi-source shortest paths) and their trees."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._kernels import UNREACHED, dijkstra_csr
from .grid import Image, Metric, check_pixel, scaled_weight

_NEIGHBOR_OFFSETS = [(dr, dc) for dr in (-1, 0, 1) for dc in (-1, 0, 1) if (dr, dc) != (0, 0)]


@dataclass(frozen=True)
class PropagationResult:
    """Distances and shortest-path forest of one geodesic propagation.

    ``dist[v]`` is the scaled geodesic distance from the nearest source;
    ``parent[v]`` is the predecessor on one geodesic path (-1 for sources).
    """

    sources: tuple[int, ...]
    dist: np.ndarray
    parent: np.ndarray


@dataclass(frozen=True)
class GeodesicTree:
    """Shortest-path tree of a single-source propagation.

    The root has no parent, leaves have no children, and the tree spans the
    whole image (the grid is connected).  ``children[v]`` lists v's children
    in ascending pixel order.
    """

    root: int
    parent: np.ndarray
    dist: np.ndarray
    children: list[list[int]]
    leaves: list[int]


class GridGraph:
    """8-connected grid graph of an image, with edges cached in CSR form.

    Building the adjacency once and reusing it across the hundreds of
    propagations of a strategy run is what keeps runs fast.
    """

    def __init__(self, image: Image, metric: Metric = Metric.SUM):
        self.image = image
        self.metric = metric
        self.n = image.size
        self._indptr, self._indices, self._weights = _build_csr(image, metric)

    def propagate(self, sources: Sequence[int]) -> PropagationResult:
        """Geodesic distances from the nearest of ``sources`` to every pixel."""
        srcs = _checked_sources(self.image, sources)
        dist, parent = dijkstra_csr(
            self._indptr, self._indices, self._weights, srcs, self.n
        )
        return PropagationResult(tuple(int(s) for s in srcs), dist, parent)


def _build_csr(image: Image, metric: Metric):
    height, width = image.pixels.shape
    flat = image.flat
    srcs, dsts, wts = [], [], []
    for dr, dc in _NEIGHBOR_OFFSETS:
        r0, r1 = max(0, -dr), min(height, height - dr)
        c0, c1 = max(0, -dc), min(width, width - dc)
        if r0 >= r1 or c0 >= c1:
            continue
        rr, cc = np.meshgrid(np.arange(r0, r1), np.arange(c0, c1), indexing="ij")
        s = (rr * width + cc).ravel()
        d = ((rr + dr) * width + (cc + dc)).ravel()
        srcs.append(s)
        dsts.append(d)
        wts.append(scaled_weight(metric, flat[s], flat[d]))
    src = np.concatenate(srcs)
    dst = np.concatenate(dsts)
    w = np.concatenate(wts)
    order = np.lexsort((dst, src))
    src, dst, w = src[order], dst[order], w[order]
    indptr = np.zeros(image.size + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    return np.cumsum(indptr), dst.astype(np.int64), w.astype(np.int64)


def _checked_sources(image: Image, sources: Sequence[int]) -> np.ndarray:
    if len(sources) == 0:
        raise ValueError("at least one source pixel is required")
    dims = (image.width, image.height)
    srcs = np.asarray([check_pixel(dims, int(s)) for s in sources], dtype=np.int64)
    if len(set(srcs.tolist())) != len(srcs):
        raise ValueError("duplicate source pixels")
    return srcs


def propagate(image: Image, metric: Metric, sources: Sequence[int]) -> PropagationResult:
    """One-shot propagation; builds the grid graph and runs it once.

    Prefer a shared :class:`GridGraph` when propagating repeatedly from the
    same image.
    """
    return GridGraph(image, metric).propagate(sources)


def build_tree(result: PropagationResult, root: int) -> GeodesicTree:
    """Materialize the geodesic tree of a single-source propagation."""
    if result.sources != (root,):
        raise ValueError(
            f"tree root {root} does not match propagation sources {result.sources}"
        )
    n = result.dist.shape[0]
    if np.any(result.dist >= UNREACHED):
        raise ValueError("propagation did not reach every pixel")
    children: list[list[int]] = [[] for _ in range(n)]
    parent = result.parent
    for v in range(n):
        p = parent[v]
        if p >= 0:
            children[p].append(v)
    leaves = [v for v in range(n) if not children[v]]
    return GeodesicTree(root, parent, result.dist, children, leaves)


def boundary_pixels(dims: tuple[int, int]) -> list[int]:
    """All pixels on the image border (first/last row or column), ascending."""
    width, height = dims
    if width < 1 or height < 1:
        raise ValueError(f"invalid dimensions {width}x{height}")
    out = []
    for row in range(height):
        if row == 0 or row == height - 1:
            out.extend(range(row * width, row * width + width))
        else:
            out.append(row * width)
            if width > 1:
                out.append(row * width + width - 1)
    return out
