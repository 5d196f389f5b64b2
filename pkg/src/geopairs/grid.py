"""Grayscale images viewed as 8-connected grid graphs with grey-level edge weights."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

GREY_MIN = 1
GREY_MAX = 255


class Metric(Enum):
    """Edge dissimilarity between two neighboring pixels p, q.

    All weights are kept on a x2 integer scale so that MEAN stays integral
    and the three metrics share one exact comparison domain:

        L1   -> 2 * |f(p) - f(q)|
        SUM  -> 2 * (f(p) + f(q))
        MEAN -> f(p) + f(q)

    SUM is the default everywhere; it is strictly positive on images with
    grey levels >= 1, which L1 is not.
    """

    L1 = "l1"
    SUM = "sum"
    MEAN = "mean"


@dataclass(frozen=True)
class Image:
    """A grayscale image with integer grey levels in [1, 255].

    ``pixels`` is a read-only (height, width) int64 array.  Pixels are
    addressed either by (row, col) or by a flat row-major index in
    [0, width*height).
    """

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 2:
            raise ValueError(f"image must be 2-D, got shape {arr.shape}")
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError(f"grey levels must be integers, got dtype {arr.dtype}")
        if arr.size < 2:
            raise ValueError("image must contain at least 2 pixels")
        if arr.min() < GREY_MIN or arr.max() > GREY_MAX:
            raise ValueError(
                f"grey levels must be in [{GREY_MIN}, {GREY_MAX}], "
                f"got range [{arr.min()}, {arr.max()}]"
            )
        arr = arr.astype(np.int64, copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @classmethod
    def from_flat(cls, width: int, height: int, values: Sequence[int]) -> "Image":
        """Build an image from a row-major flat sequence of grey levels."""
        flat = np.asarray(values)
        if width < 1 or height < 1:
            raise ValueError(f"invalid dimensions {width}x{height}")
        if flat.size != width * height:
            raise ValueError(
                f"expected {width * height} values for {width}x{height}, got {flat.size}"
            )
        return cls(flat.reshape(height, width))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def size(self) -> int:
        """Number of pixels N."""
        return self.pixels.size

    @property
    def flat(self) -> np.ndarray:
        """Row-major view of the grey levels."""
        return self.pixels.reshape(-1)

    def value_at(self, pixel: int) -> int:
        return int(self.flat[check_pixel((self.width, self.height), pixel)])


def pixel_index(row: int, col: int, width: int) -> int:
    """Flat row-major index of (row, col)."""
    if row < 0 or col < 0 or col >= width:
        raise ValueError(f"invalid pixel (row={row}, col={col}) for width {width}")
    return row * width + col


def pixel_rowcol(pixel: int, width: int) -> tuple[int, int]:
    """(row, col) of a flat pixel index."""
    if pixel < 0:
        raise ValueError(f"invalid pixel index {pixel}")
    return divmod(pixel, width)


def check_pixel(dims: tuple[int, int], pixel: int) -> int:
    width, height = dims
    if not 0 <= pixel < width * height:
        raise ValueError(f"pixel {pixel} out of range for {width}x{height} image")
    return pixel


def neighbors(dims: tuple[int, int], pixel: int) -> list[int]:
    """All 8-neighbors of ``pixel`` on a ``dims = (width, height)`` grid.

    A pixel is never its own neighbor; the relation is symmetric.  Interior
    pixels have 8 neighbors, edge pixels 5, corner pixels 3.
    """
    width, height = dims
    check_pixel(dims, pixel)
    row, col = divmod(pixel, width)
    out = []
    for r in range(max(0, row - 1), min(height, row + 2)):
        for c in range(max(0, col - 1), min(width, col + 2)):
            if r == row and c == col:
                continue
            out.append(r * width + c)
    return out


def are_neighbors(dims: tuple[int, int], p: int, q: int) -> bool:
    width, _ = dims
    check_pixel(dims, p)
    check_pixel(dims, q)
    if p == q:
        return False
    pr, pc = divmod(p, width)
    qr, qc = divmod(q, width)
    return abs(pr - qr) <= 1 and abs(pc - qc) <= 1


def scaled_weight(metric: Metric, fp, fq):
    """x2-scaled edge weight between grey levels fp and fq (scalar or array)."""
    if metric is Metric.L1:
        return 2 * abs(fp - fq)
    if metric is Metric.SUM:
        return 2 * (fp + fq)
    if metric is Metric.MEAN:
        return fp + fq
    raise ValueError(f"unknown metric {metric!r}")


def edge_weight(image: Image, metric: Metric, p: int, q: int) -> int:
    """Scaled weight of the edge (p, q); p and q must be 8-neighbors."""
    if not are_neighbors((image.width, image.height), p, q):
        raise ValueError(f"pixels {p} and {q} are not 8-neighbors")
    flat = image.flat
    return int(scaled_weight(metric, int(flat[p]), int(flat[q])))


def path_time(image: Image, metric: Metric, path: Sequence[int]) -> int:
    """Summed scaled weight along a path of pairwise-neighboring pixels.

    A single-pixel path has time 0 (empty sum).
    """
    if len(path) < 1:
        raise ValueError("a path must contain at least one pixel")
    check_pixel((image.width, image.height), path[0])
    total = 0
    for p, q in zip(path, path[1:]):
        total += edge_weight(image, metric, p, q)
    return total
