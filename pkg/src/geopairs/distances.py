"""The N x N geodesic distances array, its mark matrix, and filling bookkeeping."""

from __future__ import annotations

import struct
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._kernels import fill_tree_pairs
from .propagation import GeodesicTree

#: Pixel-count guard for the dense N^2 allocation (override with force=True).
MAX_PIXELS = 10_000

#: Unfilled entries in the binary dump are all-ones unsigned 64-bit words.
APGD_MAGIC = b"APGD"
APGD_VERSION = 1
APGD_SENTINEL = 0xFFFF_FFFF_FFFF_FFFF


class SizeGuardError(RuntimeError):
    """Raised when an allocation would exceed the dense-storage pixel guard."""


@dataclass(frozen=True)
class FillStats:
    """Pair bookkeeping: A = (N^2-N)/2 total pairs, a filled, rate = a/A."""

    total_pairs: int
    filled_pairs: int
    rate: Fraction


class DistanceArray:
    """Symmetric all-pairs distance array D with boolean mark matrix.

    The diagonal is marked and zero from the start ("the distance from one
    pixel to itself is zero"); every other entry starts unmarked with a -1
    sentinel.  Filled entries are exact scaled integer distances.  A running
    pair count and per-pixel column counts are maintained so filling rates
    are O(1) to query.
    """

    def __init__(self, n: int, *, force: bool = False):
        if n < 2:
            raise ValueError(f"need at least 2 pixels, got {n}")
        if n > MAX_PIXELS and not force:
            raise SizeGuardError(
                f"{n} pixels needs a dense {n}x{n} array "
                f"(guard is {MAX_PIXELS}); pass force=True to override"
            )
        self.n = n
        self.dist = np.full((n, n), -1, dtype=np.int64)
        self.mark = np.zeros((n, n), dtype=np.bool_)
        np.fill_diagonal(self.dist, 0)
        np.fill_diagonal(self.mark, True)
        self._filled_pairs = 0
        # marked off-diagonal entries per column; column i full at n-1
        self._point_filled = np.zeros(n, dtype=np.int64)

    @property
    def total_pairs(self) -> int:
        return (self.n * self.n - self.n) // 2

    @property
    def pairs_filled(self) -> int:
        return self._filled_pairs

    @property
    def point_filled_counts(self) -> np.ndarray:
        """Read-only per-pixel counts of marked off-diagonal entries."""
        view = self._point_filled.view()
        view.setflags(write=False)
        return view

    @property
    def is_complete(self) -> bool:
        return self._filled_pairs == self.total_pairs

    def filling_rate(self) -> Fraction:
        """Exact filled fraction a/A; 1 iff every pair is marked."""
        return Fraction(self._filled_pairs, self.total_pairs)

    def point_filling_rate(self, pixel: int) -> Fraction:
        """Exact fraction of pixel's off-diagonal pairs already marked."""
        if not 0 <= pixel < self.n:
            raise ValueError(f"pixel {pixel} out of range for n={self.n}")
        return Fraction(int(self._point_filled[pixel]), self.n - 1)

    def stats(self) -> FillStats:
        return FillStats(self.total_pairs, self._filled_pairs, self.filling_rate())

    def fill_from_tree(self, tree: GeodesicTree) -> int:
        """Mark every ancestor/descendant pair of a geodesic tree.

        Each pair (u, v) with u an ancestor of v gets distance
        tree.dist[v] - tree.dist[u]; the root pairs with every pixel, so the
        root is fully filled afterwards.  Already-marked pairs are skipped
        (first writer wins) but must agree in value.  Returns the number of
        previously-unmarked pairs that were set.
        """
        if tree.parent.shape[0] != self.n or tree.dist.shape[0] != self.n:
            raise ValueError(
                f"tree spans {tree.parent.shape[0]} pixels, array holds {self.n}"
            )
        new, bad = fill_tree_pairs(
            tree.parent, tree.dist, self.dist, self.mark, self._point_filled
        )
        if new < 0:
            raise ValueError("tree parent links contain a cycle")
        if bad:
            raise ValueError(
                f"tree distances disagree with {bad} already-stored entries"
            )
        self._filled_pairs += new
        return new

    def fill_from_source(self, source: int, dist: np.ndarray) -> int:
        """Mark the source's full row and column from a per-pixel distance map.

        This is the redundancy-free fill used by the naive baseline and the
        brute-force oracle.  Returns the number of newly marked pairs.
        """
        if not 0 <= source < self.n:
            raise ValueError(f"source {source} out of range for n={self.n}")
        if dist.shape[0] != self.n:
            raise ValueError(f"distance map has {dist.shape[0]} entries, need {self.n}")
        if dist[source] != 0:
            raise ValueError("source's distance to itself must be 0")
        old = self.mark[source].copy()
        old[source] = False
        idx_old = np.flatnonzero(old)
        if idx_old.size and not np.array_equal(self.dist[source, idx_old], dist[idx_old]):
            raise ValueError("distance map disagrees with already-stored entries")
        new = ~self.mark[source]
        idx = np.flatnonzero(new)
        if idx.size:
            self.dist[source, idx] = dist[idx]
            self.dist[idx, source] = dist[idx]
            self.mark[source, idx] = True
            self.mark[idx, source] = True
            self._point_filled[idx] += 1
            self._point_filled[source] += idx.size
            self._filled_pairs += idx.size
        return int(idx.size)

    def to_bytes(self) -> bytes:
        """Serialize to the APGD binary dump (magic, version, n, u64 grid)."""
        out = self.dist.astype(np.uint64)
        out[~self.mark] = APGD_SENTINEL
        header = APGD_MAGIC + struct.pack("<BI", APGD_VERSION, self.n)
        return header + out.astype("<u8").tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "DistanceArray":
        """Parse an APGD binary dump back into a DistanceArray."""
        head = len(APGD_MAGIC) + 5
        if len(data) < head or data[:4] != APGD_MAGIC:
            raise ValueError("not an APGD dump (bad magic)")
        version, n = struct.unpack("<BI", data[4:head])
        if version != APGD_VERSION:
            raise ValueError(f"unsupported APGD version {version}")
        expected = head + 8 * n * n
        if len(data) != expected:
            raise ValueError(f"APGD dump has {len(data)} bytes, expected {expected}")
        grid = np.frombuffer(data, dtype="<u8", offset=head).reshape(n, n)
        store = cls(n, force=True)
        mark = grid != APGD_SENTINEL
        dist = np.where(mark, grid, 0).astype(np.int64)
        dist[~mark] = -1
        store.dist = dist
        store.mark = mark.copy()
        store._point_filled = mark.sum(axis=0).astype(np.int64) - 1
        store._filled_pairs = int(mark.sum() - n) // 2
        return store
