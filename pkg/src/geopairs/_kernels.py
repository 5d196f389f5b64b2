"""Numba kernels for the two hot loops: shortest-path propagation and tree filling.

Everything here works on plain int64/bool arrays so the jitted signatures stay
simple.  The public, validated entry points live in propagation.py and
distances.py.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# Larger than any reachable path time (max edge weight 1020, guard 1e4 pixels)
# while leaving headroom for the dist*n + id heap-key encoding.
UNREACHED = np.int64(1) << np.int64(50)


@njit(cache=True)
def _heap_push(heap, size, key):
    heap[size] = key
    size += 1
    j = size - 1
    while j > 0:
        up = (j - 1) >> 1
        if heap[up] > heap[j]:
            heap[up], heap[j] = heap[j], heap[up]
            j = up
        else:
            break
    return size


@njit(cache=True)
def dijkstra_csr(indptr, indices, weights, sources, n):
    """Multi-source Dijkstra over a CSR graph with non-negative int weights.

    The frontier is keyed by dist*n + id, i.e. ties in distance pop in
    ascending pixel-id order.  A pixel's parent is assigned on strict
    distance improvement only and never replaced on equality; sources keep
    parent -1.  Returns (dist, parent).
    """
    dist = np.full(n, UNREACHED, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    heap = np.empty(indices.shape[0] + sources.shape[0] + 1, dtype=np.int64)
    size = 0
    nn = np.int64(n)
    for i in range(sources.shape[0]):
        s = sources[i]
        dist[s] = 0
        size = _heap_push(heap, size, s)  # key = 0 * nn + s
    while size > 0:
        key = heap[0]
        size -= 1
        heap[0] = heap[size]
        j = 0
        while True:
            left = 2 * j + 1
            right = left + 1
            m = j
            if left < size and heap[left] < heap[m]:
                m = left
            if right < size and heap[right] < heap[m]:
                m = right
            if m == j:
                break
            heap[j], heap[m] = heap[m], heap[j]
            j = m
        u = key % nn
        d = key // nn
        if d != dist[u]:
            continue  # stale entry
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            nd = d + weights[k]
            if nd < dist[v]:
                dist[v] = nd
                parent[v] = u
                size = _heap_push(heap, size, nd * nn + v)
    return dist, parent


@njit(cache=True)
def fill_tree_pairs(parent, tdist, dist, mark, point_filled):
    """Mark every ancestor/descendant pair of a shortest-path tree.

    For each node v the parent chain is walked to the root; each pair (u, v)
    gets the distance difference tdist[v] - tdist[u], symmetrically.  Pairs
    already marked are left alone but checked for agreement.

    Returns (newly_filled, disagreements); newly_filled is -1 if the parent
    links contain a cycle.
    """
    n = parent.shape[0]
    new = 0
    bad = 0
    for v in range(n):
        dv = tdist[v]
        u = parent[v]
        steps = 0
        while u >= 0:
            duv = dv - tdist[u]
            if not mark[u, v]:
                mark[u, v] = True
                mark[v, u] = True
                dist[u, v] = duv
                dist[v, u] = duv
                point_filled[u] += 1
                point_filled[v] += 1
                new += 1
            elif dist[u, v] != duv:
                bad += 1
            u = parent[u]
            steps += 1
            if steps > n:
                return -1, bad
    return new, bad
