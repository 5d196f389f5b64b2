import numpy as np
import pytest

from geopairs.grid import Image, Metric, edge_weight
from geopairs.propagation import (
    GridGraph,
    boundary_pixels,
    build_tree,
    propagate,
)

from conftest import bellman_ford_distances, exhaustive_geodesic, random_image


class TestPropagate:
    def test_chain_distances(self):
        # 1x3 chain (1,2,3), SUM: unscaled (0,3,8) -> scaled (0,6,16)
        img = Image.from_flat(3, 1, [1, 2, 3])
        res = propagate(img, Metric.SUM, [0])
        assert res.dist.tolist() == [0, 6, 16]
        assert res.parent.tolist() == [-1, 0, 1]

    def test_constant_image_chebyshev(self):
        # constant grey f: every step costs 4f scaled, so dist = 4f * chebyshev
        f = 9
        img = Image(np.full((5, 5), f))
        res = propagate(img, Metric.SUM, [12])  # center
        cheb = np.array([[max(abs(r - 2), abs(c - 2)) for c in range(5)]
                         for r in range(5)]).ravel()
        assert np.array_equal(res.dist, 4 * f * cheb)

    def test_center_from_border_sources(self):
        f = 7
        img = Image(np.full((3, 3), f))
        res = propagate(img, Metric.SUM, boundary_pixels((3, 3)))
        assert res.dist[4] == 4 * f  # one step from the nearest border pixel
        assert all(res.dist[p] == 0 for p in boundary_pixels((3, 3)))

    @pytest.mark.parametrize("seed", range(6))
    def test_matches_reference_on_random_5x5(self, seed):
        rng = np.random.default_rng(seed)
        img = random_image(rng, 5, 5)
        src = int(rng.integers(img.size))
        res = propagate(img, Metric.SUM, [src])
        assert np.array_equal(res.dist, bellman_ford_distances(img, Metric.SUM, [src]))

    def test_matches_exhaustive_paths_on_2x3(self):
        rng = np.random.default_rng(21)
        img = random_image(rng, 3, 2)
        res = propagate(img, Metric.SUM, [0])
        for dst in range(1, img.size):
            assert res.dist[dst] == exhaustive_geodesic(img, Metric.SUM, 0, dst)

    def test_reference_equality_50_random_6x6(self):
        rng = np.random.default_rng(40)
        for _ in range(50):
            img = random_image(rng, 6, 6)
            src = int(rng.integers(img.size))
            metric = rng.choice(list(Metric))
            res = propagate(img, metric, [src])
            assert np.array_equal(res.dist, bellman_ford_distances(img, metric, [src]))

    def test_multi_source_is_min_of_single(self):
        rng = np.random.default_rng(33)
        for _ in range(10):
            img = random_image(rng, 5, 4)
            k = int(rng.integers(2, 5))
            sources = list(rng.choice(img.size, size=k, replace=False))
            multi = propagate(img, Metric.SUM, sources).dist
            singles = np.min(
                [propagate(img, Metric.SUM, [s]).dist for s in sources], axis=0
            )
            assert np.array_equal(multi, singles)

    def test_parent_links_consistent(self):
        rng = np.random.default_rng(17)
        img = random_image(rng, 6, 6)
        res = propagate(img, Metric.SUM, [0])
        for v in range(1, img.size):
            p = int(res.parent[v])
            assert res.dist[v] == res.dist[p] + edge_weight(img, Metric.SUM, p, v)

    def test_deterministic_parents(self):
        rng = np.random.default_rng(8)
        img = random_image(rng, 8, 8)
        a = propagate(img, Metric.SUM, [5])
        b = propagate(img, Metric.SUM, [5])
        assert np.array_equal(a.parent, b.parent)
        assert np.array_equal(a.dist, b.dist)

    def test_source_validation(self):
        img = Image.from_flat(2, 2, [1, 2, 3, 4])
        with pytest.raises(ValueError):
            propagate(img, Metric.SUM, [])
        with pytest.raises(ValueError):
            propagate(img, Metric.SUM, [0, 0])
        with pytest.raises(ValueError):
            propagate(img, Metric.SUM, [4])


class TestBuildTree:
    def test_chain_tree(self):
        img = Image.from_flat(3, 1, [1, 2, 3])
        tree = build_tree(propagate(img, Metric.SUM, [0]), 0)
        assert tree.children == [[1], [2], []]
        assert tree.leaves == [2]
        assert tree.root == 0

    def test_root_mismatch_rejected(self):
        img = Image.from_flat(3, 1, [1, 2, 3])
        res = propagate(img, Metric.SUM, [0])
        with pytest.raises(ValueError):
            build_tree(res, 1)

    def test_spans_all_pixels(self):
        img = Image(np.full((2, 2), 5))
        tree = build_tree(propagate(img, Metric.SUM, [0]), 0)
        as_child = sorted(v for kids in tree.children for v in kids)
        assert as_child == [1, 2, 3]  # every non-root exactly once

    def test_parent_child_inversion_roundtrip(self):
        rng = np.random.default_rng(29)
        img = random_image(rng, 6, 6)
        tree = build_tree(propagate(img, Metric.SUM, [11]), 11)
        for p, kids in enumerate(tree.children):
            for v in kids:
                assert tree.parent[v] == p
        for v in range(img.size):
            if v != tree.root:
                assert v in tree.children[int(tree.parent[v])]

    def test_dist_strictly_increases_down_sum_tree(self):
        rng = np.random.default_rng(30)
        img = random_image(rng, 7, 5)
        tree = build_tree(propagate(img, Metric.SUM, [3]), 3)
        for p, kids in enumerate(tree.children):
            for v in kids:
                assert tree.dist[v] > tree.dist[p]

    def test_edge_steps_match_weights(self):
        rng = np.random.default_rng(31)
        img = random_image(rng, 6, 4)
        tree = build_tree(propagate(img, Metric.SUM, [0]), 0)
        # walk every root->leaf path and check consecutive dist differences
        for leaf in tree.leaves:
            v = leaf
            while v != tree.root:
                p = int(tree.parent[v])
                assert tree.dist[v] - tree.dist[p] == edge_weight(img, Metric.SUM, p, v)
                v = p


class TestBoundaryPixels:
    @pytest.mark.parametrize("dims,count", [
        ((3, 3), 8),
        ((9, 9), 32),
        ((2, 2), 4),
        ((3, 1), 3),
    ])
    def test_counts(self, dims, count):
        pixels = boundary_pixels(dims)
        assert len(pixels) == count
        assert len(set(pixels)) == count

    def test_membership(self):
        w, h = 6, 5
        got = set(boundary_pixels((w, h)))
        for p in range(w * h):
            r, c = divmod(p, w)
            on_border = r in (0, h - 1) or c in (0, w - 1)
            assert (p in got) == on_border


class TestGridGraphReuse:
    def test_shared_graph_matches_one_shot(self):
        rng = np.random.default_rng(2)
        img = random_image(rng, 6, 6)
        graph = GridGraph(img, Metric.SUM)
        for src in (0, 7, 35):
            a = graph.propagate([src])
            b = propagate(img, Metric.SUM, [src])
            assert np.array_equal(a.dist, b.dist)
            assert np.array_equal(a.parent, b.parent)
