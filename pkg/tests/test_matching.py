from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import line_metric
from tjoin.errors import InputError, SizeLimitError
from tjoin.generators import random_metric
from tjoin.graph import DistanceMatrix, WeightedGraph
from tjoin.matching import (
    brute_force_matching,
    exact_integers,
    max_cardinality_matching,
    min_weight_perfect_matching,
)


def test_single_pair(line_0_1_9_10):
    m = min_weight_perfect_matching(line_0_1_9_10, [1, 3])
    assert m.pairs == ((1, 3),)
    assert m.cost == 9.0


def test_line_four_points(line_0_1_9_10):
    m = min_weight_perfect_matching(line_0_1_9_10, [0, 1, 2, 3])
    assert m.pairs == ((0, 1), (2, 3))
    assert m.cost == 2.0
    assert brute_force_matching(line_0_1_9_10, [0, 1, 2, 3]).cost == 2.0


def test_empty_and_invalid(line_0_1_9_10):
    assert min_weight_perfect_matching(line_0_1_9_10, []).cost == 0.0
    with pytest.raises(InputError):
        min_weight_perfect_matching(line_0_1_9_10, [0, 1, 2])
    with pytest.raises(InputError):
        min_weight_perfect_matching(line_0_1_9_10, [0, 0])
    with pytest.raises(InputError):
        min_weight_perfect_matching(line_0_1_9_10, [0, 7])


def test_brute_force_cap():
    d = DistanceMatrix(np.ones((16, 16)) - np.eye(16))
    with pytest.raises(SizeLimitError):
        brute_force_matching(d, range(16))


def test_ties_resolved_lexicographically():
    d = DistanceMatrix(np.ones((6, 6)) - np.eye(6))
    assert min_weight_perfect_matching(d, range(6)).pairs == ((0, 1), (2, 3), (4, 5))


def test_exact_integers_preserve_ratios():
    vals = [0.1, 0.25, 3.0, 1e-3]
    ints = exact_integers(vals)
    assert all(isinstance(x, int) for x in ints)
    for a, b in zip(vals, ints):
        assert a * ints[2] == pytest.approx(b * 3.0, rel=1e-15)


def test_max_cardinality_examples():
    tri = WeightedGraph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    assert len(max_cardinality_matching(tri).pairs) == 1
    c6 = WeightedGraph.from_edges(6, [(i, (i + 1) % 6, 1) for i in range(6)])
    assert len(max_cardinality_matching(c6).pairs) == 3
    assert max_cardinality_matching(WeightedGraph.from_edges(4, [])).pairs == ()


def test_six_random_points_agree(rng):
    d = DistanceMatrix.from_points(rng.random((6, 2)))
    assert min_weight_perfect_matching(d, range(6)).cost == pytest.approx(
        brute_force_matching(d, range(6)).cost, abs=1e-9
    )


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 4, 6, 8, 10]), st.integers(0, 2**31))
def test_blossom_matches_oracle(n, seed):
    d = random_metric(n, np.random.default_rng(seed))
    fast = min_weight_perfect_matching(d, range(n))
    slow = brute_force_matching(d, range(n))
    assert abs(fast.cost - slow.cost) <= 1e-9
    assert sorted(fast.vertices()) == list(range(n))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=2, max_size=10))
def test_blossom_on_integer_lines(xs):
    # heavy ties: repeated integer positions are replaced by a tiny offset
    pts = [x + i * 1e-3 for i, x in enumerate(xs)]
    if len(pts) % 2:
        pts.pop()
    d = line_metric(pts)
    subset = range(len(pts))
    assert min_weight_perfect_matching(d, subset).cost == pytest.approx(
        brute_force_matching(d, subset).cost, abs=1e-9
    )


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 10), st.floats(0.05, 0.95), st.integers(0, 2**31))
def test_max_cardinality_against_enumeration(n, p, seed):
    rng = np.random.default_rng(seed)
    edges = [(i, j, 1.0) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    g = WeightedGraph.from_edges(n, edges)
    got = max_cardinality_matching(g)
    used = [x for pair in got.pairs for x in pair]
    assert len(used) == len(set(used))
    assert all(g.weight(u, v) is not None for u, v in got.pairs)

    def best(avail: frozenset) -> int:
        if not avail:
            return 0
        v = min(avail)
        rest = avail - {v}
        out = best(rest)
        for u in rest:
            if g.weight(u, v) is not None:
                out = max(out, 1 + best(rest - {u}))
        return out

    assert len(got.pairs) == best(frozenset(range(n)))
