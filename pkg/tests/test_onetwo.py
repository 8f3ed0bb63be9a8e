from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tjoin.errors import InfeasibleError
from tjoin.generators import random_one_two
from tjoin.graph import WeightedGraph
from tjoin.matching import min_weight_perfect_matching
from tjoin.onetwo import OneTwoInstance, mu_12, validate_one_two
from tjoin.oracle import brute_force_mu


def test_triangle_of_ones():
    inst = OneTwoInstance(4, frozenset({(1, 2), (2, 3), (1, 3)}))
    res = mu_12(inst)
    assert res.value == 3.0
    assert len(res.ones_matching.pairs) == 1


def test_all_ones():
    pairs = frozenset((i, j) for i in range(4) for j in range(i + 1, 4))
    assert mu_12(OneTwoInstance(4, pairs)).value == 2.0


def test_odd_n_removal():
    res = mu_12(OneTwoInstance(3, frozenset({(1, 2)})))
    assert res.value == 2.0
    assert res.removed in (1, 2)


def test_validate():
    ok = WeightedGraph.from_edges(3, [(0, 1, 1), (1, 2, 2), (0, 2, 2)])
    assert validate_one_two(ok).weight_one == frozenset({(0, 1)})
    with pytest.raises(InfeasibleError):
        validate_one_two(WeightedGraph.from_edges(3, [(0, 1, 1), (1, 2, 1.5), (0, 2, 2)]))
    with pytest.raises(InfeasibleError):
        validate_one_two(WeightedGraph.from_edges(3, [(0, 1, 1), (1, 2, 2)]))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9), st.floats(0, 1), st.integers(0, 2**31))
def test_matches_oracle(n, p1, seed):
    inst = validate_one_two(random_one_two(n, p1, np.random.default_rng(seed)))
    res = mu_12(inst)
    d = inst.distance_matrix()
    assert res.value == brute_force_mu(d).value
    assert min_weight_perfect_matching(d, res.witness).cost == res.value
    if n % 2 == 0:
        assert res.value == min_weight_perfect_matching(d, range(n)).cost
