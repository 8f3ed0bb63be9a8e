from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import line_metric
from tjoin.errors import InputError
from tjoin.generators import random_metric
from tjoin.graph import DistanceMatrix
from tjoin.greedy import greedy_ordering, harmonic, prefix_matching_sequence, tjoin_bounds
from tjoin.oracle import brute_force_mu, brute_force_mu_2k


def test_line_ordering(line_0_1_9_10):
    o = greedy_ordering(line_0_1_9_10, 0)
    assert o.order == (0, 3, 1, 2)  # positions 0, 10, 1, 9
    assert o.step_distance == (math.inf, 10.0, 1.0, 1.0)


def test_single_vertex():
    assert greedy_ordering(DistanceMatrix(np.zeros((1, 1))), 0).order == (0,)


def test_bad_start(line_0_1_9_10):
    with pytest.raises(InputError):
        greedy_ordering(line_0_1_9_10, 4)


@pytest.mark.parametrize("m, value", [(0, 0.0), (1, 1.0), (4, 25 / 12)])
def test_harmonic(m, value):
    assert harmonic(m) == pytest.approx(value, abs=1e-15)


def test_prefix_sequence_on_line(line_0_1_9_10):
    rows = prefix_matching_sequence(line_0_1_9_10, greedy_ordering(line_0_1_9_10))
    assert [r.mwm_prefix for r in rows] == [10.0, 2.0]
    assert [r.opt_prefix for r in rows] == [10.0, 10.0]
    assert [r.harmonic_ub for r in rows] == [20.0, 40.0]


def test_unit_complete_prefixes():
    d = DistanceMatrix(np.ones((8, 8)) - np.eye(8))
    rows = prefix_matching_sequence(d, greedy_ordering(d))
    assert [r.mwm_prefix for r in rows] == [1.0, 2.0, 3.0, 4.0]


def test_bounds_on_line(line_0_1_9_10):
    tb = tjoin_bounds(line_0_1_9_10)
    assert (tb.lower, tb.upper) == (10.0, 40.0)
    assert sorted(tb.selected) == [0, 3]
    assert brute_force_mu(line_0_1_9_10).value == 10.0


def test_bounds_two_points():
    tb = tjoin_bounds(line_metric([0, 7]))
    assert (tb.lower, tb.upper) == (7.0, 14.0)


def test_eps_line_lower_below_mu():
    eps = 0.01
    pts = [i + (eps if j else 0.0) for i in range(4) for j in (0, 1)]
    d = line_metric(pts)
    tb = tjoin_bounds(d)
    assert tb.lower <= brute_force_mu(d).value + 1e-9
    assert brute_force_mu(d).value == pytest.approx(3.01, abs=1e-9)


def test_jobs_do_not_change_results(rng):
    d = random_metric(24, rng)
    a = prefix_matching_sequence(d, greedy_ordering(d), jobs=1)
    b = prefix_matching_sequence(d, greedy_ordering(d), jobs=4)
    assert a == b


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.integers(0, 2**31))
def test_step_distance_monotone(n, seed):
    d = random_metric(n, np.random.default_rng(seed))
    steps = greedy_ordering(d).step_distance
    assert all(steps[i] >= steps[i + 1] - 1e-12 for i in range(1, n - 1))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 9), st.integers(0, 2**31))
def test_sandwich(n, seed):
    d = random_metric(n, np.random.default_rng(seed))
    start = seed % n
    tb = tjoin_bounds(d, start)
    mu = brute_force_mu(d).value
    assert tb.lower <= mu + 1e-9 <= tb.upper + 2e-9
    for row in tb.prefixes:
        val = brute_force_mu_2k(d, row.k).value
        assert row.mwm_prefix <= val + 1e-9
        assert val <= row.harmonic_ub + 1e-9
