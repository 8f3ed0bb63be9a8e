from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tjoin.ears import (
    Ear,
    EarDecomposition,
    best_ear_upper_bound,
    decomposition_bound,
    decomposition_problems,
    dfs_ear_decomposition,
    ear_max,
    ear_upper_bound,
    hamiltonian_first_decomposition,
)
from tjoin.errors import InfeasibleError, InputError
from tjoin.generators import ear_gap_graph, random_two_edge_connected, unit_complete
from tjoin.graph import DistanceMatrix, load_edge_list, metric_closure
from tjoin.oracle import brute_force_mu
from tjoin.tsp import Tour

EPS = 1 / 16


def test_ear_max_examples():
    assert ear_max([3, 2, 2]) == 3.0
    assert ear_max([4.0]) == 0.0
    for m in range(1, 12):
        assert ear_max([1.0] * m) == m // 2


def test_ear_max_validation():
    with pytest.raises(InputError):
        ear_max([])
    with pytest.raises(InputError):
        ear_max([1.0, -1.0])
    with pytest.raises(InputError):
        ear_max([1.0] * 41)
    with pytest.raises(InputError):
        ear_max([1.0, 2.0], epsilon=1.5)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.floats(0.01, 10.0), min_size=1, max_size=14),
    st.sampled_from([0.5, 0.1, 0.01]),
)
def test_fptas_guarantee(ws, eps):
    exact = ear_max(ws)
    approx = ear_max(ws, epsilon=eps)
    assert approx <= exact + 1e-9
    assert approx >= (1 - eps) * exact - 1e-9


def test_single_cycle():
    g = load_edge_list("a,b,1\nb,c,2\nc,d,3\nd,a,4")
    dec = dfs_ear_decomposition(g)
    assert len(dec.ears) == 1 and dec.ears[0].is_cycle
    assert decomposition_problems(dec) == []


def test_ear_gap_dfs():
    g = ear_gap_graph(EPS)
    dec = dfs_ear_decomposition(g, 0)
    assert decomposition_problems(dec) == []
    assert [e.is_cycle for e in dec.ears] == [True, False]
    assert sorted(dec.ears[0].vertices) == list(range(7))
    assert dec.ears[1].vertices == (0, 7, 3)
    eb = ear_upper_bound(g, "dfs")
    assert eb.bound == pytest.approx(10.0625, abs=1e-12)
    assert eb.ear_values == pytest.approx((8.0, 2.0625))


def test_ear_gap_best_decomposition_by_hand():
    # cycle through v1 v7 v6 v5 v4 v8, then the path v1 v2 v3 v4
    g = ear_gap_graph(EPS)
    w = g.weight
    cyc = (0, 6, 5, 4, 3, 7)
    cw = tuple(w(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]))
    path = (0, 1, 2, 3)
    pw = tuple(w(a, b) for a, b in zip(path, path[1:]))
    dec = EarDecomposition((Ear(cyc, cw, True), Ear(path, pw)), g)
    assert decomposition_problems(dec) == []
    total, _ = decomposition_bound(dec)
    assert total == pytest.approx(9 + 2 * EPS, abs=1e-12)
    assert total >= brute_force_mu(metric_closure(g)).value


def test_k4_unit():
    g = unit_complete(4)
    dec = dfs_ear_decomposition(g)
    assert decomposition_problems(dec) == []
    assert sum(len(e.weights) for e in dec.ears) == 6


def test_hamiltonian_first_shapes():
    d4 = DistanceMatrix(np.ones((4, 4)) - np.eye(4))
    dec = hamiltonian_first_decomposition(d4, (0, 1, 2, 3))
    assert len(dec.ears) == 3
    assert sorted(e.vertices for e in dec.ears[1:]) == [(0, 2), (1, 3)]
    assert decomposition_problems(dec) == []
    d3 = DistanceMatrix(np.ones((3, 3)) - np.eye(3))
    assert len(hamiltonian_first_decomposition(d3, Tour((0, 1, 2), 3.0)).ears) == 1


def test_trivial_ears_contribute_zero():
    g = unit_complete(6)
    eb = ear_upper_bound(g, "hamiltonian-first")
    assert all(v == 0.0 for e, v in zip(eb.decomposition.ears, eb.ear_values) if e.is_trivial)


@pytest.mark.parametrize("n", [4, 6, 10])
def test_unit_complete_hamiltonian_first(n):
    assert ear_upper_bound(unit_complete(n), "hamiltonian-first").bound == n / 2


def test_tree_bound_is_total():
    g = load_edge_list("a,b,1\nb,c,2\nb,d,3")
    eb = ear_upper_bound(g)
    assert eb.bound == 6.0 and eb.decomposition.ears == ()


def test_dfs_rejects_bridges():
    g = load_edge_list("a,b,1\nb,c,1\na,c,1\nc,d,1")
    with pytest.raises(InfeasibleError):
        dfs_ear_decomposition(g)
    with pytest.raises(InfeasibleError):
        ear_upper_bound(g, "hamiltonian-first")


def test_text_round_trip():
    g = ear_gap_graph(EPS)
    dec = dfs_ear_decomposition(g)
    assert EarDecomposition.from_text(dec.to_text(), g) == dec


def test_epsilon_bound_still_sound():
    g = ear_gap_graph(EPS)
    exact = ear_upper_bound(g).bound
    approx = ear_upper_bound(g, epsilon=0.1).bound
    assert approx >= exact - 1e-9


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 7), st.integers(0, 5), st.booleans(), st.integers(0, 2**31))
def test_soundness(n, extra, unit, seed):
    g = random_two_edge_connected(n, extra, np.random.default_rng(seed), unit=unit)
    mu = brute_force_mu(metric_closure(g)).value
    for r in range(g.n):
        eb = ear_upper_bound(g, "dfs", root=r)
        assert decomposition_problems(eb.decomposition) == []
        assert eb.bound >= mu - 1e-9
    assert best_ear_upper_bound(g).bound >= mu - 1e-9


def test_bridges_added_back():
    g = load_edge_list("a,b,1\nb,c,1\na,c,1\nc,d,7\nd,e,1\ne,f,1\nd,f,1")
    eb = ear_upper_bound(g)
    assert eb.bridge_weight == 7.0
    assert eb.bound >= brute_force_mu(metric_closure(g)).value
