"""Instance generators: fixed constructions and seeded random families."""

from __future__ import annotations

import numpy as np

from .errors import InputError
from .graph import DistanceMatrix, WeightedGraph, metric_closure

EAR_GAP_CYCLE = (5.0, 2.0, 1.0, 2.0, 3.0, 1.0, 2.0)


def ear_gap_graph(epsilon: float = 1 / 16) -> WeightedGraph:
    """Seven-cycle ``v1..v7`` plus the path ``v1 - v8 - v4`` weighted
    ``3 + eps`` and ``2 + eps``. Its T-join value is ``9 + eps``, strictly
    below every ear-decomposition bound."""
    if not epsilon > 0:
        raise InputError("epsilon must be positive")
    labels = tuple(f"v{i}" for i in range(1, 9))
    edges = [(i, (i + 1) % 7, w) for i, w in enumerate(EAR_GAP_CYCLE)]
    edges += [(0, 7, 3.0 + epsilon), (7, 3, 2.0 + epsilon)]
    return WeightedGraph(labels, tuple(edges))


def line_points(pairs: int, epsilon: float) -> np.ndarray:
    """``2 * pairs`` points with ``p[2i] = i`` and ``p[2i+1] = i + epsilon``."""
    if pairs < 1:
        raise InputError("need at least one pair")
    if not 0 < epsilon < 1:
        raise InputError("epsilon must lie in (0, 1)")
    return np.array([i + (epsilon if j else 0.0) for i in range(pairs) for j in (0, 1)])


def line_pairs(pairs: int, epsilon: float) -> WeightedGraph:
    """Complete graph on :func:`line_points` with absolute-difference weights."""
    pts = line_points(pairs, epsilon)
    d = DistanceMatrix(np.abs(pts[:, None] - pts[None, :]), tuple(f"p{i}" for i in range(len(pts))))
    return d.as_graph()


def unit_complete(n: int) -> WeightedGraph:
    if n < 2:
        raise InputError("need at least two vertices")
    return WeightedGraph.from_edges(n, [(i, j, 1.0) for i in range(n) for j in range(i + 1, n)])


def random_one_two(n: int, p1: float, rng: np.random.Generator) -> WeightedGraph:
    """Complete graph where each pair independently weighs 1 with probability ``p1``, else 2."""
    if n < 2:
        raise InputError("need at least two vertices")
    if not 0 <= p1 <= 1:
        raise InputError("p1 must lie in [0, 1]")
    edges = [(i, j, 1.0 if rng.random() < p1 else 2.0) for i in range(n) for j in range(i + 1, n)]
    return WeightedGraph.from_edges(n, edges)


def random_points(n: int, rng: np.random.Generator, dim: int = 2) -> WeightedGraph:
    """Complete Euclidean graph on uniform points in the unit square."""
    if n < 2:
        raise InputError("need at least two vertices")
    return DistanceMatrix.from_points(rng.random((n, dim))).as_graph()


def random_connected(n: int, extra: int, rng: np.random.Generator) -> WeightedGraph:
    """Random spanning tree plus ``extra`` further distinct edges; weights uniform in ``(0, 1]``."""
    if n < 1:
        raise InputError("need at least one vertex")
    pairs: set[tuple[int, int]] = set()
    perm = rng.permutation(n)
    for i in range(1, n):
        a, b = int(perm[i]), int(perm[rng.integers(0, i)])
        pairs.add((min(a, b), max(a, b)))
    room = n * (n - 1) // 2 - len(pairs)
    for _ in range(min(extra, room)):
        while True:
            a, b = (int(x) for x in rng.choice(n, 2, replace=False))
            key = (min(a, b), max(a, b))
            if key not in pairs:
                pairs.add(key)
                break
    edges = [(a, b, float(1.0 - rng.random())) for a, b in sorted(pairs)]
    return WeightedGraph.from_edges(n, edges)


def random_two_edge_connected(n: int, extra: int, rng: np.random.Generator, unit: bool = False) -> WeightedGraph:
    """Hamiltonian cycle through a random permutation plus ``extra`` chords."""
    if n < 3:
        raise InputError("need at least three vertices")
    perm = [int(x) for x in rng.permutation(n)]
    pairs = {(min(a, b), max(a, b)) for a, b in zip(perm, perm[1:] + perm[:1])}
    room = n * (n - 1) // 2 - len(pairs)
    for _ in range(min(extra, room)):
        while True:
            a, b = (int(x) for x in rng.choice(n, 2, replace=False))
            key = (min(a, b), max(a, b))
            if key not in pairs:
                pairs.add(key)
                break
    edges = [(a, b, 1.0 if unit else float(1.0 - rng.random())) for a, b in sorted(pairs)]
    return WeightedGraph.from_edges(n, edges)


def random_metric(n: int, rng: np.random.Generator) -> DistanceMatrix:
    """Either Euclidean points or the shortest-path closure of random complete weights."""
    if rng.random() < 0.5:
        return DistanceMatrix.from_points(rng.random((n, 2)))
    w = 1.0 - rng.random((n, n))
    w = np.triu(w, 1)
    return metric_closure(DistanceMatrix(w + w.T).as_graph())
