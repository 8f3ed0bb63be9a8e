"""Christofides tours and an exhaustive optimal-tour oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

from .errors import InfeasibleError, InputError, SizeLimitError
from .graph import DistanceMatrix, verify_metric
from .matching import min_weight_perfect_matching

BRUTE_FORCE_TSP_LIMIT = 10


@dataclass(frozen=True)
class Tour:
    """Cyclic vertex order; ``cost`` includes the closing edge."""

    order: tuple[int, ...]
    cost: float

    def edges(self) -> list[tuple[int, int]]:
        n = len(self.order)
        return [(self.order[i], self.order[(i + 1) % n]) for i in range(n)]


def tour_cost(d: DistanceMatrix, order) -> float:
    n = len(order)
    return math.fsum(float(d.d[order[i], order[(i + 1) % n]]) for i in range(n))


def minimum_spanning_tree(d: DistanceMatrix) -> list[tuple[int, int]]:
    """Dense Prim from vertex 0; ties go to the smaller index."""
    n = d.n
    in_tree = [False] * n
    best = [math.inf] * n
    link = [-1] * n
    best[0] = 0.0
    out = []
    for _ in range(n):
        u = min((v for v in range(n) if not in_tree[v]), key=lambda v: (best[v], v))
        in_tree[u] = True
        if link[u] >= 0:
            out.append((min(u, link[u]), max(u, link[u])))
        for v in range(n):
            if not in_tree[v] and d.d[u, v] < best[v]:
                best[v] = float(d.d[u, v])
                link[v] = u
    return out


def _euler_circuit(n: int, edges: list[tuple[int, int]], start: int = 0) -> list[int]:
    """Hierholzer on a connected multigraph with all degrees even."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for k, (u, v) in enumerate(edges):
        adj[u].append((v, k))
        adj[v].append((u, k))
    for row in adj:
        row.sort(reverse=True)  # pop() then yields the smallest neighbour
    used = [False] * len(edges)
    stack = [start]
    circuit = []
    while stack:
        v = stack[-1]
        while adj[v] and used[adj[v][-1][1]]:
            adj[v].pop()
        if adj[v]:
            w, k = adj[v].pop()
            used[k] = True
            stack.append(w)
        else:
            circuit.append(stack.pop())
    circuit.reverse()
    return circuit


def christofides(d: DistanceMatrix) -> Tour:
    """Spanning tree + exact matching on its odd vertices + Euler tour + shortcuts.

    Cost is at most 1.5 times the optimal tour on metric input.
    """
    n = d.n
    if n < 3:
        raise InputError(f"a tour needs at least 3 vertices, got {n}")
    if verify_metric(d):
        raise InfeasibleError("Christofides needs a metric; run metric_closure first")
    tree = minimum_spanning_tree(d)
    degree = [0] * n
    for u, v in tree:
        degree[u] += 1
        degree[v] += 1
    odd = [v for v in range(n) if degree[v] % 2]
    matching = min_weight_perfect_matching(d, odd)
    circuit = _euler_circuit(n, tree + list(matching.pairs))
    seen: set[int] = set()
    order = []
    for v in circuit:
        if v not in seen:
            seen.add(v)
            order.append(v)
    return Tour(tuple(order), tour_cost(d, order))


def brute_force_tsp(d: DistanceMatrix) -> Tour:
    """Optimal tour by enumerating permutations with vertex 0 fixed first."""
    n = d.n
    if n > BRUTE_FORCE_TSP_LIMIT:
        raise SizeLimitError(f"brute-force TSP is capped at {BRUTE_FORCE_TSP_LIMIT} vertices, got {n}")
    if n < 3:
        raise InputError(f"a tour needs at least 3 vertices, got {n}")
    dist = d.d.tolist()
    best_cost, best_order = math.inf, None
    for perm in permutations(range(1, n)):
        if perm[0] > perm[-1]:
            continue  # each cycle is seen in both directions
        c = dist[0][perm[0]] + dist[perm[-1]][0]
        for a, b in zip(perm, perm[1:]):
            c += dist[a][b]
        if c < best_cost:
            best_cost, best_order = c, (0,) + perm
    return Tour(best_order, tour_cost(d, best_order))


def tsp_half_upper_bound(d: DistanceMatrix) -> float:
    """Half of a Christofides tour: any tour splits into two perfect matchings
    (after shortcutting to an even vertex subset)."""
    return christofides(d).cost / 2.0
