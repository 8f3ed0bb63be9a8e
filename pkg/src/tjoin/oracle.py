"""Exhaustive ground truth for small instances.

Everything here is exponential and guarded by hard size caps; nothing
returns a value it has not fully enumerated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import InputError, SizeLimitError
from .graph import TOL, DistanceMatrix, WeightedGraph, metric_closure
from .matching import brute_force_matching

MU_LIMIT = 12
CYCLE_EDGE_LIMIT = 20
VALID_SET_EDGE_LIMIT = 16


@dataclass(frozen=True)
class ValidEdgeSet:
    edges: tuple[int, ...]
    weight: float
    odd_vertices: tuple[int, ...]


@dataclass(frozen=True)
class OracleValue:
    value: float
    subset: tuple[int, ...]


@dataclass(frozen=True)
class EquivalenceReport:
    valid_set_weight: float
    mu_value: float
    odd_matching_cost: float
    valid_set: ValidEdgeSet

    @property
    def passed(self) -> bool:
        return (
            abs(self.valid_set_weight - self.mu_value) <= TOL
            and abs(self.odd_matching_cost - self.valid_set.weight) <= TOL
        )


def _matching_table(d: DistanceMatrix) -> list[float]:
    """cost[mask] = minimum perfect matching cost of the vertex set ``mask``
    (``inf`` for odd sets), for every subset of the ``n`` vertices."""
    n = d.n
    if n > MU_LIMIT:
        raise SizeLimitError(f"brute-force mu is capped at {MU_LIMIT} vertices, got {n}")
    dist = d.d.tolist()
    cost = [math.inf] * (1 << n)
    cost[0] = 0.0
    for mask in range(1, 1 << n):
        if mask.bit_count() & 1:
            continue
        i = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << i)
        best = math.inf
        bits = rest
        while bits:
            low = bits & -bits
            j = low.bit_length() - 1
            bits ^= low
            c = dist[i][j] + cost[rest ^ low]
            if c < best:
                best = c
        cost[mask] = best
    return cost


def _members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _argmax_subset(cost: list[float], masks: Iterable[int]) -> OracleValue:
    masks = [m for m in masks if math.isfinite(cost[m])]
    best = max(cost[m] for m in masks)
    ties = [_members(m) for m in masks if cost[m] >= best - TOL]
    return OracleValue(best, min(ties))


def brute_force_mu(d: DistanceMatrix) -> OracleValue:
    """Maximum over even vertex subsets of their minimum matching cost."""
    if d.n < 2:
        return OracleValue(0.0, ())
    cost = _matching_table(d)
    return _argmax_subset(cost, range(1, 1 << d.n))


def brute_force_mu_2k(d: DistanceMatrix, k: int) -> OracleValue:
    """Same maximum restricted to subsets of exactly ``2k`` vertices."""
    if k < 1 or 2 * k > d.n:
        raise InputError(f"k must lie in [1, {d.n // 2}], got {k}")
    cost = _matching_table(d)
    return _argmax_subset(cost, (m for m in range(1 << d.n) if m.bit_count() == 2 * k))


# ------------------------------------------------------------ valid edge sets


def simple_cycles(g: WeightedGraph) -> list[tuple[int, ...]]:
    """Every simple cycle of ``g`` as a sorted tuple of edge indices.

    Each cycle is generated once, from its smallest vertex, in the direction
    whose second vertex is smaller than its last.
    """
    if g.m > CYCLE_EDGE_LIMIT:
        raise SizeLimitError(f"cycle enumeration is capped at {CYCLE_EDGE_LIMIT} edges, got {g.m}")
    adj = g.adjacency()
    cycles = []
    for s in range(g.n):
        path = [s]
        edges: list[int] = []
        on_path = {s}

        def extend(v: int) -> None:
            for w, k in adj[v]:
                if w == s and len(path) >= 3 and path[1] < v:
                    cycles.append(tuple(sorted(edges + [k])))
                elif w > s and w not in on_path:
                    path.append(w)
                    edges.append(k)
                    on_path.add(w)
                    extend(w)
                    on_path.discard(w)
                    edges.pop()
                    path.pop()

        extend(s)
    return cycles


def odd_vertices(g: WeightedGraph, edges: Iterable[int]) -> tuple[int, ...]:
    deg = [0] * g.n
    for k in edges:
        u, v, _ = g.edges[k]
        deg[u] += 1
        deg[v] += 1
    return tuple(v for v in range(g.n) if deg[v] % 2)


def is_valid_edge_set(g: WeightedGraph, edges: Iterable[int]) -> bool:
    """True iff every simple cycle ``C`` has ``w(C) >= 2 w(C & J)`` (within TOL)."""
    chosen = set(edges)
    if any(not 0 <= k < g.m for k in chosen):
        raise InputError("edge index out of range")
    for cyc in simple_cycles(g):
        total = math.fsum(g.edges[k][2] for k in cyc)
        inside = math.fsum(g.edges[k][2] for k in cyc if k in chosen)
        if 2 * inside > total + TOL:
            return False
    return True


def _valid_mask_table(g: WeightedGraph) -> tuple[np.ndarray, np.ndarray]:
    """Weights and validity flags for every edge subset, indexed by bitmask."""
    m = g.m
    w = np.array([e[2] for e in g.edges])
    cycles = simple_cycles(g)
    inc = np.zeros((len(cycles), m))
    for c, cyc in enumerate(cycles):
        inc[c, list(cyc)] = 1.0
    cyc_w = inc @ w
    cyc_inc_w = inc * w  # per-cycle edge weights
    masks = np.arange(1 << m, dtype=np.int64)
    weights = np.empty(1 << m)
    valid = np.empty(1 << m, dtype=bool)
    chunk = 4096
    for lo in range(0, 1 << m, chunk):
        block = masks[lo : lo + chunk]
        bits = ((block[:, None] >> np.arange(m)) & 1).astype(float)
        weights[lo : lo + chunk] = bits @ w
        if cycles:
            loads = bits @ cyc_inc_w.T
            valid[lo : lo + chunk] = (2 * loads <= cyc_w + TOL).all(axis=1)
        else:
            valid[lo : lo + chunk] = True
    return weights, valid


def enumerate_valid_sets(g: WeightedGraph) -> list[ValidEdgeSet]:
    """All valid edge subsets (including the empty one)."""
    if g.m > VALID_SET_EDGE_LIMIT:
        raise SizeLimitError(f"valid-set enumeration is capped at {VALID_SET_EDGE_LIMIT} edges, got {g.m}")
    weights, valid = _valid_mask_table(g)
    out = []
    for mask in np.flatnonzero(valid):
        es = _members(int(mask))
        out.append(ValidEdgeSet(es, float(weights[mask]), odd_vertices(g, es)))
    return out


def brute_force_max_valid_set(g: WeightedGraph) -> ValidEdgeSet:
    """Maximum-weight valid edge set; ties go to the smallest sorted index tuple."""
    if g.m > VALID_SET_EDGE_LIMIT:
        raise SizeLimitError(f"valid-set enumeration is capped at {VALID_SET_EDGE_LIMIT} edges, got {g.m}")
    weights, valid = _valid_mask_table(g)
    best = float(weights[valid].max())
    ties = [_members(int(m)) for m in np.flatnonzero(valid & (weights >= best - TOL))]
    es = min(ties)
    return ValidEdgeSet(es, math.fsum(g.edges[k][2] for k in es), odd_vertices(g, es))


def check_formulation_equivalence(g: WeightedGraph) -> EquivalenceReport:
    """Compare the edge-set and the vertex-subset formulations on ``g``."""
    if g.n > 10:
        raise SizeLimitError(f"equivalence check is capped at 10 vertices, got {g.n}")
    dm = metric_closure(g)
    best = brute_force_max_valid_set(g)
    mu = brute_force_mu(dm)
    odd_cost = brute_force_matching(dm, best.odd_vertices).cost
    return EquivalenceReport(best.weight, mu.value, odd_cost, best)
