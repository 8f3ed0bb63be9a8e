"""Exact max-min T-join value on complete graphs with weights 1 and 2."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleError, InputError
from .graph import DistanceMatrix, WeightedGraph
from .matching import Matching, max_cardinality_matching


@dataclass(frozen=True)
class OneTwoInstance:
    """Complete graph on ``n`` vertices; pairs in ``weight_one`` weigh 1, all others 2."""

    n: int
    weight_one: frozenset[tuple[int, int]]
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        pairs = frozenset((min(u, v), max(u, v)) for u, v in self.weight_one)
        for u, v in pairs:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"bad weight-1 pair ({u}, {v})")
        object.__setattr__(self, "weight_one", pairs)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.n)))

    def distance_matrix(self) -> DistanceMatrix:
        d = np.full((self.n, self.n), 2.0)
        np.fill_diagonal(d, 0.0)
        for u, v in self.weight_one:
            d[u, v] = d[v, u] = 1.0
        return DistanceMatrix(d, self.labels)

    def without(self, v: int) -> OneTwoInstance:
        keep = [x for x in range(self.n) if x != v]
        pos = {x: i for i, x in enumerate(keep)}
        pairs = frozenset((pos[a], pos[b]) for a, b in self.weight_one if v not in (a, b))
        return OneTwoInstance(self.n - 1, pairs, tuple(self.labels[x] for x in keep))

    def ones_graph(self) -> WeightedGraph:
        return WeightedGraph(self.labels, tuple((u, v, 1.0) for u, v in sorted(self.weight_one)))


@dataclass(frozen=True)
class OneTwoResult:
    value: float
    witness: tuple[int, ...]
    removed: int | None
    ones_matching: Matching  # weight-1 maximum matching on the witness, in original indices


def validate_one_two(g: WeightedGraph) -> OneTwoInstance:
    """Check that ``g`` is complete with every weight exactly 1 or 2."""
    for u, v, w in g.edges:
        if w not in (1.0, 2.0):
            raise InfeasibleError(f"edge {g.labels[u]!r}-{g.labels[v]!r} has weight {w!r}, not 1 or 2")
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.edge_index(u, v) is None:
                raise InfeasibleError(f"pair {g.labels[u]!r}-{g.labels[v]!r} is missing; graph is not complete")
    return OneTwoInstance(g.n, frozenset((u, v) for u, v, w in g.edges if w == 1.0), g.labels)


def _even_value(inst: OneTwoInstance) -> tuple[int, Matching]:
    m1 = max_cardinality_matching(inst.ones_graph())
    return inst.n - len(m1.pairs), m1


def mu_12(inst: OneTwoInstance) -> OneTwoResult:
    """Even ``n``: all vertices are optimal and the value is ``n - m1``, where
    ``m1`` is a maximum matching in the weight-1 subgraph. Odd ``n``: the best
    even-case value over single-vertex removals (smallest index on ties)."""
    n = inst.n
    if n < 2:
        raise InputError("need at least two vertices")
    if n % 2 == 0:
        value, m1 = _even_value(inst)
        return OneTwoResult(float(value), tuple(range(n)), None, m1)

    best = None
    for v in range(n):
        value, m1 = _even_value(inst.without(v))
        if best is None or value > best[0]:
            best = (value, v, m1)
    value, removed, m1 = best
    keep = [x for x in range(n) if x != removed]
    pairs = tuple(sorted((keep[a], keep[b]) for a, b in m1.pairs))
    return OneTwoResult(float(value), tuple(keep), removed, Matching(pairs, m1.cost))
