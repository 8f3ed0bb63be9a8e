"""Ear decompositions and the knapsack-per-ear upper bound on the T-join value."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InfeasibleError, InputError
from .graph import TOL, DistanceMatrix, WeightedGraph, contract_bridges, find_bridges, metric_closure
from .tsp import Tour, christofides

EXACT_EAR_LIMIT = 40


@dataclass(frozen=True)
class Ear:
    """A path ``vertices[0] .. vertices[-1]`` or, if ``is_cycle``, a closed walk
    returning to ``vertices[0]`` (the repeated endpoint is not stored)."""

    vertices: tuple[int, ...]
    weights: tuple[float, ...]
    is_cycle: bool = False

    @property
    def is_trivial(self) -> bool:
        return not self.is_cycle and len(self.weights) == 1

    @property
    def total(self) -> float:
        return math.fsum(self.weights)

    def edge_pairs(self) -> list[tuple[int, int]]:
        vs = list(self.vertices) + ([self.vertices[0]] if self.is_cycle else [])
        return [(min(a, b), max(a, b)) for a, b in zip(vs, vs[1:])]


@dataclass(frozen=True)
class EarDecomposition:
    ears: tuple[Ear, ...]
    source: WeightedGraph

    def to_text(self) -> str:
        """One ear per line: ``cycle|path <v0 v1 ...> : <w1 w2 ...>``."""
        lines = []
        for ear in self.ears:
            kind = "cycle" if ear.is_cycle else "path"
            vs = " ".join(str(v) for v in ear.vertices)
            ws = " ".join(repr(w) for w in ear.weights)
            lines.append(f"{kind} {vs} : {ws}")
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str, source: WeightedGraph) -> EarDecomposition:
        ears = []
        for line in text.splitlines():
            if not line.strip():
                continue
            head, _, tail = line.partition(":")
            kind, *vs = head.split()
            ears.append(
                Ear(tuple(int(v) for v in vs), tuple(float(w) for w in tail.split()), kind == "cycle")
            )
        return cls(tuple(ears), source)


@dataclass(frozen=True)
class EarBound:
    bound: float
    decomposition: EarDecomposition
    bridge_weight: float
    ear_values: tuple[float, ...]
    contracted: WeightedGraph


def decomposition_problems(dec: EarDecomposition) -> list[str]:
    """Every violated ear-decomposition invariant, as readable messages."""
    g = dec.source
    problems = []
    covered: set[tuple[int, int]] = set()
    present: set[int] = set()
    for idx, ear in enumerate(dec.ears):
        expected = len(ear.vertices) if ear.is_cycle else len(ear.vertices) - 1
        if len(ear.weights) != expected or expected < 1:
            problems.append(f"ear {idx}: {len(ear.weights)} weights for {len(ear.vertices)} vertices")
            continue
        if idx == 0 and not ear.is_cycle:
            problems.append("first ear is not a cycle")
        ends = {ear.vertices[0]} if ear.is_cycle else {ear.vertices[0], ear.vertices[-1]}
        inner = ear.vertices[1:] if ear.is_cycle else ear.vertices[1:-1]
        if idx > 0 and not ends <= present:
            problems.append(f"ear {idx}: endpoint not in earlier ears")
        if any(v in present for v in inner) or len(set(inner)) != len(inner) or ends & set(inner):
            problems.append(f"ear {idx}: interior vertex is not new")
        for (a, b), w in zip(ear.edge_pairs(), ear.weights):
            gw = g.weight(a, b)
            if gw is None or gw != w:
                problems.append(f"ear {idx}: ({a}, {b}) is not an edge of weight {w}")
            if (a, b) in covered:
                problems.append(f"ear {idx}: edge ({a}, {b}) used twice")
            covered.add((a, b))
        present.update(ear.vertices)
    missing = {(u, v) for u, v, _ in g.edges} - covered
    if missing:
        problems.append(f"{len(missing)} edges not covered, e.g. {min(missing)}")
    return problems


def dfs_ear_decomposition(g: WeightedGraph, root: int = 0) -> EarDecomposition:
    """Chain decomposition from a depth-first search.

    Each back edge, taken in DFS discovery order at its ancestor endpoint,
    starts an ear that climbs tree edges until it hits a vertex already used.
    Adjacency is visited in ascending neighbour order.
    """
    if g.n == 0:
        return EarDecomposition((), g)
    if not 0 <= root < g.n:
        raise InputError(f"root {root} out of range")
    if not g.is_connected():
        raise InputError("ear decomposition needs a connected graph")
    if find_bridges(g):
        raise InfeasibleError("graph has bridges; contract them first (contract_bridges)")
    if g.n == 1:
        return EarDecomposition((), g)

    adj = g.adjacency()
    parent = [-1] * g.n
    pre = [-1] * g.n
    order: list[int] = []
    back: list[list[int]] = [[] for _ in range(g.n)]  # ancestor -> descendants
    pre[root] = 0
    order.append(root)
    stack = [(root, 0)]
    while stack:
        v, pos = stack[-1]
        if pos == len(adj[v]):
            stack.pop()
            continue
        stack[-1] = (v, pos + 1)
        w, _ = adj[v][pos]
        if pre[w] == -1:
            parent[w] = v
            pre[w] = len(order)
            order.append(w)
            stack.append((w, 0))
        elif w != parent[v] and pre[w] < pre[v]:
            back[w].append(v)

    visited = [False] * g.n
    ears = []
    for v in order:
        for u in back[v]:
            visited[v] = True
            path = [v, u]
            x = u
            while not visited[x]:
                visited[x] = True
                x = parent[x]
                path.append(x)
            is_cycle = path[-1] == v
            if is_cycle:
                path.pop()
            vs = path + ([v] if is_cycle else [])
            weights = tuple(g.weight(a, b) for a, b in zip(vs, vs[1:]))
            ears.append(Ear(tuple(path), weights, is_cycle))
    return EarDecomposition(tuple(ears), g)


def hamiltonian_first_decomposition(d: DistanceMatrix | np.ndarray, tour: Tour | Sequence[int]) -> EarDecomposition:
    """The tour as the first ear, then every unused pair as a single-edge ear."""
    mat = d.d if isinstance(d, DistanceMatrix) else np.asarray(d, dtype=float)
    labels = d.labels if isinstance(d, DistanceMatrix) else tuple(str(i) for i in range(mat.shape[0]))
    n = mat.shape[0]
    order = tuple(tour.order if isinstance(tour, Tour) else tour)
    if sorted(order) != list(range(n)) or n < 3:
        raise InputError("tour must visit every vertex exactly once (n >= 3)")
    g = WeightedGraph(labels, tuple((i, j, float(mat[i, j])) for i in range(n) for j in range(i + 1, n)))
    cyc = order + (order[0],)
    first = Ear(order, tuple(float(mat[a, b]) for a, b in zip(cyc, cyc[1:])), True)
    used = set(first.edge_pairs())
    rest = [Ear((i, j), (float(mat[i, j]),)) for i in range(n) for j in range(i + 1, n) if (i, j) not in used]
    return EarDecomposition((first, *rest), g)


# ------------------------------------------------------------------ max(P)


def _subset_sums(ws: Sequence[float]) -> np.ndarray:
    sums = np.zeros(1)
    for w in ws:
        sums = np.concatenate([sums, sums + w])
    return sums


def _ear_max_exact(ws: Sequence[float], cap: float) -> float:
    half = len(ws) // 2
    left = _subset_sums(ws[:half])
    right = np.sort(_subset_sums(ws[half:]))
    room = cap + TOL - left
    ok = room >= 0
    idx = np.searchsorted(right, room[ok], side="right") - 1
    return float((left[ok] + right[idx]).max())


def _ear_max_fptas(ws: Sequence[float], cap: float, epsilon: float) -> float:
    """Profit-scaling knapsack DP where profit equals weight."""
    items = [w for w in ws if w <= cap + TOL]
    if not items:
        return 0.0
    scale = epsilon * max(items) / len(items)
    profits = [int(w // scale) for w in items]
    # lightest[q] = smallest weight reaching scaled profit exactly q
    lightest = np.full(sum(profits) + 1, np.inf)
    lightest[0] = 0.0
    for p, w in zip(profits, items):
        if p == 0:
            continue
        shifted = lightest[:-p] + w
        np.minimum(lightest[p:], shifted, out=lightest[p:])
    return float(lightest[lightest <= cap + TOL].max())


def ear_max(weights: Sequence[float], epsilon: float | None = None) -> float:
    """Largest subset sum of ``weights`` not exceeding half their total.

    Exact (meet in the middle) for up to 40 weights when ``epsilon`` is None.
    With ``epsilon`` in (0, 1) the returned value ``v`` satisfies
    ``(1 - epsilon) * opt <= v <= opt``.
    """
    ws = [float(w) for w in weights]
    if not ws:
        raise InputError("ear has no edges")
    if any(not w > 0 for w in ws):
        raise InputError("ear weights must be positive")
    cap = math.fsum(ws) / 2.0
    if epsilon is None:
        if len(ws) > EXACT_EAR_LIMIT:
            raise InputError(f"exact max(P) is limited to {EXACT_EAR_LIMIT} edges; pass epsilon")
        return _ear_max_exact(ws, cap)
    if not 0 < epsilon < 1:
        raise InputError(f"epsilon must lie in (0, 1), got {epsilon}")
    return _ear_max_fptas(ws, cap, epsilon)


def _certified_ear_value(ear: Ear, epsilon: float | None) -> float:
    if ear.is_trivial:
        return 0.0
    v = ear_max(ear.weights, epsilon)
    if epsilon is None:
        return v
    return min(v / (1.0 - epsilon), ear.total / 2.0)


def decomposition_bound(dec: EarDecomposition, epsilon: float | None = None) -> tuple[float, tuple[float, ...]]:
    values = tuple(_certified_ear_value(ear, epsilon) for ear in dec.ears)
    return math.fsum(values), values


def ear_upper_bound(
    g: WeightedGraph,
    strategy: str = "dfs",
    epsilon: float | None = None,
    root: int = 0,
    tour: Tour | None = None,
) -> EarBound:
    """Upper bound: sum of max(P) over an ear decomposition plus all bridge weights.

    ``strategy`` is ``"dfs"`` (any connected graph) or ``"hamiltonian-first"``
    (complete graphs only; ``tour`` defaults to Christofides on the metric
    closure). With ``epsilon`` each approximate ear value is inflated by
    ``1 / (1 - epsilon)`` so the total stays a valid upper bound.
    """
    if strategy not in ("dfs", "hamiltonian-first"):
        raise InputError(f"unknown ear strategy {strategy!r}")
    if strategy == "hamiltonian-first" and not g.is_complete():
        raise InfeasibleError("hamiltonian-first decomposition needs a complete graph")
    bc = contract_bridges(g)
    h = bc.contracted
    if h.n <= 1:
        dec = EarDecomposition((), h)
    elif strategy == "dfs":
        dec = dfs_ear_decomposition(h, root)
    else:
        # a complete graph on >= 3 vertices has no bridges, so h is g
        if tour is None:
            tour = christofides(metric_closure(h))
        dec = hamiltonian_first_decomposition(h.weight_matrix(), tour)
        dec = EarDecomposition(dec.ears, h)
    total, values = decomposition_bound(dec, epsilon)
    return EarBound(total + bc.bridge_weight, dec, bc.bridge_weight, values, h)


def best_ear_upper_bound(g: WeightedGraph, epsilon: float | None = None) -> EarBound:
    """Smallest bound over DFS roots of the contracted graph and, for complete
    graphs, the Hamiltonian-first decomposition."""
    first = ear_upper_bound(g, "dfs", epsilon, 0)
    best = first
    for r in range(1, first.contracted.n):
        cand = ear_upper_bound(g, "dfs", epsilon, r)
        if cand.bound < best.bound:
            best = cand
    if g.is_complete() and g.n >= 3:
        cand = ear_upper_bound(g, "hamiltonian-first", epsilon)
        if cand.bound < best.bound:
            best = cand
    return best
