"""Farthest-point ordering and the prefix-matching bounds built on it."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InputError
from .graph import DistanceMatrix
from .matching import min_weight_perfect_matching


@dataclass(frozen=True)
class GreedyOrdering:
    """Vertices in farthest-first order.

    ``step_distance[i]`` is the distance from ``order[i]`` to the earlier
    vertices; the first entry is ``inf``.
    """

    order: tuple[int, ...]
    step_distance: tuple[float, ...]


@dataclass(frozen=True)
class PrefixBounds:
    k: int
    mwm_prefix: float
    opt_prefix: float
    harmonic_ub: float
    tsp_ub: float | None = None

    @property
    def min_ub(self) -> float:
        if self.tsp_ub is None:
            return self.harmonic_ub
        return min(self.harmonic_ub, self.tsp_ub)


@dataclass(frozen=True)
class TJoinBounds:
    lower: float
    upper: float
    selected: tuple[int, ...]
    ordering: GreedyOrdering
    prefixes: tuple[PrefixBounds, ...]


def harmonic(m: int) -> float:
    """``H_m = 1 + 1/2 + ... + 1/m`` with ``H_0 = 0``."""
    if m < 0:
        raise InputError(f"harmonic number needs m >= 0, got {m}")
    return float(sum(Fraction(1, i) for i in range(1, m + 1)))


def greedy_ordering(d: DistanceMatrix, start: int = 0) -> GreedyOrdering:
    """Gonzalez ordering: repeatedly append the vertex farthest from those chosen.

    Ties go to the smallest index. Runs in O(n^2).
    """
    n = d.n
    if n < 1:
        raise InputError("greedy ordering needs at least one vertex")
    if not 0 <= start < n:
        raise InputError(f"start vertex {start} out of range [0, {n})")
    order = [start]
    steps = [math.inf]
    nearest = np.array(d.d[start], dtype=float)
    chosen = np.zeros(n, dtype=bool)
    chosen[start] = True
    for _ in range(n - 1):
        cand = np.where(chosen, -np.inf, nearest)
        nxt = int(np.argmax(cand))  # argmax returns the first maximum
        order.append(nxt)
        steps.append(float(nearest[nxt]))
        chosen[nxt] = True
        np.minimum(nearest, d.d[nxt], out=nearest)
    return GreedyOrdering(tuple(order), tuple(steps))


def prefix_matching_sequence(
    d: DistanceMatrix,
    ordering: GreedyOrdering,
    k_max: int | None = None,
    tsp_ub: float | None = None,
    jobs: int = 1,
) -> list[PrefixBounds]:
    """Matching costs of the first ``2k`` ordered vertices for ``k = 1..k_max``.

    Each row carries the running maximum ``opt`` and the harmonic upper bound
    ``2 (1 + H_{k-1}) opt`` on the best achievable ``2k``-subset value.
    """
    n = len(ordering.order)
    if n < 2:
        raise InputError("prefix matchings need at least two vertices")
    top = n // 2 if k_max is None else k_max
    if not 1 <= top <= n // 2:
        raise InputError(f"k must lie in [1, {n // 2}], got {top}")

    def cost(k: int) -> float:
        return min_weight_perfect_matching(d, ordering.order[: 2 * k]).cost

    ks = range(1, top + 1)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            costs = list(pool.map(cost, ks))
    else:
        costs = [cost(k) for k in ks]

    rows = []
    opt = -math.inf
    for k, c in zip(ks, costs):
        opt = max(opt, c)
        rows.append(PrefixBounds(k, c, opt, 2.0 * (1.0 + harmonic(k - 1)) * opt, tsp_ub))
    return rows


def tjoin_bounds(d: DistanceMatrix, start: int = 0, jobs: int = 1) -> TJoinBounds:
    """Logarithmic-factor sandwich for the max-min T-join value.

    ``lower`` is the best prefix matching cost (a value actually attained by
    ``selected``); ``upper = 2 (1 + H_{floor(n/2)-1}) * lower``.
    """
    if d.n < 2:
        raise InputError("T-join bounds need at least two vertices")
    ordering = greedy_ordering(d, start)
    rows = prefix_matching_sequence(d, ordering, jobs=jobs)
    best = max(rows, key=lambda r: (r.mwm_prefix, -r.k))
    upper = 2.0 * (1.0 + harmonic(d.n // 2 - 1)) * best.mwm_prefix
    return TJoinBounds(
        lower=best.mwm_prefix,
        upper=upper,
        selected=ordering.order[: 2 * best.k],
        ordering=ordering,
        prefixes=tuple(rows),
    )
