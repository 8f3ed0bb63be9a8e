"""Experiment pipeline: greedy lower bound against the available upper bounds."""

from __future__ import annotations

from .ears import EXACT_EAR_LIMIT, ear_upper_bound
from .errors import InputError
from .graph import DistanceMatrix
from .greedy import greedy_ordering, prefix_matching_sequence, tjoin_bounds
from .report import BoundReportRow
from .tsp import Tour, christofides

DEFAULT_LONG_EAR_EPSILON = 0.01


def _tour(d: DistanceMatrix) -> Tour | None:
    return christofides(d) if d.n >= 3 else None


def bounds_row(d: DistanceMatrix, start: int = 0, epsilon: float | None = None, jobs: int = 1) -> BoundReportRow:
    """One whole-graph row: greedy lower bound and the three upper bounds.

    The ear bound uses the Christofides tour as the first ear. Tours longer
    than the exact knapsack limit fall back to ``epsilon`` mode (default 0.01)
    unless ``epsilon`` is given explicitly.
    """
    tb = tjoin_bounds(d, start, jobs=jobs)
    tour = _tour(d)
    if epsilon is None and d.n > EXACT_EAR_LIMIT:
        epsilon = DEFAULT_LONG_EAR_EPSILON
    ear = ear_upper_bound(d.as_graph(), "hamiltonian-first", epsilon=epsilon, tour=tour)
    return BoundReportRow(
        size=d.n,
        lower=tb.lower,
        harmonic_ub=tb.upper,
        tsp_ub=tour.cost / 2.0 if tour else None,
        ear_ub=ear.bound,
    )


def mu2k_rows(
    d: DistanceMatrix, k_lo: int = 1, k_hi: int | None = None, start: int = 0, jobs: int = 1
) -> list[BoundReportRow]:
    """Per-``k`` rows: prefix matching cost, running max, and the smaller of the
    harmonic and half-tour upper bounds."""
    top = d.n // 2
    k_hi = top if k_hi is None else k_hi
    if d.n < 2 or not 1 <= k_lo <= k_hi <= top:
        raise InputError(f"k range must satisfy 1 <= lo <= hi <= {top}, got {k_lo}:{k_hi}")
    tour = _tour(d)
    tsp_ub = tour.cost / 2.0 if tour else None
    ordering = greedy_ordering(d, start)
    prefixes = prefix_matching_sequence(d, ordering, k_max=k_hi, tsp_ub=tsp_ub, jobs=jobs)
    return [
        BoundReportRow(size=2 * p.k, lower=p.mwm_prefix, harmonic_ub=p.harmonic_ub, tsp_ub=p.tsp_ub, opt=p.opt_prefix)
        for p in prefixes
        if p.k >= k_lo
    ]
