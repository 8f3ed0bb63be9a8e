from __future__ import annotations

import numpy as np
import pytest

from tjoin.graph import DistanceMatrix, WeightedGraph


def line_metric(xs) -> DistanceMatrix:
    pts = np.asarray(xs, dtype=float)
    return DistanceMatrix(np.abs(pts[:, None] - pts[None, :]))


def graph_from_text(text: str) -> WeightedGraph:
    from tjoin.graph import load_edge_list

    return load_edge_list(text)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def line_0_1_9_10() -> DistanceMatrix:
    return line_metric([0, 1, 9, 10])
