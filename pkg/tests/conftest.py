"""Shared helpers: naive reference implementations kept deliberately dumb.

The oracles below use plain Python loops and builtin sorting so they stay
independent of the vectorized production paths they check.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from nngs.core import Metric, PairedClouds, PointCloud

TIE_TOL = 1e-12


def make_cloud(data, ids=None) -> PointCloud:
    data = np.asarray(data, dtype=np.float64)
    if ids is None:
        ids = tuple(str(i) for i in range(data.shape[0]))
    return PointCloud(tuple(ids), data)


def make_pair(x_data, y_data) -> PairedClouds:
    x = make_cloud(x_data)
    return PairedClouds(x, make_cloud(y_data, ids=x.ids))


def naive_distance(u, v, metric: Metric) -> float:
    if metric.kind == "cosine":
        dot = sum(a * b for a, b in zip(u, v))
        nu = math.sqrt(sum(a * a for a in u))
        nv = math.sqrt(sum(b * b for b in v))
        return 1.0 - dot / (nu * nv)
    if math.isinf(metric.order):
        return max(abs(a - b) for a, b in zip(u, v))
    return sum(abs(a - b) ** metric.order for a, b in zip(u, v)) ** (1.0 / metric.order)


def naive_neighbor_sets(data, k: int, metric: Metric) -> list[set[int]]:
    """Full double loop: rank every other point, group near-ties, cut at k."""
    data = np.asarray(data, dtype=np.float64)
    n = data.shape[0]
    sets = []
    for i in range(n):
        ranked = sorted(
            (naive_distance(data[i], data[j], metric), j) for j in range(n) if j != i
        )
        groups: list[list[tuple[float, int]]] = []
        for d, j in ranked:
            if groups and d - groups[-1][-1][0] <= TIE_TOL:
                groups[-1].append((d, j))
            else:
                groups.append([(d, j)])
        order: list[int] = []
        for group in groups:
            order.extend(sorted(j for _, j in group))
        sets.append(set(order[:k]))
    return sets


def naive_nngs(x_data, y_data, k: int, metric_x: Metric, metric_y: Metric):
    """Reference per-point Jaccard values via Python set operations."""
    sets_x = naive_neighbor_sets(x_data, k, metric_x)
    sets_y = naive_neighbor_sets(y_data, k, metric_y)
    return [len(a & b) / len(a | b) for a, b in zip(sets_x, sets_y)]


def random_orthonormal(dim: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
