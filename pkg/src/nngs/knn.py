"""Exact k-nearest-neighbor sets under cosine or Minkowski distances.

Everything here is brute force on purpose: full pairwise distances plus a
per-row ranking. At the cloud sizes this package targets, exactness and
deterministic tie handling matter more than index structures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .core import Metric, PointCloud
from .errors import KOutOfRangeError, ZeroVectorError

#: Distances closer than this are treated as tied and broken by ascending index.
TIE_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class NeighborSets:
    """Per-item neighbor index sets N_k(i), self excluded.

    `indices[i]` holds the k neighbors of item i, sorted ascending so that
    set intersections stay linear-time.
    """

    k: int
    indices: np.ndarray

    @property
    def n(self) -> int:
        return self.indices.shape[0]

    def as_set(self, i: int) -> set[int]:
        return set(int(j) for j in self.indices[i])


def check_k(k: int, n: int) -> None:
    if not 1 <= k <= n - 1:
        raise KOutOfRangeError(f"k must be in [1, {n - 1}] for {n} points, got {k}")


def distance(u, v, metric: Metric) -> float:
    """Distance between two vectors (raw formula, no diagonal snapping)."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if metric.kind == "cosine":
        nu = float(np.linalg.norm(u))
        nv = float(np.linalg.norm(v))
        if nu == 0.0 or nv == 0.0:
            raise ZeroVectorError("cosine distance is undefined for zero vectors")
        return 1.0 - float(np.dot(u, v)) / (nu * nv)
    if math.isinf(metric.order):
        return float(np.max(np.abs(u - v)))
    return float(np.sum(np.abs(u - v) ** metric.order) ** (1.0 / metric.order))


def pairwise_distances(cloud: PointCloud, metric: Metric) -> np.ndarray:
    """Full distance matrix, exactly symmetric with an exactly zero diagonal."""
    x = cloud.data
    if metric.kind == "cosine":
        norms = np.linalg.norm(x, axis=1)
        zero = np.flatnonzero(norms == 0.0)
        if zero.size:
            raise ZeroVectorError(
                f"cosine distance undefined: zero vector at row {zero[0]}"
                f" (id {cloud.ids[zero[0]]!r})"
            )
        unit = x / norms[:, None]
        d = 1.0 - unit @ unit.T
        np.maximum(d, 0.0, out=d)
    else:
        d = cdist(x, x, "minkowski", p=metric.order)
    # mirror the upper triangle so symmetry holds bit for bit
    d = np.triu(d, 1)
    return d + d.T


def neighbor_order(dist: np.ndarray) -> np.ndarray:
    """Per-row ranking of all other indices, nearest first.

    Returns an (n, n-1) array; row i lists every j != i ordered by distance,
    with near-ties (within TIE_TOLERANCE) broken by ascending index. The
    first k entries of a row are exactly the k-neighborhood of i, for any k.
    """
    d = dist.copy()
    np.fill_diagonal(d, -np.inf)  # self sorts first, then gets dropped
    order = np.argsort(d, axis=1, kind="stable")[:, 1:]
    vals = np.take_along_axis(d, order, axis=1)
    gaps = np.diff(vals, axis=1)
    tied_rows = np.flatnonzero((gaps <= TIE_TOLERANCE).any(axis=1))
    for i in tied_rows:
        row = order[i]
        breaks = np.flatnonzero(gaps[i] > TIE_TOLERANCE) + 1
        start = 0
        for stop in (*breaks, row.size):
            if stop - start > 1:
                row[start:stop] = np.sort(row[start:stop])
            start = stop
    return order


def knn_sets(cloud: PointCloud, k: int, metric: Metric) -> NeighborSets:
    """The k nearest neighbors of every point, deterministically ordered."""
    check_k(k, cloud.n)
    order = neighbor_order(pairwise_distances(cloud, metric))
    return NeighborSets(k=int(k), indices=np.sort(order[:, :k], axis=1))
