"""Structural similarity between paired clouds: per-point neighbor-set overlap.

The headline number is the mean Jaccard similarity between corresponding
k-neighborhoods of the two clouds, reported next to the floor expected for
independent random clouds of the same size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Metric, PairedClouds
from .errors import COutOfRangeError, TooFewPointsError
from .knn import check_k, neighbor_order, pairwise_distances

# Above this size the dense membership-matrix path costs too much memory
# and per-row sorted intersections win.
_DENSE_MEMBERSHIP_MAX_N = 4096


def jaccard(a, b) -> float:
    """Set overlap |a & b| / |a | b|; two empty sets count as identical."""
    a = set(a)
    b = set(b)
    if not a and not b:
        return 1.0
    return len(a & b) / len(a | b)


def hyper_baseline(k: int, n: int) -> float:
    """Overlap floor k / (2(n-1) - k) for independently random neighborhoods.

    This is the Jensen lower bound on the expected per-point Jaccard value
    when both k-neighborhoods are uniform draws from the n-1 candidates.
    """
    check_k(k, n)
    return k / (2.0 * (n - 1) - k)


def k_from_c(c: float, n: int) -> int:
    """Neighborhood size floor(c * (n-1)) for a relative size c, clamped to [1, n-1]."""
    if n < 2:
        raise TooFewPointsError(f"need at least 2 points, got {n}")
    if not 0.0 < c <= 1.0:
        raise COutOfRangeError(f"relative neighborhood size must be in (0, 1], got {c}")
    return min(n - 1, max(1, math.floor(c * (n - 1))))


@dataclass(frozen=True, eq=False)
class SimilarityReport:
    """Per-point overlap values and their mean for one neighborhood size."""

    k: int
    c: float
    nngs: float
    per_point: np.ndarray
    baseline: float


@dataclass(frozen=True)
class CurveSample:
    k: int
    c: float
    mean: float
    std: float
    baseline: float


@dataclass(frozen=True, eq=False)
class SimilarityCurve:
    """Similarity as a function of k, with dispersion across trials."""

    samples: tuple[CurveSample, ...]
    n_trials: int


def _intersection_sizes(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise |a[i] & b[i]| for two (n, k) arrays of sorted unique indices."""
    n = a.shape[0]
    if n <= _DENSE_MEMBERSHIP_MAX_N:
        rows = np.arange(n)[:, None]
        in_a = np.zeros((n, n), dtype=bool)
        in_a[rows, a] = True
        in_b = np.zeros((n, n), dtype=bool)
        in_b[rows, b] = True
        return np.count_nonzero(in_a & in_b, axis=1)
    return np.array(
        [np.intersect1d(a[i], b[i], assume_unique=True).size for i in range(n)]
    )


def _report_for_k(order_x: np.ndarray, order_y: np.ndarray, k: int) -> SimilarityReport:
    n = order_x.shape[0]
    inter = _intersection_sizes(order_x[:, :k], order_y[:, :k])
    per_point = inter / (2.0 * k - inter)
    per_point.setflags(write=False)
    return SimilarityReport(
        k=int(k),
        c=k / (n - 1),
        nngs=float(np.mean(per_point)),
        per_point=per_point,
        baseline=hyper_baseline(k, n),
    )


def nngs(
    pair: PairedClouds,
    k: int,
    metric_x: Metric | None = None,
    metric_y: Metric | None = None,
) -> SimilarityReport:
    """Mean per-point neighborhood overlap of a paired cloud at size k.

    Each side may use its own distance metric; cosine is the default.
    """
    metric_x = metric_x or Metric.cosine()
    metric_y = metric_y or metric_x
    check_k(k, pair.n)
    order_x = neighbor_order(pairwise_distances(pair.x, metric_x))
    order_y = neighbor_order(pairwise_distances(pair.y, metric_y))
    return _report_for_k(order_x, order_y, k)


def nngs_sweep(
    pair: PairedClouds,
    ks: Sequence[int],
    metric_x: Metric | None = None,
    metric_y: Metric | None = None,
) -> SimilarityCurve:
    """Similarity of one paired cloud across several neighborhood sizes.

    The per-point neighbor rankings are computed once and reused, so the
    sample at each k matches a direct `nngs` call exactly.
    """
    ks = [int(k) for k in ks]
    if not ks:
        raise ValueError("ks must not be empty")
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise ValueError("ks must be strictly increasing")
    for k in ks:
        check_k(k, pair.n)
    metric_x = metric_x or Metric.cosine()
    metric_y = metric_y or metric_x
    order_x = neighbor_order(pairwise_distances(pair.x, metric_x))
    order_y = neighbor_order(pairwise_distances(pair.y, metric_y))
    samples = []
    for k in ks:
        report = _report_for_k(order_x, order_y, k)
        samples.append(
            CurveSample(k=k, c=report.c, mean=report.nngs, std=0.0, baseline=report.baseline)
        )
    return SimilarityCurve(samples=tuple(samples), n_trials=1)
