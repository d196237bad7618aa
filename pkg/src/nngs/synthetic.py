"""Synthetic experiment generators and bootstrapped sweep runners.

Covers i.i.d. Gaussian cloud pairs, SNR-controlled white-noise distortion,
the aligned blob datasets used for the method comparison table, and the
noise / size / dimensionality invariance sweeps.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .cka import KernelSpec, cka
from .core import Metric, PairedClouds, PointCloud, derive_seed, rng_from_seed
from .errors import BlobShapeMismatchError, InvalidShapeError
from .similarity import (
    CurveSample,
    SimilarityCurve,
    hyper_baseline,
    k_from_c,
    nngs,
    nngs_sweep,
)


@dataclass(frozen=True)
class NoiseSpec:
    """Additive white-noise level expressed as a signal-to-noise ratio in dB."""

    snr_db: float

    @property
    def alpha(self) -> float:
        """Noise amplitude 10^(-snr_db / 20); zero when snr_db is +inf."""
        return 10.0 ** (-self.snr_db / 20.0)


@dataclass(frozen=True)
class BlobSpec:
    """Parameters of the aligned blob generator, one entry per blob.

    Scalar centers and spreads are broadcast across all n_dim dimensions.
    """

    n_dim: int
    n_items: tuple[int, ...]
    mu1: tuple[float, ...]
    sigma1: tuple[float, ...]
    mu2: tuple[float, ...]
    sigma2: tuple[float, ...]
    noise: tuple[float, ...]

    def __post_init__(self):
        for name in ("n_items", "mu1", "sigma1", "mu2", "sigma2", "noise"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        lengths = {
            name: len(getattr(self, name))
            for name in ("n_items", "mu1", "sigma1", "mu2", "sigma2", "noise")
        }
        if len(set(lengths.values())) != 1 or lengths["n_items"] < 1:
            raise BlobShapeMismatchError(f"per-blob lists disagree in length: {lengths}")
        if self.n_dim < 1:
            raise InvalidShapeError(f"n_dim must be >= 1, got {self.n_dim}")
        if any(m < 1 for m in self.n_items):
            raise BlobShapeMismatchError("every blob needs at least one item")
        if any(s < 0 for s in self.sigma1 + self.sigma2 + self.noise):
            raise BlobShapeMismatchError("spreads and noise levels must be >= 0")

    @property
    def n_total(self) -> int:
        return sum(self.n_items)


#: Parameter sets behind the four comparison datasets.
BLOB_PRESETS: dict[str, BlobSpec] = {
    "scales": BlobSpec(
        n_dim=20,
        n_items=(200, 200),
        mu1=(-1, 3), sigma1=(3, 0.1),
        mu2=(-1, 3), sigma2=(0.1, 3),
        noise=(0, 0),
    ),
    "unbalanced": BlobSpec(
        n_dim=20,
        n_items=(10, 1000),
        mu1=(-1, 3), sigma1=(3, 0.1),
        mu2=(-1, 3), sigma2=(0.1, 3),
        noise=(0, 0),
    ),
    "noise-within": BlobSpec(
        n_dim=20,
        n_items=(100, 100, 100, 100),
        mu1=(0, 1, 2, 3), sigma1=(0.1, 0.1, 0.1, 0.1),
        mu2=(0, 1, 2, 3), sigma2=(0.1, 0.1, 0.1, 0.1),
        noise=(0.5, 0.5, 0.5, 0.5),
    ),
    "shuffled": BlobSpec(
        n_dim=20,
        n_items=(100, 100, 100, 100),
        mu1=(0, 1, 2, 3), sigma1=(0.1, 0.1, 0.1, 0.1),
        mu2=(2, 1, 3, 0), sigma2=(0.1, 0.1, 0.1, 0.1),
        noise=(0, 0, 0, 0),
    ),
}


@dataclass(frozen=True, eq=False)
class SweepResult:
    """One similarity curve (possibly single-sample) per axis value."""

    axis_name: str
    axis_values: tuple
    curves: tuple[SimilarityCurve, ...]
    n_trials: int


def gen_gaussian_cloud(n: int, d: int, seed: int) -> PointCloud:
    """n i.i.d. standard-normal points in d dimensions, ids "0".."n-1"."""
    if n < 2 or d < 1:
        raise InvalidShapeError(f"need n >= 2 and d >= 1, got n={n}, d={d}")
    rng = rng_from_seed(seed)
    return PointCloud(tuple(str(i) for i in range(n)), rng.standard_normal((n, d)))


def add_noise(x: PointCloud, spec: NoiseSpec, seed: int) -> PointCloud:
    """Distorted copy y_i = x_i + alpha * phi_i with i.i.d. standard-normal phi."""
    alpha = spec.alpha
    if alpha == 0.0:
        return x
    rng = rng_from_seed(seed)
    return PointCloud(x.ids, x.data + alpha * rng.standard_normal(x.data.shape))


def create_aligned_dataset(spec: BlobSpec, seed: int) -> PairedClouds:
    """Two aligned views of blob data from shared latent draws.

    Per blob: x1 = x * sigma1 + mu1 and x2 = x * sigma2 + mu2 + noise * phi,
    stacked in blob order under shared ids.
    """
    rng = rng_from_seed(seed)
    first, second = [], []
    for m, m1, s1, m2, s2, nz in zip(
        spec.n_items, spec.mu1, spec.sigma1, spec.mu2, spec.sigma2, spec.noise
    ):
        base = rng.standard_normal((m, spec.n_dim))
        phi = rng.standard_normal((m, spec.n_dim))
        first.append(base * s1 + m1)
        second.append(base * s2 + m2 + nz * phi)
    ids = tuple(str(i) for i in range(spec.n_total))
    return PairedClouds(
        PointCloud(ids, np.vstack(first)),
        PointCloud(ids, np.vstack(second)),
    )


def _map_indexed(items: Sequence, fn: Callable, threads: int) -> list:
    """Apply fn to every item, serially or on a thread pool, keeping order."""
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _aggregate(values_per_trial: np.ndarray, ks: Sequence[int], n: int, trials: int) -> SimilarityCurve:
    means = values_per_trial.mean(axis=0)
    if trials > 1:
        stds = values_per_trial.std(axis=0, ddof=1)
    else:
        stds = np.zeros_like(means)
    samples = tuple(
        CurveSample(
            k=int(k), c=k / (n - 1), mean=float(m), std=float(s),
            baseline=hyper_baseline(int(k), n),
        )
        for k, m, s in zip(ks, means, stds)
    )
    return SimilarityCurve(samples=samples, n_trials=trials)


def _noisy_pair(n: int, d: int, snr_db: float, seed: int, label: str,
                axis_idx: int, trial_idx: int) -> PairedClouds:
    x = gen_gaussian_cloud(n, d, derive_seed(seed, label, axis_idx, trial_idx, "cloud"))
    y = add_noise(x, NoiseSpec(snr_db), derive_seed(seed, label, axis_idx, trial_idx, "noise"))
    return PairedClouds(x, y)


def noise_sweep(
    n: int,
    d: int,
    ks: Sequence[int],
    snr_list: Sequence[float],
    trials: int = 30,
    seed: int = 0,
    metric: Metric | None = None,
    threads: int = 1,
) -> SweepResult:
    """Similarity curves over k for each SNR, bootstrapped over fresh draws."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    metric = metric or Metric.cosine()
    ks = [int(k) for k in ks]

    def one_trial(task):
        axis_idx, trial_idx = task
        pair = _noisy_pair(n, d, snr_list[axis_idx], seed, "noise-sweep", axis_idx, trial_idx)
        curve = nngs_sweep(pair, ks, metric, metric)
        return [s.mean for s in curve.samples]

    tasks = [(a, t) for a in range(len(snr_list)) for t in range(trials)]
    flat = _map_indexed(tasks, one_trial, threads)
    curves = []
    for a in range(len(snr_list)):
        block = np.array(flat[a * trials:(a + 1) * trials])
        curves.append(_aggregate(block, ks, n, trials))
    return SweepResult(
        axis_name="snr_db",
        axis_values=tuple(snr_list),
        curves=tuple(curves),
        n_trials=trials,
    )


def size_invariance_sweep(
    c: float,
    ns: Sequence[int],
    snr_db: float,
    d: int,
    trials: int = 30,
    seed: int = 0,
    metric: Metric | None = None,
    threads: int = 1,
) -> SweepResult:
    """Mean similarity at fixed relative neighborhood size across cloud sizes."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    metric = metric or Metric.cosine()
    ns = [int(n) for n in ns]

    def one_trial(task):
        axis_idx, trial_idx = task
        n = ns[axis_idx]
        pair = _noisy_pair(n, d, snr_db, seed, "size-sweep", axis_idx, trial_idx)
        return nngs(pair, k_from_c(c, n), metric, metric).nngs

    tasks = [(a, t) for a in range(len(ns)) for t in range(trials)]
    flat = _map_indexed(tasks, one_trial, threads)
    curves = []
    for a, n in enumerate(ns):
        block = np.array(flat[a * trials:(a + 1) * trials]).reshape(trials, 1)
        curves.append(_aggregate(block, [k_from_c(c, n)], n, trials))
    return SweepResult(
        axis_name="n",
        axis_values=tuple(ns),
        curves=tuple(curves),
        n_trials=trials,
    )


def dim_invariance_sweep(
    k: int,
    n: int,
    ds: Sequence[int],
    snr_db: float,
    trials: int = 30,
    seed: int = 0,
    metric: Metric | None = None,
    threads: int = 1,
) -> SweepResult:
    """Mean similarity at fixed k and n across dimensionalities."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    metric = metric or Metric.cosine()
    ds = [int(d) for d in ds]

    def one_trial(task):
        axis_idx, trial_idx = task
        pair = _noisy_pair(n, ds[axis_idx], snr_db, seed, "dim-sweep", axis_idx, trial_idx)
        return nngs(pair, k, metric, metric).nngs

    tasks = [(a, t) for a in range(len(ds)) for t in range(trials)]
    flat = _map_indexed(tasks, one_trial, threads)
    curves = []
    for a in range(len(ds)):
        block = np.array(flat[a * trials:(a + 1) * trials]).reshape(trials, 1)
        curves.append(_aggregate(block, [k], n, trials))
    return SweepResult(
        axis_name="d",
        axis_values=tuple(ds),
        curves=tuple(curves),
        n_trials=trials,
    )


#: Canonical method columns of the blob comparison table.
BLOB_METHOD_COLUMNS = ("cka_linear", "cka_rbf_0.01", "cka_rbf_3", "nngs_k5", "nngs_k300")


def compare_blob_methods(
    spec: BlobSpec,
    seed: int,
    ks: Sequence[int] = (5, 300),
    sigmas: Sequence[float] = (0.01, 3.0),
) -> dict[str, float]:
    """All comparison-table columns for one blob dataset draw.

    CKA variants run linear plus one RBF per sigma; the structural
    similarity runs under euclidean distance at each k.
    """
    pair = create_aligned_dataset(spec, seed)
    euclid = Metric.minkowski(2.0)
    out: dict[str, float] = {"cka_linear": cka(pair.x, pair.y, KernelSpec.linear())}
    for sigma in sigmas:
        out[f"cka_rbf_{sigma:g}"] = cka(pair.x, pair.y, KernelSpec.rbf(sigma), KernelSpec.rbf(sigma))
    for k in ks:
        out[f"nngs_k{k}"] = nngs(pair, int(k), euclid, euclid).nngs
    return out
