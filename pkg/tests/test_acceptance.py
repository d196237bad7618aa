"""Acceptance suite.

One test per criterion (sub-clauses split out where they stand or fall
independently); each prints a single PASS/FAIL line. Run with

    pytest tests/test_acceptance.py -s

Data-gated criteria (9, 10) skip unless the public input files are present;
see README for download instructions.
"""

from __future__ import annotations

import math
import os
import time
from pathlib import Path

import numpy as np
import pytest

from nngs.cka import KernelSpec, cka
from nngs.core import Metric, PairedClouds, PointCloud, derive_seed
from nngs.io_formats import read_csv_embeddings, read_glove_text
from nngs.similarity import hyper_baseline, nngs, nngs_sweep
from nngs.synthetic import (
    BLOB_PRESETS,
    compare_blob_methods,
    dim_invariance_sweep,
    gen_gaussian_cloud,
    noise_sweep,
    size_invariance_sweep,
)
from nngs.tasks import (
    TaskSample,
    accuracy_similarity_study,
    analogy_accuracy,
    class_mean_embeddings,
    parse_analogy_file,
    task_point_clouds,
    zero_shot_accuracy,
)

from conftest import naive_nngs, random_orthonormal

COSINE = Metric.cosine()
EUCLID = Metric.minkowski(2.0)
KS = [1, 5, 10, 20, 50, 99]

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
GLOVE_PATH = Path(os.environ.get("NNGS_GLOVE", DATA_DIR / "glove.6B.300d.txt"))
QUESTIONS_PATH = Path(os.environ.get("NNGS_QUESTIONS", DATA_DIR / "questions-words.txt"))
CLIP_IMAGES_PATH = Path(os.environ.get("NNGS_CLIP_IMAGES", DATA_DIR / "clip-cifar100-images.csv"))
CLIP_TEXTS_DIR = Path(os.environ.get("NNGS_CLIP_TEXTS", DATA_DIR / "clip-cifar100-texts"))


def check(criterion: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {criterion}: {status}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def iid_pair(n: int, d: int, seed_label: tuple) -> PairedClouds:
    x = gen_gaussian_cloud(n, d, derive_seed(0, *seed_label, "x"))
    y = gen_gaussian_cloud(n, d, derive_seed(0, *seed_label, "y"))
    return PairedClouds(x, PointCloud(x.ids, y.data))


def test_c1_baseline_bound():
    """Criterion 1: mean NNGS of iid clouds sits in [H(k), H(k) + 0.05]."""
    started = time.perf_counter()
    values = []
    for s in range(30):
        pair = iid_pair(100, 50, ("acceptance", "bound", s))
        curve = nngs_sweep(pair, KS, COSINE, COSINE)
        values.append([sample.mean for sample in curve.samples])
    means = np.array(values).mean(axis=0)
    elapsed = time.perf_counter() - started
    failures = []
    for k, mean in zip(KS, means):
        h = hyper_baseline(k, 100)
        if not (h <= mean <= h + 0.05):
            failures.append(f"k={k}: mean={mean:.4f} H={h:.4f}")
    if elapsed >= 30.0:
        failures.append(f"runtime {elapsed:.1f}s >= 30s")
    check(
        "1 baseline bound",
        not failures,
        "; ".join(failures) or f"max excess {max(m - hyper_baseline(k, 100) for k, m in zip(KS, means)):.4f}, {elapsed:.1f}s",
    )


def _reports_identical(a, b) -> bool:
    return (
        a.k == b.k
        and a.c == b.c
        and a.nngs == b.nngs
        and a.baseline == b.baseline
        and np.array_equal(a.per_point, b.per_point)
    )


def test_c2_exact_invariances():
    """Criterion 2: similarity reports are bit-identical under rank-preserving maps."""
    rng = np.random.default_rng(derive_seed(0, "acceptance", "invariance"))
    n, d = 50, 20
    bad = 0
    for instance in range(20):
        pair = iid_pair(n, d, ("acceptance", "invariance", instance))
        k = int(rng.integers(1, n))
        q = random_orthonormal(d, rng)
        scale = float(rng.uniform(0.1, 10.0))
        shift = rng.standard_normal(d)

        base_euclid = nngs(pair, k, EUCLID, EUCLID)
        base_cosine = nngs(pair, k, COSINE, COSINE)
        for side in ("x", "y"):
            cloud = getattr(pair, side)
            moved = PointCloud(cloud.ids, scale * (cloud.data @ q) + shift)
            spun = PointCloud(cloud.ids, scale * (cloud.data @ q))
            if side == "x":
                pair_moved = PairedClouds(moved, pair.y)
                pair_spun = PairedClouds(spun, pair.y)
            else:
                pair_moved = PairedClouds(pair.x, moved)
                pair_spun = PairedClouds(pair.x, spun)
            if not _reports_identical(base_euclid, nngs(pair_moved, k, EUCLID, EUCLID)):
                bad += 1
            if not _reports_identical(base_cosine, nngs(pair_spun, k, COSINE, COSINE)):
                bad += 1
    check("2 exact invariances", bad == 0, f"{bad} of 80 transformed reports differ")


@pytest.fixture(scope="module")
def noise_curves():
    return noise_sweep(
        100, 50, KS, [-100.0, -10.0, 30.0, 40.0, 100.0],
        trials=30, seed=derive_seed(0, "acceptance", "noise"),
    )


def _curve_means(result, snr):
    index = result.axis_values.index(snr)
    return {s.k: s.mean for s in result.curves[index].samples}


def test_c3a_deep_noise_reaches_the_floor(noise_curves):
    """Criterion 3, noise floor: the -100 dB curve hugs H(k) at every k."""
    means = _curve_means(noise_curves, -100.0)
    worst = max(abs(mean - hyper_baseline(k, 100)) for k, mean in means.items())
    check("3a noise floor at -100 dB", worst <= 0.05, f"max |mean - H| = {worst:.4f}")


def test_c3b_saturation_below_minus_ten(noise_curves):
    """Criterion 3, noisy side: SNR <= -10 dB stays within H(k) + 0.07."""
    failures = []
    for snr in (-100.0, -10.0):
        for k, mean in _curve_means(noise_curves, snr).items():
            h = hyper_baseline(k, 100)
            if mean > h + 0.07:
                failures.append(f"snr={snr} k={k}: {mean:.4f} > {h + 0.07:.4f}")
    check("3b noisy-side saturation", not failures, "; ".join(failures) or "all within H+0.07")


def test_c3c_saturation_above_thirty(noise_curves):
    """Criterion 3, clean side: SNR >= 30 dB means >= 0.95.

    Measured fact: at the 30 dB saturation boundary itself the curve dips to
    about 0.92 for small k (the claim holds strictly beyond the boundary,
    e.g. at 40 dB); the criterion is asserted as stated and the shortfall at
    exactly 30 dB is documented in the decisions ledger.
    """
    failures = []
    for snr in (30.0, 40.0, 100.0):
        for k, mean in _curve_means(noise_curves, snr).items():
            if mean < 0.95:
                failures.append(f"snr={snr} k={k}: {mean:.4f}")
    check("3c clean-side saturation", not failures, "; ".join(failures) or "all >= 0.95")


def test_c4_size_invariance():
    """Criterion 4: fixed c, means constant in n within 0.05."""
    result = size_invariance_sweep(
        0.2, [50, 100, 200, 400], 10.0, 50,
        trials=30, seed=derive_seed(0, "acceptance", "size"),
    )
    means = [curve.samples[0].mean for curve in result.curves]
    spread = max(means) - min(means)
    check("4 size invariance", spread <= 0.05, f"spread {spread:.4f} over n={list(result.axis_values)}")


def test_c5_dimension_invariance():
    """Criterion 5: fixed k and n, means constant in d within 0.05."""
    result = dim_invariance_sweep(
        20, 100, [10, 20, 50, 100, 300, 1000], 10.0,
        trials=30, seed=derive_seed(0, "acceptance", "dim"),
    )
    means = [curve.samples[0].mean for curve in result.curves]
    spread = max(means) - min(means)
    check("5 dimension invariance", spread <= 0.05, f"spread {spread:.4f} over d={list(result.axis_values)}")


REPORTED_TABLE = {
    "scales": {"cka_linear": 0.86, "cka_rbf_0.01": 1.00, "cka_rbf_3": 0.98,
               "nngs_k5": 1.00, "nngs_k300": 0.76},
    "unbalanced": {"cka_linear": 0.10, "cka_rbf_0.01": 1.00, "cka_rbf_3": 0.31,
                   "nngs_k5": 1.00, "nngs_k300": 0.99},
    "noise-within": {"cka_linear": 0.99, "cka_rbf_0.01": 1.00, "cka_rbf_3": 0.96,
                     "nngs_k5": 0.03, "nngs_k300": 0.99},
    "shuffled": {"cka_linear": 0.16, "cka_rbf_0.01": 1.00, "cka_rbf_3": 0.84,
                 "nngs_k5": 1.00, "nngs_k300": 0.63},
}


@pytest.fixture(scope="module")
def blob_table():
    return {
        name: [compare_blob_methods(spec, derive_seed(0, "table", name, t)) for t in range(10)]
        for name, spec in BLOB_PRESETS.items()
    }


def test_c6a_blob_table_cells(blob_table):
    """Criterion 6, cell means: all 20 cells within 0.08 of the reported values."""
    failures = []
    worst = 0.0
    for name, runs in blob_table.items():
        for column, expected in REPORTED_TABLE[name].items():
            mean = float(np.mean([run[column] for run in runs]))
            worst = max(worst, abs(mean - expected))
            if abs(mean - expected) > 0.08:
                failures.append(f"{name}/{column}: {mean:.3f} vs {expected:.2f}")
    check("6a comparison-table cells", not failures,
          "; ".join(failures) or f"max |mean - reported| = {worst:.4f}")


def test_c6b_local_similarity_exact_ones(blob_table):
    """Criterion 6, exactness: cells reported as 1.00 hit exactly 1.0 on >= 8/10 seeds.

    Measured fact: only the shuffled dataset yields exact 1.0 reliably; the
    scaled-blob datasets occasionally hand a wide-blob point a foreign
    neighbor, so their table value is a two-decimal rounding of ~0.999.
    Asserted as stated; analysis in the decisions ledger.
    """
    counts = {}
    for name in ("scales", "unbalanced", "shuffled"):
        counts[name] = sum(run["nngs_k5"] == 1.0 for run in blob_table[name])
    detail = ", ".join(f"{name}: {count}/10" for name, count in counts.items())
    check("6b exact local similarity", all(count >= 8 for count in counts.values()), detail)


def test_c7_oracle_equivalence():
    """Criterion 7: production path equals the brute-force reference exactly."""
    rng = np.random.default_rng(derive_seed(0, "acceptance", "oracle"))
    mismatches = 0
    for trial in range(200):
        n = int(rng.integers(3, 13))
        x = rng.standard_normal((n, int(rng.integers(1, 6))))
        y = rng.standard_normal((n, int(rng.integers(1, 6))))
        k = int(rng.integers(1, n))
        metric_x = COSINE if trial % 2 else EUCLID
        metric_y = EUCLID if trial % 3 else COSINE
        ids = tuple(str(i) for i in range(n))
        pair = PairedClouds(PointCloud(ids, x), PointCloud(ids, y))
        report = nngs(pair, k, metric_x, metric_y)
        expected = naive_nngs(x, y, k, metric_x, metric_y)
        if report.per_point.tolist() != expected or report.nngs != float(np.mean(expected)):
            mismatches += 1

    cka_bad = 0
    for trial in range(50):
        cloud = PointCloud(
            tuple(str(i) for i in range(10)), rng.standard_normal((10, 4))
        )
        spec = KernelSpec.linear() if trial % 2 else KernelSpec.rbf(1.0 + trial / 25)
        if abs(cka(cloud, cloud, spec, spec) - 1.0) > 1e-10:
            cka_bad += 1
    check(
        "7 oracle equivalence",
        mismatches == 0 and cka_bad == 0,
        f"{mismatches}/200 NNGS mismatches, {cka_bad}/50 CKA self-similarity misses",
    )


def test_c8_noise_curves_do_not_cross():
    """Criterion 8: higher-SNR curves dominate lower-SNR curves within 0.03."""
    result = noise_sweep(
        100, 50, KS, [0.0, 10.0, 20.0],
        trials=30, seed=derive_seed(0, "acceptance", "crossing"),
    )
    failures = []
    worst = math.inf
    for low, high in ((0.0, 10.0), (10.0, 20.0)):
        lo = _curve_means(result, low)
        hi = _curve_means(result, high)
        for k in KS:
            margin = hi[k] - lo[k]
            worst = min(worst, margin)
            if margin < -0.03:
                failures.append(f"{high} vs {low} at k={k}: margin {margin:.4f}")
    check("8 non-crossing", not failures, "; ".join(failures) or f"min margin {worst:+.4f}")


@pytest.mark.skipif(
    not (GLOVE_PATH.exists() and QUESTIONS_PATH.exists()),
    reason="needs public GloVe vectors and the analogy question file "
    "(set NNGS_GLOVE and NNGS_QUESTIONS, see README)",
)
def test_c9_glove_study():
    """Criterion 9 (data-gated): analogy accuracy correlates with similarity."""
    with open(GLOVE_PATH, "r", encoding="utf-8", newline="") as fh:
        emb = read_glove_text(fh)
    categories = parse_analogy_file(QUESTIONS_PATH.read_text(encoding="utf-8"))
    samples = []
    for name, quads in categories.items():
        accuracy, n_eval, _ = analogy_accuracy(emb, quads)
        if n_eval == 0:
            continue
        samples.append(TaskSample(name, task_point_clouds(quads, emb), accuracy))
    reports = accuracy_similarity_study(samples, c=0.3, metric_x=COSINE, with_cka=True)
    rho_nngs = reports["nngs"].rho
    rho_cka = reports["cka"].rho
    ok = rho_nngs >= 0.80 and 0.64 <= rho_cka <= 0.84 and rho_nngs > rho_cka
    check("9 analogy study", ok, f"nngs rho={rho_nngs:.3f}, cka rho={rho_cka:.3f}")


@pytest.mark.skipif(
    not (CLIP_IMAGES_PATH.exists() and CLIP_TEXTS_DIR.is_dir()),
    reason="needs exporter-produced image/text embedding files "
    "(set NNGS_CLIP_IMAGES and NNGS_CLIP_TEXTS, see README)",
)
def test_c10_clip_study():
    """Criterion 10 (data-gated): zero-shot accuracy correlates with similarity."""
    with open(CLIP_IMAGES_PATH, "r", encoding="utf-8", newline="") as fh:
        images = read_csv_embeddings(fh, id_column="id", label_column="label")
    means = class_mean_embeddings(images)

    samples = []
    accuracies = {}
    for path in sorted(CLIP_TEXTS_DIR.glob("*.csv")):
        with open(path, "r", encoding="utf-8", newline="") as fh:
            texts = read_csv_embeddings(fh)
        rows = [texts.id_to_row[cls] for cls in means.ids]
        pair = PairedClouds(means, PointCloud(means.ids, texts.data[rows]))
        accuracy = zero_shot_accuracy(images, texts)
        samples.append(TaskSample(path.stem, pair, accuracy))
        accuracies[path.stem] = accuracy

    def correlations(subset):
        reports = accuracy_similarity_study(subset, k=3, metric_x=COSINE, with_cka=True)
        return reports["nngs"].rho, reports["cka"].rho

    rho_all, rho_all_cka = correlations(samples)
    originals = [s for s in samples if s.name.startswith("original__")]
    rho_orig, rho_orig_cka = correlations(originals)

    acc_orig = np.mean([a for name, a in accuracies.items() if name.startswith("original__")])
    acc_neg = np.mean([a for name, a in accuracies.items() if name.startswith("negated__")])
    gap = abs(acc_orig - acc_neg)

    ok = (
        0.85 <= rho_all <= 0.95
        and 0.70 <= rho_orig <= 0.84
        and rho_all >= rho_all_cka
        and rho_orig >= rho_orig_cka
        and gap <= 0.02
    )
    check(
        "10 zero-shot study", ok,
        f"all rho={rho_all:.3f}/{rho_all_cka:.3f}, original rho={rho_orig:.3f}/{rho_orig_cka:.3f}, "
        f"accuracy gap {gap:.3f}",
    )
