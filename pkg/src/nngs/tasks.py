"""Case-study evaluators: word analogies and cross-modal zero-shot accuracy.

Both studies reduce to the same shape: per task, an accuracy number and a
paired point cloud whose structural similarity is then correlated with
accuracy across tasks.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats

from .cka import KernelSpec, cka
from .core import Metric, PairedClouds, PointCloud
from .errors import (
    DegenerateVarianceError,
    EmptyClassError,
    EmptyFileError,
    EmptyVocabularyError,
    LengthMismatchError,
    MissingClassTextError,
    NoCategoriesError,
    ParseWarning,
    TooFewPairsError,
    TooFewSamplesError,
)
from .similarity import k_from_c, nngs

logger = logging.getLogger(__name__)

# Vocabulary argmax scans are chunked to bound the score-matrix size.
_QUERY_CHUNK = 256


@dataclass(frozen=True)
class AnalogyQuad:
    """One analogy question: a is to b as c is to d."""

    a: str
    b: str
    c: str
    d: str
    category: str


@dataclass(frozen=True, eq=False)
class LabeledEmbeddings:
    """Vectors with an id and a class label each; classes keep first-seen order."""

    ids: tuple[str, ...]
    labels: tuple[str, ...]
    data: np.ndarray
    classes: tuple[str, ...]

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        if len(self.ids) != len(self.labels) or len(self.ids) != data.shape[0]:
            raise LengthMismatchError("ids, labels, and data rows must align")
        missing = set(self.labels) - set(self.classes)
        if missing:
            raise EmptyClassError(f"labels missing from the class list: {sorted(missing)}")
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "classes", tuple(self.classes))
        object.__setattr__(self, "data", data)

    @property
    def n(self) -> int:
        return self.data.shape[0]


@dataclass(frozen=True)
class CorrelationPair:
    name: str
    similarity: float
    accuracy: float


@dataclass(frozen=True, eq=False)
class CorrelationReport:
    """Per-task (similarity, accuracy) pairs and their Pearson correlation.

    rho and p_value are None when the correlation is undefined (a constant
    side, e.g. every task at accuracy 1.0).
    """

    pairs: tuple[CorrelationPair, ...]
    rho: float | None
    p_value: float | None


def parse_analogy_file(text: str) -> dict[str, list[AnalogyQuad]]:
    """Parse the question-file layout: ": <category>" headers, 4-token lines.

    Malformed lines are skipped with one warning each.
    """
    if not text.strip():
        raise EmptyFileError("analogy file is empty")
    categories: dict[str, list[AnalogyQuad]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(":"):
            current = line[1:].strip() or f"category-{lineno}"
            categories.setdefault(current, [])
            continue
        tokens = line.split()
        if current is None:
            warnings.warn(
                f"line {lineno}: question before any category header, skipped",
                ParseWarning,
                stacklevel=2,
            )
            continue
        if len(tokens) != 4:
            warnings.warn(
                f"line {lineno}: expected 4 words, got {len(tokens)}, skipped",
                ParseWarning,
                stacklevel=2,
            )
            continue
        categories[current].append(AnalogyQuad(*tokens, category=current))
    if not categories:
        raise NoCategoriesError("no ': <category>' headers found")
    return categories


def _unit_rows(data: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(data, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0  # zero rows can never win an argmax anyway
    return data / norms


def analogy_accuracy(
    emb: PointCloud, quads: Sequence[AnalogyQuad]
) -> tuple[float, int, int]:
    """Fraction of quads whose analogy resolves to the expected word.

    The prediction is the vocabulary argmax of cosine similarity to
    (e_b - e_a + e_c) with the three query words excluded. Quads with any
    out-of-vocabulary word are skipped and counted separately. Returns
    (accuracy, n_evaluated, n_skipped).
    """
    if emb.n == 0:
        raise EmptyVocabularyError("empty vocabulary")
    rows = emb.id_to_row
    usable: list[tuple[int, int, int, int]] = []
    n_skipped = 0
    for q in quads:
        try:
            usable.append((rows[q.a], rows[q.b], rows[q.c], rows[q.d]))
        except KeyError:
            n_skipped += 1
    if not usable:
        return 0.0, 0, n_skipped

    unit = _unit_rows(emb.data)
    correct = 0
    for start in range(0, len(usable), _QUERY_CHUNK):
        chunk = usable[start:start + _QUERY_CHUNK]
        ia = np.array([t[0] for t in chunk])
        ib = np.array([t[1] for t in chunk])
        ic = np.array([t[2] for t in chunk])
        expected = np.array([t[3] for t in chunk])
        targets = emb.data[ib] - emb.data[ia] + emb.data[ic]
        scores = targets @ unit.T
        pos = np.arange(len(chunk))
        scores[pos, ia] = -np.inf
        scores[pos, ib] = -np.inf
        scores[pos, ic] = -np.inf
        predicted = np.argmax(scores, axis=1)
        correct += int(np.sum(predicted == expected))
    return correct / len(usable), len(usable), n_skipped


def task_point_clouds(quads: Sequence[AnalogyQuad], emb: PointCloud) -> PairedClouds:
    """Paired clouds of the task's left/right words, ids = left words.

    Unique in-vocabulary (a, b) pairs are collected in first-occurrence
    order; a left word seen with a second, different right word keeps its
    first mapping (the conflict is logged).
    """
    if not quads:
        raise TooFewPairsError("no quads given")
    mapping: dict[str, str] = {}
    for q in quads:
        prior = mapping.get(q.a)
        if prior is None:
            mapping[q.a] = q.b
        elif prior != q.b:
            logger.warning(
                "category %r: %r maps to both %r and %r; keeping %r",
                q.category, q.a, prior, q.b, prior,
            )
    rows = emb.id_to_row
    kept = [(a, b) for a, b in mapping.items() if a in rows and b in rows]
    if len(kept) < 2:
        raise TooFewPairsError(
            f"need at least 2 in-vocabulary word pairs, found {len(kept)}"
        )
    left = emb.take([rows[a] for a, _ in kept])
    right = emb.take([rows[b] for _, b in kept])
    ids = tuple(a for a, _ in kept)
    return PairedClouds(
        PointCloud(ids, left.data),
        PointCloud(ids, right.data),
    )


def class_mean_embeddings(data: LabeledEmbeddings) -> PointCloud:
    """One row per class: the arithmetic mean of its member vectors."""
    means = []
    labels = np.asarray(data.labels, dtype=object)
    for cls in data.classes:
        members = data.data[labels == cls]
        if members.shape[0] == 0:
            raise EmptyClassError(f"class {cls!r} has no items")
        means.append(members.mean(axis=0))
    return PointCloud(tuple(data.classes), np.vstack(means))


def zero_shot_accuracy(images: LabeledEmbeddings, texts: PointCloud) -> float:
    """Fraction of images whose nearest class text matches their label.

    Prediction is the cosine argmax over the image's classes; ties resolve
    to the earliest class in class order.
    """
    missing = [cls for cls in images.classes if cls not in texts.id_to_row]
    if missing:
        raise MissingClassTextError(f"no text embedding for classes: {missing}")
    text_rows = [texts.id_to_row[cls] for cls in images.classes]
    text_unit = _unit_rows(texts.data[text_rows])
    image_unit = _unit_rows(images.data)
    scores = image_unit @ text_unit.T
    predicted = np.argmax(scores, axis=1)
    class_index = {cls: i for i, cls in enumerate(images.classes)}
    expected = np.array([class_index[label] for label in images.labels])
    return float(np.mean(predicted == expected))


def pearson(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float]:
    """Sample Pearson correlation with its two-sided p-value."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.shape != ys.shape:
        raise LengthMismatchError(f"got {xs.size} xs and {ys.size} ys")
    if xs.size < 3:
        raise TooFewSamplesError(f"need at least 3 pairs, got {xs.size}")
    if np.ptp(xs) == 0.0 or np.ptp(ys) == 0.0:
        raise DegenerateVarianceError("correlation undefined: a side is constant")
    rho, p_value = stats.pearsonr(xs, ys)
    return float(rho), float(p_value)


@dataclass(frozen=True)
class TaskSample:
    """One task for a correlation study: a name, its paired clouds, its accuracy."""

    name: str
    pair: PairedClouds
    accuracy: float


def accuracy_similarity_study(
    samples: Sequence[TaskSample],
    k: int | None = None,
    c: float | None = None,
    metric_x: Metric | None = None,
    metric_y: Metric | None = None,
    with_cka: bool = False,
    cka_spec: KernelSpec | None = None,
) -> dict[str, CorrelationReport]:
    """Correlate per-task structural similarity with task accuracy.

    Exactly one of k or c must be given; with c, each task uses its own
    k = floor(c * (n_task - 1)) so tasks of different sizes stay comparable.
    Returns reports keyed by method ("nngs", and "cka" when requested).
    """
    if (k is None) == (c is None):
        raise ValueError("give exactly one of k or c")
    if len(samples) < 3:
        raise TooFewSamplesError(f"need at least 3 tasks, got {len(samples)}")
    reports: dict[str, CorrelationReport] = {}

    nngs_pairs = []
    for sample in samples:
        k_task = k if k is not None else k_from_c(c, sample.pair.n)
        report = nngs(sample.pair, k_task, metric_x, metric_y)
        nngs_pairs.append(CorrelationPair(sample.name, report.nngs, sample.accuracy))
    reports["nngs"] = _correlate(nngs_pairs)

    if with_cka:
        spec = cka_spec or KernelSpec.linear()
        cka_pairs = [
            CorrelationPair(s.name, cka(s.pair.x, s.pair.y, spec, spec), s.accuracy)
            for s in samples
        ]
        reports["cka"] = _correlate(cka_pairs)
    return reports


def _correlate(pairs: list[CorrelationPair]) -> CorrelationReport:
    try:
        rho, p = pearson([p.similarity for p in pairs], [p.accuracy for p in pairs])
    except DegenerateVarianceError:
        logger.warning("correlation undefined (a side is constant); reporting pairs only")
        rho, p = None, None
    return CorrelationReport(tuple(pairs), rho, p)
