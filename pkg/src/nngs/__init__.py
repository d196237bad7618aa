"""Structural similarity between paired embedding point clouds.

Compares two vector representations of the same items by the overlap of
their k-nearest-neighbor index sets, alongside a Centered Kernel Alignment
baseline, synthetic validation sweeps, and embedding case-study evaluators.
"""

from .cka import KernelSpec, cka, gram
from .core import (
    Metric,
    PairedClouds,
    PointCloud,
    align_by_intersection,
    derive_seed,
    validate_paired,
)
from .errors import NNGSError, ParseWarning
from .io_formats import (
    read_csv_embeddings,
    read_glove_text,
    write_embeddings_csv,
    write_report,
)
from .knn import NeighborSets, knn_sets, pairwise_distances
from .similarity import (
    CurveSample,
    SimilarityCurve,
    SimilarityReport,
    hyper_baseline,
    jaccard,
    k_from_c,
    nngs,
    nngs_sweep,
)
from .synthetic import (
    BLOB_PRESETS,
    BlobSpec,
    NoiseSpec,
    SweepResult,
    add_noise,
    compare_blob_methods,
    create_aligned_dataset,
    dim_invariance_sweep,
    gen_gaussian_cloud,
    noise_sweep,
    size_invariance_sweep,
)
from .tasks import (
    AnalogyQuad,
    CorrelationReport,
    LabeledEmbeddings,
    TaskSample,
    accuracy_similarity_study,
    analogy_accuracy,
    class_mean_embeddings,
    parse_analogy_file,
    pearson,
    task_point_clouds,
    zero_shot_accuracy,
)

__version__ = "0.1.0"

__all__ = [
    "AnalogyQuad",
    "BLOB_PRESETS",
    "BlobSpec",
    "CorrelationReport",
    "CurveSample",
    "KernelSpec",
    "LabeledEmbeddings",
    "Metric",
    "NNGSError",
    "NeighborSets",
    "NoiseSpec",
    "PairedClouds",
    "ParseWarning",
    "PointCloud",
    "SimilarityCurve",
    "SimilarityReport",
    "SweepResult",
    "TaskSample",
    "accuracy_similarity_study",
    "add_noise",
    "align_by_intersection",
    "analogy_accuracy",
    "cka",
    "class_mean_embeddings",
    "compare_blob_methods",
    "create_aligned_dataset",
    "derive_seed",
    "dim_invariance_sweep",
    "gen_gaussian_cloud",
    "gram",
    "hyper_baseline",
    "jaccard",
    "k_from_c",
    "knn_sets",
    "nngs",
    "nngs_sweep",
    "noise_sweep",
    "pairwise_distances",
    "parse_analogy_file",
    "pearson",
    "read_csv_embeddings",
    "read_glove_text",
    "size_invariance_sweep",
    "task_point_clouds",
    "validate_paired",
    "write_embeddings_csv",
    "write_report",
    "zero_shot_accuracy",
]
