"""Text-based interchange: embedding loaders and report writers.

Formats are pinned exactly: GloVe-style text (token + floats, no header),
embedding CSV with an `id` column and optional `label` column, and report
serialization to JSON (stable key order, 12 significant digits) or
RFC-4180 CSV.
"""

from __future__ import annotations

import csv
import json
import warnings
from typing import IO, Iterable, Mapping

import numpy as np

from .core import PointCloud
from .errors import (
    DuplicateIdError,
    InconsistentDimensionError,
    MissingColumnError,
    ParseWarning,
    UnparsableFloatError,
)
from .similarity import SimilarityCurve, SimilarityReport
from .synthetic import SweepResult
from .tasks import CorrelationReport, LabeledEmbeddings

FLOAT_DIGITS = 12


def read_glove_text(stream: Iterable[str]) -> PointCloud:
    """Load `<token> <f1> ... <fp>` lines into a cloud, keeping file order.

    Duplicate tokens keep their first row and warn; dimensionality is fixed
    by the first line.
    """
    ids: list[str] = []
    seen: set[str] = set()
    rows: list[np.ndarray] = []
    dim: int | None = None
    for lineno, raw in enumerate(stream, start=1):
        parts = raw.split()
        if not parts:
            continue
        token = parts[0]
        if dim is None:
            dim = len(parts) - 1
        elif len(parts) - 1 != dim:
            raise InconsistentDimensionError(
                f"line {lineno}: expected {dim} coordinates, got {len(parts) - 1}"
            )
        try:
            vector = np.array(parts[1:], dtype=np.float64)
        except ValueError as exc:
            raise UnparsableFloatError(f"line {lineno}: {exc}") from None
        if token in seen:
            warnings.warn(
                f"line {lineno}: duplicate token {token!r}, keeping first",
                ParseWarning,
                stacklevel=2,
            )
            continue
        seen.add(token)
        ids.append(token)
        rows.append(vector)
    return PointCloud(tuple(ids), np.array(rows, dtype=np.float64))


def read_csv_embeddings(
    stream: Iterable[str],
    id_column: str = "id",
    label_column: str | None = None,
) -> PointCloud | LabeledEmbeddings:
    """Load an embedding CSV with a header row.

    All columns other than the id (and optional label) column are parsed as
    float coordinates, in header order. Returns a PointCloud, or
    LabeledEmbeddings when a label column is named.
    """
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise MissingColumnError("empty file: no header row") from None
    if id_column not in header:
        raise MissingColumnError(f"no {id_column!r} column in header {header}")
    id_pos = header.index(id_column)
    label_pos: int | None = None
    if label_column is not None:
        if label_column not in header:
            raise MissingColumnError(f"no {label_column!r} column in header {header}")
        label_pos = header.index(label_column)
    coord_pos = [p for p in range(len(header)) if p != id_pos and p != label_pos]

    ids: list[str] = []
    labels: list[str] = []
    rows: list[list[float]] = []
    seen: set[str] = set()
    for lineno, record in enumerate(reader, start=2):
        if not record:
            continue
        if len(record) != len(header):
            raise InconsistentDimensionError(
                f"line {lineno}: expected {len(header)} fields, got {len(record)}"
            )
        item = record[id_pos]
        if item in seen:
            raise DuplicateIdError(f"line {lineno}: duplicate id {item!r}")
        seen.add(item)
        try:
            coords = [float(record[p]) for p in coord_pos]
        except ValueError:
            bad = next(p for p in coord_pos if not _is_float(record[p]))
            raise UnparsableFloatError(
                f"line {lineno}, column {header[bad]!r}: cannot parse {record[bad]!r}"
            ) from None
        ids.append(item)
        rows.append(coords)
        if label_pos is not None:
            labels.append(record[label_pos])

    data = np.array(rows, dtype=np.float64)
    if label_pos is not None:
        classes = tuple(dict.fromkeys(labels))
        return LabeledEmbeddings(tuple(ids), tuple(labels), data, classes)
    return PointCloud(tuple(ids), data)


def _is_float(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


def write_embeddings_csv(
    cloud: PointCloud | LabeledEmbeddings, stream: IO[str]
) -> None:
    """Write a cloud in the embedding-CSV contract (`id[,label],x0,...`)."""
    writer = csv.writer(stream, lineterminator="\n")
    dim = cloud.data.shape[1]
    labeled = isinstance(cloud, LabeledEmbeddings)
    header = ["id", "label"] if labeled else ["id"]
    writer.writerow(header + [f"x{j}" for j in range(dim)])
    for i, item in enumerate(cloud.ids):
        front = [item, cloud.labels[i]] if labeled else [item]
        writer.writerow(front + [_fmt(v) for v in cloud.data[i]])


def _fmt(value: float) -> str:
    return format(float(value), f".{FLOAT_DIGITS}g")


def _round12(value: float) -> float:
    return float(_fmt(value))


def _curve_payload(curve: SimilarityCurve) -> dict:
    return {
        "n_trials": curve.n_trials,
        "samples": [
            {
                "k": s.k,
                "c": _round12(s.c),
                "mean": _round12(s.mean),
                "std": _round12(s.std),
                "baseline": _round12(s.baseline),
            }
            for s in curve.samples
        ],
    }


def _json_payload(report, config: Mapping | None) -> dict:
    payload: dict = {}
    if config is not None:
        payload["config"] = dict(config)
    if isinstance(report, SimilarityReport):
        payload.update(
            type="similarity_report",
            k=report.k,
            c=_round12(report.c),
            nngs=_round12(report.nngs),
            baseline=_round12(report.baseline),
            per_point=[_round12(v) for v in report.per_point],
        )
    elif isinstance(report, SimilarityCurve):
        payload["type"] = "similarity_curve"
        payload.update(_curve_payload(report))
    elif isinstance(report, SweepResult):
        payload.update(
            type="sweep_result",
            axis_name=report.axis_name,
            axis_values=[
                _round12(v) if isinstance(v, float) else v for v in report.axis_values
            ],
            n_trials=report.n_trials,
            curves=[
                {"axis_value": _round12(float(v)), **_curve_payload(c)}
                for v, c in zip(report.axis_values, report.curves)
            ],
        )
    elif isinstance(report, CorrelationReport):
        payload.update(
            type="correlation_report",
            rho=None if report.rho is None else _round12(report.rho),
            p_value=None if report.p_value is None else _round12(report.p_value),
            pairs=[
                {
                    "name": p.name,
                    "similarity": _round12(p.similarity),
                    "accuracy": _round12(p.accuracy),
                }
                for p in report.pairs
            ],
        )
    else:
        raise TypeError(f"cannot serialize {type(report).__name__}")
    return payload


def _write_csv(report, stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    if isinstance(report, SimilarityReport):
        writer.writerow(["point", "jaccard", "k", "c", "nngs", "baseline"])
        for i, value in enumerate(report.per_point):
            writer.writerow(
                [i, _fmt(value), report.k, _fmt(report.c), _fmt(report.nngs), _fmt(report.baseline)]
            )
    elif isinstance(report, SimilarityCurve):
        writer.writerow(["k", "c", "mean", "std", "baseline"])
        for s in report.samples:
            writer.writerow([s.k, _fmt(s.c), _fmt(s.mean), _fmt(s.std), _fmt(s.baseline)])
    elif isinstance(report, SweepResult):
        writer.writerow(
            [report.axis_name, "k", "c", "mean", "std", "band_lo", "band_hi", "baseline"]
        )
        for value, curve in zip(report.axis_values, report.curves):
            for s in curve.samples:
                writer.writerow(
                    [
                        _fmt(value) if isinstance(value, float) else value,
                        s.k,
                        _fmt(s.c),
                        _fmt(s.mean),
                        _fmt(s.std),
                        _fmt(s.mean - 2.0 * s.std),
                        _fmt(s.mean + 2.0 * s.std),
                        _fmt(s.baseline),
                    ]
                )
    elif isinstance(report, CorrelationReport):
        writer.writerow(["name", "similarity", "accuracy"])
        for p in report.pairs:
            writer.writerow([p.name, _fmt(p.similarity), _fmt(p.accuracy)])
    else:
        raise TypeError(f"cannot serialize {type(report).__name__}")


def report_payload(report, config: Mapping | None = None) -> dict:
    """The JSON-ready mapping for a report, floats at 12 significant digits."""
    return _json_payload(report, config)


def write_report(
    report,
    format: str,
    stream: IO[str],
    config: Mapping | None = None,
) -> None:
    """Serialize a report to JSON or CSV.

    JSON embeds the run configuration when one is given and keeps insertion
    key order; floats carry 12 significant digits in both formats. CSV is
    pure tabular data (header plus one row per sample or pair).
    """
    if format == "json":
        json.dump(_json_payload(report, config), stream, indent=2)
        stream.write("\n")
    elif format == "csv":
        _write_csv(report, stream)
    else:
        raise ValueError(f"unknown report format {format!r}")
