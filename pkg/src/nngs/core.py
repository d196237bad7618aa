"""Shared domain types: identified point clouds, cloud pairs, metrics, seeding.

All types are immutable after construction and safe to share across
concurrent workers.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    DuplicateIdError,
    EmptyIntersectionError,
    IdMismatchError,
    InvalidShapeError,
    NonFiniteCoordinateError,
    TooFewPointsError,
)

logger = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True, eq=False)
class PointCloud:
    """An ordered set of uniquely identified vectors in R^p.

    Row order is the canonical item order. Coordinates are stored as a
    read-only float64 array; identifiers are strings.
    """

    ids: tuple[str, ...]
    data: np.ndarray

    def __post_init__(self):
        ids = tuple(self.ids)
        data = np.array(self.data, dtype=np.float64)
        if data.ndim != 2:
            raise InvalidShapeError(f"expected a 2-d data array, got shape {data.shape}")
        if data.shape[0] < 2:
            raise TooFewPointsError(f"a point cloud needs at least 2 points, got {data.shape[0]}")
        if data.shape[1] < 1:
            raise InvalidShapeError("points need at least one coordinate")
        if len(ids) != data.shape[0]:
            raise InvalidShapeError(f"{len(ids)} ids for {data.shape[0]} data rows")
        if not all(isinstance(item, str) for item in ids):
            raise TypeError("ids must be strings")
        if len(set(ids)) != len(ids):
            seen = set()
            dup = next(item for item in ids if item in seen or seen.add(item))
            raise DuplicateIdError(f"duplicate id {dup!r}")
        if not np.isfinite(data).all():
            raise NonFiniteCoordinateError("coordinates must be finite (no NaN/Inf)")
        data.setflags(write=False)
        object.__setattr__(self, "ids", ids)
        object.__setattr__(self, "data", data)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def dim(self) -> int:
        return self.data.shape[1]

    def __len__(self) -> int:
        return self.n

    @cached_property
    def id_to_row(self) -> dict[str, int]:
        return {item: i for i, item in enumerate(self.ids)}

    def take(self, rows: Sequence[int]) -> "PointCloud":
        """New cloud holding the given rows, in the given order."""
        rows = list(rows)
        return PointCloud(tuple(self.ids[i] for i in rows), self.data[rows])


@dataclass(frozen=True, eq=False)
class PairedClouds:
    """Two point clouds with a one-to-one item correspondence.

    Both clouds carry the same ids in the same order; dimensionalities may
    differ.
    """

    x: PointCloud
    y: PointCloud

    def __post_init__(self):
        if self.x.ids != self.y.ids:
            raise IdMismatchError(_describe_id_mismatch(self.x.ids, self.y.ids))

    @property
    def n(self) -> int:
        return self.x.n

    @property
    def ids(self) -> tuple[str, ...]:
        return self.x.ids


def _describe_id_mismatch(a: tuple[str, ...], b: tuple[str, ...]) -> str:
    if len(a) != len(b):
        return f"clouds hold {len(a)} vs {len(b)} items"
    pos = next(i for i, (u, v) in enumerate(zip(a, b)) if u != v)
    return f"ids disagree at position {pos}: {a[pos]!r} vs {b[pos]!r}"


@dataclass(frozen=True)
class Metric:
    """Distance used to rank neighbors: cosine or Minkowski of a given order."""

    kind: str
    order: float = 2.0

    def __post_init__(self):
        if self.kind not in ("cosine", "minkowski"):
            raise ValueError(f"unknown metric kind {self.kind!r}")
        if self.kind == "minkowski" and not self.order >= 1.0:
            raise ValueError(f"minkowski order must be >= 1, got {self.order}")

    @classmethod
    def cosine(cls) -> "Metric":
        return cls("cosine")

    @classmethod
    def minkowski(cls, order: float = 2.0) -> "Metric":
        return cls("minkowski", float(order))

    @classmethod
    def parse(cls, text: str) -> "Metric":
        """Parse "cosine", "minkowski", or "minkowski:<order>"."""
        name, _, arg = text.strip().partition(":")
        if name == "cosine":
            if arg:
                raise ValueError("cosine takes no parameter")
            return cls.cosine()
        if name == "minkowski":
            return cls.minkowski(float(arg) if arg else 2.0)
        raise ValueError(f"unknown metric {text!r}")

    def __str__(self) -> str:
        if self.kind == "cosine":
            return "cosine"
        return f"minkowski:{self.order:g}"


def derive_seed(seed: int, *stream: int | str) -> int:
    """Deterministic 64-bit child seed for a (seed, stream-label...) path.

    Every randomized operation in a sweep gets its own derived seed, so
    results do not depend on execution order or worker count.
    """
    h = hashlib.sha256()
    h.update((seed & _MASK64).to_bytes(8, "little"))
    for part in stream:
        if isinstance(part, (bool, np.integer)):
            part = int(part)
        if isinstance(part, int):
            h.update(b"i" + (part & _MASK64).to_bytes(8, "little"))
        elif isinstance(part, str):
            h.update(b"s" + part.encode("utf-8") + b"\x00")
        else:
            raise TypeError(f"stream labels must be int or str, got {type(part).__name__}")
    return int.from_bytes(h.digest()[:8], "little")


def rng_from_seed(seed: int) -> np.random.Generator:
    """Generator seeded with the low 64 bits of `seed`."""
    return np.random.default_rng(seed & _MASK64)


def validate_paired(x: PointCloud, y: PointCloud) -> PairedClouds:
    """Pair two clouds that must already share ids in identical order."""
    return PairedClouds(x, y)


def align_by_intersection(x: PointCloud, y: PointCloud) -> PairedClouds:
    """Restrict both clouds to their shared ids, sorted lexicographically.

    Dropped-item counts are logged; at least two shared ids are required.
    """
    shared = sorted(set(x.ids) & set(y.ids))
    if len(shared) < 2:
        raise EmptyIntersectionError(
            f"need at least 2 shared ids to align, found {len(shared)}"
        )
    dropped_x = x.n - len(shared)
    dropped_y = y.n - len(shared)
    if dropped_x or dropped_y:
        logger.info(
            "alignment kept %d shared ids, dropped %d from x and %d from y",
            len(shared), dropped_x, dropped_y,
        )
    x_rows = x.id_to_row
    y_rows = y.id_to_row
    return PairedClouds(
        x.take([x_rows[item] for item in shared]),
        y.take([y_rows[item] for item in shared]),
    )
