"""Exception types raised by this package.

Everything derives from :class:`NNGSError`, so callers (and the CLI) can
treat "bad input" uniformly while still catching precise conditions.
"""


class NNGSError(Exception):
    """Base class for all errors raised by this package."""


class ParseWarning(UserWarning):
    """Recoverable problem in an input file (line skipped or deduplicated)."""


# --- point cloud construction and pairing ---------------------------------

class InvalidShapeError(NNGSError):
    """Data array has the wrong number of axes or an empty axis."""


class TooFewPointsError(NNGSError):
    """A point cloud needs at least two points."""


class NonFiniteCoordinateError(NNGSError):
    """NaN or infinite coordinate in a point cloud."""


class DuplicateIdError(NNGSError):
    """Item identifiers within one cloud must be unique."""


class IdMismatchError(NNGSError):
    """Two clouds do not share the same ids in the same order."""


class EmptyIntersectionError(NNGSError):
    """Fewer than two ids are shared between two clouds."""


# --- metrics and neighborhoods ---------------------------------------------

class ZeroVectorError(NNGSError):
    """Cosine distance is undefined for zero vectors."""


class KOutOfRangeError(NNGSError):
    """Neighborhood size k must satisfy 1 <= k <= n - 1."""


class COutOfRangeError(NNGSError):
    """Relative neighborhood size must satisfy 0 < c <= 1."""


# --- kernels ----------------------------------------------------------------

class DegenerateKernelError(NNGSError):
    """Centered kernel matrix has zero norm (e.g. all points identical)."""


# --- synthetic generators ----------------------------------------------------

class BlobShapeMismatchError(NNGSError):
    """Per-blob parameter lists of a blob spec differ in length."""


# --- task evaluation ----------------------------------------------------------

class NoCategoriesError(NNGSError):
    """Analogy file contains no category headers."""


class EmptyFileError(NNGSError):
    """Input file holds no usable content."""


class EmptyVocabularyError(NNGSError):
    """Cannot evaluate analogies against an empty vocabulary."""


class TooFewPairsError(NNGSError):
    """Not enough usable word pairs to form task point clouds."""


class EmptyClassError(NNGSError):
    """A class label with no member items."""


class MissingClassTextError(NNGSError):
    """Text embeddings do not cover every image class."""


class DegenerateVarianceError(NNGSError):
    """Correlation is undefined when one side has zero variance."""


class TooFewSamplesError(NNGSError):
    """Correlation needs at least three (x, y) pairs."""


class LengthMismatchError(NNGSError):
    """Paired sequences differ in length."""


# --- file formats --------------------------------------------------------------

class MissingColumnError(NNGSError):
    """A required CSV column is absent."""


class UnparsableFloatError(NNGSError):
    """A coordinate field could not be parsed as a decimal float."""


class InconsistentDimensionError(NNGSError):
    """Embedding rows disagree on dimensionality."""
