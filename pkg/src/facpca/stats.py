"""Descriptive statistics, standardization and correlation matrices.

All variance-like quantities use the biased estimator (divisor ``m``, the
number of observations).  With tens of thousands of rows the difference
from the unbiased form is negligible, and the biased form keeps the
identity ``variance(standardized column) == 1`` exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, DegenerateColumnError, SizeError

__all__ = [
    "DataMatrix",
    "VariableStats",
    "CorrelationMatrix",
    "summarize",
    "standardize",
    "correlation",
    "correlation_matrix",
    "determination_matrix",
]


@dataclass(frozen=True)
class DataMatrix:
    """An m x n block of observations with one label per column.

    Rows are observations, columns are variables.  The array is copied and
    frozen on construction, so instances can be shared across threads.
    """

    values: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        if values.ndim != 2:
            raise DataError("data must be a two-dimensional matrix")
        m, n = values.shape
        if m < 2 or n < 1:
            raise SizeError(f"need at least 2 rows and 1 column, got {m}x{n}")
        if not np.all(np.isfinite(values)):
            raise DataError("data contains non-finite values")
        labels = tuple(str(label) for label in self.labels)
        if len(labels) != n:
            raise DataError(f"got {len(labels)} labels for {n} columns")
        if len(set(labels)) != n:
            raise DataError("column labels must be distinct")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", labels)

    @property
    def n_observations(self) -> int:
        return self.values.shape[0]

    @property
    def n_variables(self) -> int:
        return self.values.shape[1]

    def column(self, index: int) -> np.ndarray:
        return self.values[:, index]


@dataclass(frozen=True)
class VariableStats:
    """Location and dispersion summary of a single column."""

    mean: float
    median: float
    mode: float
    std_dev: float
    minimum: float
    maximum: float


@dataclass(frozen=True)
class CorrelationMatrix:
    """Symmetric matrix of Pearson correlations with a unit diagonal."""

    entries: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DataError("correlation matrix must be square")
        n = entries.shape[0]
        labels = tuple(str(label) for label in self.labels)
        if len(labels) != n or len(set(labels)) != n:
            raise DataError("need one distinct label per variable")
        if np.max(np.abs(entries - entries.T), initial=0.0) > 1e-12:
            raise DataError("correlation matrix is not symmetric")
        if not np.all(np.diag(entries) == 1.0):
            raise DataError("correlation matrix diagonal must be exactly 1")
        if np.any(np.abs(entries) > 1.0):
            raise DataError("correlation entries must lie in [-1, 1]")
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return self.entries.shape[0]


def _as_column(values, name: str = "input") -> np.ndarray:
    x = np.asarray(values, dtype=float)
    if x.ndim != 1:
        raise SizeError(f"{name} must be one-dimensional")
    if x.size < 2:
        raise SizeError(f"{name} needs at least 2 observations, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise DataError(f"{name} contains non-finite values")
    return x


def summarize(column) -> VariableStats:
    """Summarize one column: mean, median, mode, biased std dev, min, max.

    The mode is the most frequent exact value; ties are broken towards the
    smallest value.  The median of an even-length column is the midpoint of
    the two central values.
    """
    x = _as_column(column, "column")
    mean = float(x.mean())
    std_dev = float(np.sqrt(np.mean((x - mean) ** 2)))
    uniques, counts = np.unique(x, return_counts=True)
    mode = float(uniques[np.argmax(counts)])
    return VariableStats(
        mean=mean,
        median=float(np.median(x)),
        mode=mode,
        std_dev=std_dev,
        minimum=float(x.min()),
        maximum=float(x.max()),
    )


def _centered_columns(data: DataMatrix) -> np.ndarray:
    centered = data.values - data.values.mean(axis=0)
    # second centering pass kills the rounding residue left by large offsets
    centered -= centered.mean(axis=0)
    return centered


def standardize(data: DataMatrix) -> DataMatrix:
    """Shift each column to mean 0 and scale to biased standard deviation 1."""
    centered = _centered_columns(data)
    stds = np.sqrt(np.mean(centered**2, axis=0))
    for label, s in zip(data.labels, stds):
        if s == 0.0:
            raise DegenerateColumnError(
                f"column {label!r} is constant and cannot be standardized"
            )
    return DataMatrix(centered / stds, data.labels)


def correlation(a, b) -> float:
    """Pearson correlation of two equally long, nonconstant sequences.

    Computed as the cosine of the angle between the centered vectors, so it
    is exactly symmetric in its arguments and invariant under positive
    affine rescaling of either one.
    """
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    if x.shape != y.shape:
        raise SizeError(f"length mismatch: {x.shape} vs {y.shape}")
    x = _as_column(x, "first input")
    y = _as_column(y, "second input")
    xc = x - x.mean()
    yc = y - y.mean()
    # rescale to O(1) so the squared norms cannot under- or overflow
    sx = float(np.max(np.abs(xc)))
    sy = float(np.max(np.abs(yc)))
    if sx == 0.0:
        raise DegenerateColumnError("first input is constant")
    if sy == 0.0:
        raise DegenerateColumnError("second input is constant")
    xc /= sx
    yc /= sy
    r = float(np.dot(xc, yc)) / math.sqrt(float(np.dot(xc, xc)) * float(np.dot(yc, yc)))
    return min(1.0, max(-1.0, r))


def correlation_matrix(data: DataMatrix) -> CorrelationMatrix:
    """Pearson correlations between all column pairs of a data matrix.

    Each pair is computed once from the centered columns and mirrored, so
    the result is exactly symmetric with a diagonal of exactly 1.
    """
    centered = _centered_columns(data)
    scales = np.max(np.abs(centered), axis=0)
    for label, scale in zip(data.labels, scales):
        if scale == 0.0:
            raise DegenerateColumnError(f"column {label!r} is constant")
    centered = centered / scales
    sumsq = np.sum(centered**2, axis=0)
    n = data.n_variables
    upper = np.zeros((n, n))
    for i in range(n - 1):
        dots = centered[:, i + 1 :].T @ centered[:, i]
        upper[i, i + 1 :] = dots / np.sqrt(sumsq[i] * sumsq[i + 1 :])
    entries = upper + upper.T + np.eye(n)
    np.clip(entries, -1.0, 1.0, out=entries)
    return CorrelationMatrix(entries, data.labels)


def determination_matrix(corr: CorrelationMatrix) -> np.ndarray:
    """Entrywise squares of a correlation matrix (shared-variance levels)."""
    return corr.entries**2
