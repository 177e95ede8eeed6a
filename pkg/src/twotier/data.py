"""Datasets, CSV ingestion, the synthetic demonstration table and seeded splits."""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import DataError

DEFAULT_TRAIN_FRACTION = 0.7


class Task(str, enum.Enum):
    REGRESSION = "regression"
    CLASSIFICATION = "classification"


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Dataset:
    """Named numeric feature columns, a target vector and the task kind.

    Arrays are copied on construction and made read-only, so a Dataset can be
    shared freely between threads and worker processes.
    """

    feature_names: tuple[str, ...]
    features: np.ndarray
    target: np.ndarray
    task: Task

    def __post_init__(self):
        names = tuple(str(n) for n in self.feature_names)
        task = Task(self.task)
        X = np.array(self.features, dtype=np.float64, order="C", copy=True)
        if X.ndim != 2:
            raise DataError(f"features must be a 2-D matrix, got shape {X.shape}")
        n, k = X.shape
        if len(names) != k:
            raise DataError(f"{len(names)} feature names for {k} columns")
        if len(set(names)) != k:
            raise DataError(f"feature names are not distinct: {list(names)}")
        if n < 2:
            raise DataError(f"a dataset needs at least 2 rows, got {n}")
        y = np.asarray(self.target)
        if y.shape != (n,):
            raise DataError(f"target has shape {y.shape}, expected ({n},)")
        if task is Task.CLASSIFICATION:
            yf = y.astype(np.float64)
            if not np.all(np.isfinite(yf)) or np.any(yf != np.round(yf)):
                raise DataError("classification targets must be integer labels")
            y = yf.astype(np.int64)
            if np.unique(y).size < 2:
                raise DataError("classification target needs at least 2 distinct labels")
        else:
            y = np.array(y, dtype=np.float64, copy=True)
        object.__setattr__(self, "feature_names", names)
        object.__setattr__(self, "task", task)
        object.__setattr__(self, "features", _readonly(X))
        object.__setattr__(self, "target", _readonly(y))

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def is_classification(self) -> bool:
        return self.task is Task.CLASSIFICATION

    @cached_property
    def classes(self) -> np.ndarray:
        """Sorted distinct labels (classification only)."""
        return _readonly(np.unique(self.target))

    @cached_property
    def codes(self) -> np.ndarray:
        """Target as 0..C-1 indices into ``classes`` (classification only)."""
        return _readonly(np.searchsorted(self.classes, self.target).astype(np.intp))

    @cached_property
    def feature_order(self) -> np.ndarray:
        """(K, N) row indices sorted by each feature's value, ties by row index."""
        order = np.argsort(self.features.T, axis=1, kind="stable").astype(np.intp)
        return _readonly(np.ascontiguousarray(order))

    def index_of(self, name: str) -> int:
        try:
            return self.feature_names.index(name)
        except ValueError:
            raise DataError(f"unknown feature {name!r}; known: {list(self.feature_names)}") from None

    def indices_of(self, names: Sequence[str]) -> tuple[int, ...]:
        return tuple(self.index_of(n) for n in names)

    def take_rows(self, rows) -> "Dataset":
        rows = np.asarray(rows, dtype=np.intp)
        return Dataset(self.feature_names, self.features[rows], self.target[rows], self.task)

    def equals(self, other: "Dataset") -> bool:
        return (
            self.feature_names == other.feature_names
            and self.task == other.task
            and np.array_equal(self.features, other.features)
            and np.array_equal(self.target, other.target)
        )


@dataclass(frozen=True, eq=False)
class SplitPlan:
    """One seeded train/test partition of row indices (both parts sorted)."""

    train_indices: np.ndarray
    test_indices: np.ndarray
    seed: int

    def __eq__(self, other):
        if not isinstance(other, SplitPlan):
            return NotImplemented
        return (
            self.seed == other.seed
            and np.array_equal(self.train_indices, other.train_indices)
            and np.array_equal(self.test_indices, other.test_indices)
        )

    __hash__ = None


# -- CSV ---------------------------------------------------------------------

def _format_value(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def write_csv(d: Dataset, path, target_name: str = "target") -> None:
    """Write ``d`` as a header plus one comma-separated line per row.

    Floats are written with ``repr`` so that :func:`load_csv` reads back the
    exact same values.
    """
    if target_name in d.feature_names:
        raise DataError(f"target name {target_name!r} collides with a feature name")
    lines = [",".join(d.feature_names + (target_name,))]
    for row, y in zip(d.features, d.target):
        lines.append(",".join([_format_value(v) for v in row] + [_format_value(y)]))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_csv(path, target_name: str, task: Task | str = Task.REGRESSION) -> Dataset:
    """Read a plain numeric CSV (header row, ',' separator, no quoting)."""
    path = os.fspath(path)
    with open(path, encoding="utf-8") as fh:
        lines = [ln.rstrip("\r\n") for ln in fh]
    lines = [ln for ln in lines if ln.strip()]
    if not lines:
        raise DataError(f"{path}: empty file")
    header = [h.strip() for h in lines[0].split(",")]
    if target_name not in header:
        raise DataError(f"{path}: target column {target_name!r} not in header {header}")
    t_col = header.index(target_name)
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(header):
            raise DataError(f"{path}:{lineno}: expected {len(header)} cells, got {len(cells)}")
        values = []
        for col, cell in zip(header, cells):
            try:
                values.append(float(cell))
            except ValueError:
                raise DataError(
                    f"{path}:{lineno}: column {col!r} has non-numeric value {cell.strip()!r}"
                ) from None
        rows.append(values)
    if len(rows) < 2:
        raise DataError(f"{path}: need at least 2 data rows, got {len(rows)}")
    m = np.array(rows, dtype=np.float64)
    names = tuple(h for i, h in enumerate(header) if i != t_col)
    X = np.delete(m, t_col, axis=1)
    return Dataset(names, X, m[:, t_col], Task(task))


# -- synthetic demonstration data --------------------------------------------

# Four blocks of (f1, f2) in {0,1}^2; s steps by 7 per block; target drops by 4.
# Matching f1 == f2 gives the high value, mismatching the low one.
_SYNTH_HIGH = (100.0, 96.0, 92.0, 88.0, 84.0)
_SYNTH_LOW = (20.0, 16.0, 12.0, 8.0, 4.0)


def emit_synthetic() -> Dataset:
    """The 20-row, 3-feature regression table with features f1, f2, s."""
    X, y = [], []
    for block in range(5):
        s = 7.0 * block
        for f1, f2 in ((0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)):
            X.append((f1, f2, s))
            y.append(_SYNTH_HIGH[block] if f1 == f2 else _SYNTH_LOW[block])
    return Dataset(("f1", "f2", "s"), np.array(X), np.array(y), Task.REGRESSION)


# -- row filtering and splitting ----------------------------------------------

def filter_rows(d: Dataset, feature: str, lo: float = -math.inf, hi: float = math.inf) -> Dataset:
    """Keep rows where ``lo <= d[feature] < hi``, in their original order."""
    col = d.features[:, d.index_of(feature)]
    keep = np.flatnonzero((col >= lo) & (col < hi))
    if keep.size < 2:
        raise DataError(
            f"filter {lo} <= {feature} < {hi} leaves {keep.size} rows; need at least 2"
        )
    return d.take_rows(keep)


def split_sizes(n: int, train_fraction: float) -> tuple[int, int]:
    if not 0.0 < train_fraction < 1.0:
        raise DataError(f"train_fraction must lie in (0, 1), got {train_fraction}")
    n_train = int(math.floor(train_fraction * n + 0.5))
    if n_train < 1 or n_train > n - 1:
        raise DataError(
            f"train_fraction {train_fraction} on {n} rows gives {n_train} train / "
            f"{n - n_train} test rows; both parts must be non-empty"
        )
    return n_train, n - n_train


def make_split(d: Dataset | int, train_fraction: float = DEFAULT_TRAIN_FRACTION,
               seed: int = 0) -> SplitPlan:
    """Shuffle ``0..N-1`` with Philox4x64 seeded by ``seed`` and cut it.

    The first ``round(train_fraction * N)`` shuffled indices form the
    training part. Philox is a counter-based generator whose stream numpy
    guarantees to be stable across platforms, so a seed always names the
    same partition. ``d`` may be a Dataset or just the row count.
    """
    n = d if isinstance(d, (int, np.integer)) else d.n_samples
    n = int(n)
    if n < 4:
        raise DataError(f"splitting needs at least 4 rows, got {n}")
    n_train, _ = split_sizes(n, train_fraction)
    if seed < 0:
        raise DataError(f"split seeds must be non-negative, got {seed}")
    perm = np.random.Generator(np.random.Philox(int(seed))).permutation(n)
    train = _readonly(np.sort(perm[:n_train]).astype(np.intp))
    test = _readonly(np.sort(perm[n_train:]).astype(np.intp))
    return SplitPlan(train, test, int(seed))
