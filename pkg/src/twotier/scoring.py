"""Performance scores for fitted two-tier trees.

Regression uses the fraction of explained variance, classification the
accuracy normalised against always predicting the most frequent class.
"""

from __future__ import annotations

import numpy as np

from .data import Dataset, SplitPlan
from .errors import DataError, DegenerateTargetError
from .tree import fit_two_tier, predict_many

FLOOR_SCOPES = ("train", "full")


def explained_variance_fraction(y_true, y_pred) -> float:
    """``1 - SSE/SST``; negative when the predictions are worse than the mean."""
    y_true = np.asarray(y_true, dtype=np.float64)
    y_pred = np.asarray(y_pred, dtype=np.float64)
    if y_true.shape != y_pred.shape or y_true.ndim != 1:
        raise DataError(f"shape mismatch: {y_true.shape} vs {y_pred.shape}")
    if y_true.size < 2:
        raise DegenerateTargetError("explained variance needs at least 2 values")
    if y_true.min() == y_true.max():
        raise DegenerateTargetError("explained variance is undefined for a constant target")
    resid = y_true - y_pred
    dev = y_true - y_true.mean()
    sse = float(np.dot(resid, resid))
    sst = float(np.dot(dev, dev))
    if sse == sst:
        return 0.0
    return 1.0 - sse / sst


def normalized_accuracy_floor(y) -> float:
    """Accuracy of always predicting the most frequent label.

    For two classes this is ``max(M, N - M) / N``.
    """
    y = np.asarray(y)
    if y.size == 0:
        raise DegenerateTargetError("no labels")
    _, counts = np.unique(y, return_counts=True)
    if counts.size < 2:
        raise DegenerateTargetError("accuracy floor is undefined for a single-class target")
    return float(counts.max()) / float(y.size)


def normalized_accuracy(a: float, floor: float) -> float:
    """Map accuracy ``a`` to ``(a - floor) / (1 - floor)``: 0 at the floor, 1 when perfect."""
    if not 0.0 < floor < 1.0:
        raise DegenerateTargetError(f"accuracy floor must lie in (0, 1), got {floor}")
    if a == floor:
        return 0.0
    if a == 1.0:
        return 1.0
    return (a - floor) / (1.0 - floor)


def score_subset(d: Dataset, split: SplitPlan, subset, floor_scope: str = "train",
                 backend=None) -> float:
    """Fit on the training part using ``subset`` and score on the test part.

    ``floor_scope`` picks the targets the classification floor is computed
    from: the training rows ("train") or the whole dataset ("full").
    """
    if floor_scope not in FLOOR_SCOPES:
        raise ValueError(f"floor_scope must be one of {FLOOR_SCOPES}, got {floor_scope!r}")
    tree = fit_two_tier(d, split.train_indices, subset, backend=backend)
    test = split.test_indices
    pred = predict_many(tree, d.features[test])
    if not d.is_classification:
        return explained_variance_fraction(d.target[test], pred)
    scope = d.target[split.train_indices] if floor_scope == "train" else d.target
    floor = normalized_accuracy_floor(scope)
    acc = float(np.count_nonzero(pred == d.target[test])) / test.size
    return normalized_accuracy(acc, floor)


def full_data_score(d: Dataset, subset, backend=None) -> float:
    """Score of a tree trained and evaluated on every row (no hold-out)."""
    rows = np.arange(d.n_samples, dtype=np.intp)
    return score_subset(d, SplitPlan(rows, rows, -1), subset, floor_scope="full",
                        backend=backend)
