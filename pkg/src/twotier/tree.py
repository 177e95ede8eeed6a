"""Greedy depth-2 CART for regression (variance) and classification (Gini).

Split candidates are the midpoints between consecutive distinct values of a
feature on the node's rows. Among candidates whose impurity decrease is within
a relative 1e-10 of the best, the lowest feature index wins, then the lowest
threshold. A node becomes a leaf when its targets are constant, it holds fewer
than two rows, or none of its allowed features varies. A best split with zero
gain is still taken: XOR-like pairs only show their value at the second tier.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from . import kernels
from .data import Dataset
from .errors import DataError

MAX_DEPTH = 2


@dataclass(frozen=True)
class Split:
    feature_index: int
    threshold: float
    gain: float = 0.0  # weighted impurity decrease, per sample of the node

    def goes_left(self, value: float) -> bool:
        return value <= self.threshold


@dataclass(frozen=True)
class Leaf:
    prediction: float | int
    n_samples: int


@dataclass(frozen=True)
class Internal:
    split: Split
    left: "Node"
    right: "Node"


Node = Union[Leaf, Internal]


@dataclass(frozen=True)
class TwoTierTree:
    root: Node
    feature_subset: tuple[int, ...]
    feature_names: tuple[str, ...] = ()

    def depth(self) -> int:
        def walk(node):
            return 0 if isinstance(node, Leaf) else 1 + max(walk(node.left), walk(node.right))
        return walk(self.root)

    def splits(self) -> list[Split]:
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, Internal):
                out.append(node.split)
                stack.extend((node.right, node.left))
        return out


def _canonical_subset(d: Dataset, subset: Iterable[int]) -> np.ndarray:
    feats = np.unique(np.asarray(list(subset), dtype=np.intp))
    if feats.size == 0:
        raise DataError("feature subset is empty")
    if feats[0] < 0 or feats[-1] >= d.n_features:
        raise DataError(f"feature index out of range 0..{d.n_features - 1}: {feats.tolist()}")
    return feats


def best_split(rows, d: Dataset, allowed, backend=None) -> Split | None:
    """Best impurity-decreasing split of ``rows`` over the ``allowed`` features.

    Returns None when the node's targets are constant or no allowed feature
    takes two distinct values on ``rows``.
    """
    rows = np.ascontiguousarray(rows, dtype=np.intp)
    if rows.size == 0:
        raise DataError("cannot split an empty node")
    return _best_split(rows, d, _canonical_subset(d, allowed), backend or kernels.backend)


def _best_split(rows: np.ndarray, d: Dataset, feats: np.ndarray, k) -> Split | None:
    if d.is_classification:
        f, thr, gain = k.best_split_classification(
            d.features, d.codes, len(d.classes), rows, feats, d.feature_order)
    else:
        f, thr, gain = k.best_split_regression(
            d.features, d.target, rows, feats, d.feature_order)
    if f < 0:
        return None
    return Split(int(f), float(thr), float(gain))


def _leaf(d: Dataset, rows: np.ndarray) -> Leaf:
    if d.is_classification:
        counts = np.bincount(d.codes[rows], minlength=len(d.classes))
        # argmax returns the first maximum, i.e. the smallest label on ties
        return Leaf(int(d.classes[int(np.argmax(counts))]), int(rows.size))
    return Leaf(float(d.target[rows].sum() / rows.size), int(rows.size))


def fit_two_tier(d: Dataset, train, subset, backend=None) -> TwoTierTree:
    """Grow a depth-2 tree greedily on the ``train`` rows using only ``subset``.

    Training rows are sorted first, so the fitted tree does not depend on the
    order in which they are given.
    """
    feats = _canonical_subset(d, subset)
    rows = np.sort(np.asarray(train, dtype=np.intp))
    if rows.size == 0:
        raise DataError("training set is empty")
    k = backend or kernels.backend

    def grow(node_rows: np.ndarray, depth: int) -> Node:
        if depth < MAX_DEPTH and node_rows.size >= 2:
            split = _best_split(node_rows, d, feats, k)
            if split is not None:
                left = d.features[node_rows, split.feature_index] <= split.threshold
                return Internal(split, grow(node_rows[left], depth + 1),
                                grow(node_rows[~left], depth + 1))
        return _leaf(d, node_rows)

    return TwoTierTree(grow(rows, 0), tuple(int(f) for f in feats), d.feature_names)


def predict(t: TwoTierTree, row) -> float | int:
    """Route one feature vector to its leaf and return the leaf's prediction."""
    node = t.root
    while isinstance(node, Internal):
        node = node.left if row[node.split.feature_index] <= node.split.threshold else node.right
    return node.prediction


def predict_many(t: TwoTierTree, X: np.ndarray) -> np.ndarray:
    """Vectorised :func:`predict` over the rows of ``X``."""
    X = np.asarray(X, dtype=np.float64)
    leaves = [n for n in _leaves(t.root)]
    integral = all(isinstance(n.prediction, int) for n in leaves)
    out = np.empty(X.shape[0], dtype=np.int64 if integral else np.float64)

    def route(node, idx):
        if isinstance(node, Leaf):
            out[idx] = node.prediction
            return
        left = X[idx, node.split.feature_index] <= node.split.threshold
        route(node.left, idx[left])
        route(node.right, idx[~left])

    route(t.root, np.arange(X.shape[0]))
    return out


def _leaves(node):
    if isinstance(node, Leaf):
        yield node
    else:
        yield from _leaves(node.left)
        yield from _leaves(node.right)


def render(t: TwoTierTree) -> str:
    """Indented text form, one line per split or leaf."""
    names = t.feature_names
    lines = []

    def name(i):
        return names[i] if i < len(names) else f"x{i}"

    def fmt(v):
        return str(v) if isinstance(v, int) else f"{v:.6g}"

    def walk(node, indent):
        pad = "    " * indent
        if isinstance(node, Leaf):
            lines.append(f"{pad}leaf: value = {fmt(node.prediction)} (n = {node.n_samples})")
            return
        s = node.split
        lines.append(f"{pad}{name(s.feature_index)} <= {s.threshold:.6g}")
        walk(node.left, indent + 1)
        lines.append(f"{pad}{name(s.feature_index)} > {s.threshold:.6g}")
        walk(node.right, indent + 1)

    walk(t.root, 0)
    return "\n".join(lines)
