import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from twotier import (DataError, Dataset, Task, best_split, fit_two_tier, predict, predict_many,
                     render)
from twotier.tree import Internal, Leaf


def _reg(X, y):
    X = np.asarray(X, float)
    if X.ndim == 1:
        X = X[:, None]
    return Dataset(tuple(f"x{i}" for i in range(X.shape[1])), X, y, Task.REGRESSION)


def test_best_split_step_function(backend):
    # brute force over the 3 candidates: gains 8.33, 25.0, 8.33
    d = _reg([0, 1, 2, 3], [0, 0, 10, 10])
    s = best_split(range(4), d, [0], backend=backend)
    assert (s.feature_index, s.threshold) == (0, 1.5)
    assert s.gain == pytest.approx(25.0)


def test_best_split_constant_target_is_none(backend):
    d = _reg([0, 1, 2, 3], [5.0] * 4)
    assert best_split(range(4), d, [0], backend=backend) is None


def test_best_split_constant_feature_is_none(backend):
    d = _reg([1, 1, 1, 1], [0, 1, 2, 3])
    assert best_split(range(4), d, [0], backend=backend) is None


def test_synthetic_root_tie_goes_to_lowest_feature(synth, backend):
    # f1@0.5 and f2@0.5 both reduce variance by exactly 0
    s = best_split(range(20), synth, [0, 1], backend=backend)
    assert (s.feature_index, s.threshold, s.gain) == (0, 0.5, 0.0)


def test_synthetic_root_with_s(synth, backend):
    s = best_split(range(20), synth, [0, 1, 2], backend=backend)
    assert (s.feature_index, s.threshold) == (2, 10.5)
    assert s.gain == pytest.approx(24.0)


def test_fit_pair_recovers_xor(synth):
    t = fit_two_tier(synth, range(20), [0, 1])
    assert t.root.split.feature_index == 0 and t.root.split.threshold == 0.5
    for child in (t.root.left, t.root.right):
        assert isinstance(child, Internal)
        assert (child.split.feature_index, child.split.threshold) == (1, 0.5)
    assert t.root.left.left.prediction == 92.0
    assert t.root.left.right.prediction == 12.0
    assert t.root.right.left.prediction == 12.0
    assert t.root.right.right.prediction == 92.0


def test_fit_triple_uses_only_s(synth):
    t = fit_two_tier(synth, range(20), [0, 1, 2])
    assert {s.feature_index for s in t.splits()} == {2}
    assert t.depth() == 2


def test_predict_synthetic_pair(synth):
    t = fit_two_tier(synth, range(20), [0, 1])
    # mean of rows 0, 4, 8, 12, 16
    assert predict(t, [0.0, 0.0, 0.0]) == 92.0
    assert predict(t, [0.0, 1.0, 99.0]) == 12.0


def test_threshold_value_goes_left(synth):
    t = fit_two_tier(synth, range(20), [0, 1])
    assert predict(t, [0.5, 0.5, 0]) == t.root.left.left.prediction


def test_constant_target_single_leaf():
    d = _reg([[0, 1], [1, 2], [2, 3]], [7.0, 7.0, 7.0])
    t = fit_two_tier(d, range(3), [0, 1])
    assert t.root == Leaf(7.0, 3)
    assert predict(t, [100, -100]) == 7.0


def test_single_feature_reused_at_both_tiers():
    d = _reg([0, 1, 2, 3, 4, 5, 6, 7], [0, 0, 5, 5, 9, 9, 20, 20])
    t = fit_two_tier(d, range(8), [0])
    assert t.depth() == 2
    assert {s.feature_index for s in t.splits()} == {0}


def test_fit_errors(synth):
    with pytest.raises(DataError, match="empty"):
        fit_two_tier(synth, range(20), [])
    with pytest.raises(DataError, match="empty"):
        fit_two_tier(synth, [], [0])
    with pytest.raises(DataError, match="out of range"):
        fit_two_tier(synth, range(20), [5])


def test_classification_majority_and_tie():
    d = Dataset(("a",), [[0], [0], [0], [1], [1], [1], [1]], [2, 2, 1, 1, 1, 2, 2],
                Task.CLASSIFICATION)
    t = fit_two_tier(d, [0, 1, 2], [0])
    assert t.root == Leaf(2, 3)
    tie = fit_two_tier(d, [3, 4, 5, 6], [0])
    # feature is constant on these rows; labels 1 and 2 tie, smaller wins
    assert tie.root == Leaf(1, 4)


def test_predict_many_matches_predict(synth):
    t = fit_two_tier(synth, range(0, 20, 2), [0, 2])
    X = synth.features
    assert predict_many(t, X).tolist() == [predict(t, r) for r in X]


def test_render(synth):
    text = render(fit_two_tier(synth, range(20), [0, 1]))
    assert text.splitlines()[0] == "f1 <= 0.5"
    assert "    f2 <= 0.5" in text
    assert "leaf: value = 92 (n = 5)" in text


def _check_against_oracle(d, tree, train):
    X, y = d.features, d.target
    cls = d.is_classification

    def walk(node, rows, depth):
        best = oracles.best_decrease(X, y, rows, tree.feature_subset, cls)
        pure = np.unique(y[rows]).size == 1
        if isinstance(node, Leaf):
            assert depth == 2 or rows.size < 2 or pure or best is None
            return
        s = node.split
        assert s.feature_index in tree.feature_subset
        vals = X[rows, s.feature_index]
        assert vals.min() <= s.threshold < vals.max()
        mine = [c for c in oracles.enumerate_splits(X, y, rows, [s.feature_index], cls)
                if c[1] == s.threshold]
        assert len(mine) == 1
        assert mine[0][2] == pytest.approx(best, rel=1e-9, abs=1e-12)
        assert mine[0][2] >= -1e-12
        left = vals <= s.threshold
        walk(node.left, rows[left], depth + 1)
        walk(node.right, rows[~left], depth + 1)

    walk(tree.root, np.sort(np.asarray(train)), 0)


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 2**31), cls=st.booleans())
def test_greedy_matches_brute_force(seed, cls):
    rng = np.random.default_rng(seed)
    X, y = oracles.random_dataset(rng, cls)
    d = Dataset(tuple(f"x{i}" for i in range(X.shape[1])), X, y,
                Task.CLASSIFICATION if cls else Task.REGRESSION)
    subset = sorted(rng.choice(d.n_features, size=rng.integers(1, d.n_features + 1),
                               replace=False).tolist())
    train = rng.choice(d.n_samples, size=rng.integers(2, d.n_samples + 1), replace=False)
    t = fit_two_tier(d, train, subset)
    assert t.depth() <= 2
    _check_against_oracle(d, t, train)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31), cls=st.booleans())
def test_backends_agree_bitwise(seed, cls):
    from conftest import BACKENDS
    if len(BACKENDS) < 2:
        pytest.skip("compiled kernel not built")
    rng = np.random.default_rng(seed)
    X, y = oracles.random_dataset(rng, cls, n_max=60)
    d = Dataset(tuple(f"x{i}" for i in range(X.shape[1])), X, y,
                Task.CLASSIFICATION if cls else Task.REGRESSION)
    rows = np.sort(rng.choice(d.n_samples, size=rng.integers(1, d.n_samples + 1),
                              replace=False))
    feats = list(range(d.n_features))
    a, b = (best_split(rows, d, feats, backend=p.values[0]) for p in BACKENDS)
    assert a == b


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31), cls=st.booleans())
def test_row_order_does_not_matter(seed, cls):
    rng = np.random.default_rng(seed)
    X, y = oracles.random_dataset(rng, cls)
    d = Dataset(tuple(f"x{i}" for i in range(X.shape[1])), X, y,
                Task.CLASSIFICATION if cls else Task.REGRESSION)
    train = np.arange(d.n_samples)
    feats = range(d.n_features)
    assert fit_two_tier(d, train, feats) == fit_two_tier(d, rng.permutation(train), feats)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_root_split_never_increases_impurity(seed):
    rng = np.random.default_rng(seed)
    X, y = oracles.random_dataset(rng, False)
    d = _reg(X, y)
    s = best_split(range(d.n_samples), d, range(d.n_features))
    if s is not None:
        left = X[:, s.feature_index] <= s.threshold
        n = d.n_samples
        after = left.sum() / n * np.var(y[left]) + (~left).sum() / n * np.var(y[~left])
        assert after <= np.var(y) + 1e-12
