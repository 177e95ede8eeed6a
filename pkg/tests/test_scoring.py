import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from twotier import (Dataset, DegenerateTargetError, SplitPlan, Task, explained_variance_fraction,
                     normalized_accuracy, normalized_accuracy_floor, score_subset)
from twotier.scoring import full_data_score

finite = st.floats(-1e3, 1e3, allow_nan=False)


def test_explained_variance_identities():
    y = np.array([1.0, 4.0, 2.0, 8.0])
    assert explained_variance_fraction(y, y) == 1.0
    assert explained_variance_fraction(y, np.full(4, y.mean())) == 0.0


def test_explained_variance_by_hand():
    # SSE = 1 + 1 = 2, SST = 2 * 4 = 8
    assert explained_variance_fraction([0.0, 4.0], [1.0, 3.0]) == pytest.approx(0.75)
    assert explained_variance_fraction([0.0, 4.0], [4.0, 0.0]) == pytest.approx(-3.0)


def test_explained_variance_constant_target():
    with pytest.raises(DegenerateTargetError):
        explained_variance_fraction([3.0, 3.0, 3.0], [1.0, 2.0, 3.0])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(finite, finite), min_size=2, max_size=30), finite,
       st.floats(0.1, 100))
def test_explained_variance_shift_and_scale(pairs, shift, scale):
    y, p = map(np.array, zip(*pairs))
    assume(np.ptp(y) > 1e-3)
    base = explained_variance_fraction(y, p)
    assert explained_variance_fraction(y + shift, p + shift) == pytest.approx(base, rel=1e-6,
                                                                              abs=1e-6)
    assert explained_variance_fraction(y * scale, p * scale) == pytest.approx(base, rel=1e-9,
                                                                              abs=1e-9)


@pytest.mark.parametrize("m, n, expected", [(7, 10, 0.7), (5, 10, 0.5), (1, 4, 0.75)])
def test_accuracy_floor(m, n, expected):
    y = [0] * m + [1] * (n - m)
    assert normalized_accuracy_floor(y) == expected


def test_accuracy_floor_multiclass():
    assert normalized_accuracy_floor([0, 0, 1, 2, 2, 2]) == 0.5


def test_accuracy_floor_single_class():
    with pytest.raises(DegenerateTargetError):
        normalized_accuracy_floor([1, 1, 1])


def test_normalized_accuracy():
    assert normalized_accuracy(0.7, 0.7) == 0.0
    assert normalized_accuracy(1.0, 0.7) == 1.0
    assert normalized_accuracy(0.85, 0.7) == pytest.approx(0.5)
    assert normalized_accuracy(0.4, 0.7) == pytest.approx(-1.0)
    with pytest.raises(DegenerateTargetError):
        normalized_accuracy(0.9, 1.0)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.5, 0.999), st.floats(0, 1), st.floats(0, 1))
def test_normalized_accuracy_monotone(floor, a, b):
    assume(b - a > 1e-12)
    assert normalized_accuracy(a, floor) < normalized_accuracy(b, floor)
    assert normalized_accuracy(floor, floor) == 0.0
    assert normalized_accuracy(1.0, floor) == 1.0


def test_score_subset_full_data_synthetic(synth):
    rows = np.arange(20)
    plan = SplitPlan(rows, rows, 0)
    assert score_subset(synth, plan, [0, 1, 2]) == pytest.approx(0.0186, abs=5e-5)
    assert score_subset(synth, plan, [0, 1]) == pytest.approx(0.9804, abs=5e-5)
    assert full_data_score(synth, [0]) == 0.0
    assert full_data_score(synth, [1]) == 0.0


def test_score_subset_constant_test_target(synth):
    plan = SplitPlan(np.arange(1, 20), np.array([0, 3]), 0)  # both targets 100
    with pytest.raises(DegenerateTargetError):
        score_subset(synth, plan, [0])


def test_score_subset_majority_only_classifier_scores_zero():
    X = np.zeros((10, 1))
    y = [0] * 7 + [1] * 3
    d = Dataset(("a",), X, y, Task.CLASSIFICATION)
    rows = np.arange(10)
    assert score_subset(d, SplitPlan(rows, rows, 0), [0]) == 0.0


def test_floor_scope_switch():
    # constant feature: the tree predicts the training majority (0) everywhere;
    # floor is 4/6 on the training rows and 7/12 on all rows
    X = np.zeros((12, 1))
    y = [0, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1, 1]
    d = Dataset(("a",), X, y, Task.CLASSIFICATION)
    plan = SplitPlan(np.arange(6), np.arange(6, 12), 0)
    train_floor = score_subset(d, plan, [0], floor_scope="train")
    full_floor = score_subset(d, plan, [0], floor_scope="full")
    assert train_floor == pytest.approx((1 / 6 - 4 / 6) / (1 - 4 / 6))
    assert full_floor == pytest.approx((1 / 6 - 7 / 12) / (1 - 7 / 12))
    with pytest.raises(ValueError):
        score_subset(d, plan, [0], floor_scope="other")


def test_score_subset_deterministic(synth):
    plan = SplitPlan(np.arange(0, 20, 2), np.arange(1, 20, 2), 3)
    assert score_subset(synth, plan, [0, 2]) == score_subset(synth, plan, [0, 2])


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_training_score_in_unit_interval(seed):
    rng = np.random.default_rng(seed)
    n, k = int(rng.integers(4, 30)), int(rng.integers(1, 4))
    X = rng.integers(0, 5, size=(n, k)).astype(float)
    y = rng.normal(size=n)
    d = Dataset(tuple("abcd"[:k]), X, y, Task.REGRESSION)
    s = full_data_score(d, range(k))
    assert -1e-12 <= s <= 1.0 + 1e-12
