"""Pure numpy best-split search; the fallback for the compiled ``_csplit``.

Rows of a node are visited in the dataset-wide order ``order[f]`` (sorted by
feature value, then row index), filtered to the node's members. Each step
reproduces the compiled kernel's arithmetic in the same order
(sequential accumulations, identical gain expression), so both backends
pick the same split.
"""

import numpy as np


def _midpoints(lo, hi):
    t = lo / 2.0 + hi / 2.0
    bad = (t >= hi) | (t < lo)
    t[bad] = lo[bad]
    return t


def _select(gains, thresholds, feats, tol):
    if not gains:
        return (-1, 0.0, 0.0)
    gains = np.concatenate(gains)
    if gains.size == 0:
        return (-1, 0.0, 0.0)
    thresholds = np.concatenate(thresholds)
    feats = np.concatenate(feats)
    best = gains.max()
    i = int(np.flatnonzero(gains >= best - tol)[0])
    return (int(feats[i]), float(thresholds[i]), float(gains[i]))


def _node_sequence(order, f, member):
    of = order[f]
    return of[member[of]]


def _membership(n_all, rows):
    member = np.zeros(n_all, dtype=bool)
    member[rows] = True
    return member


def best_split_regression(X, y, rows, features, order):
    n = rows.shape[0]
    if n < 2:
        return (-1, 0.0, 0.0)
    yr = y[rows]
    if yr.min() == yr.max():
        return (-1, 0.0, 0.0)
    mean = np.add.accumulate(yr)[-1] / n
    yc_rows = yr - mean
    ss = np.add.accumulate(yc_rows * yc_rows)[-1]
    yc = np.empty(X.shape[0], dtype=np.float64)
    yc[rows] = yc_rows
    member = _membership(X.shape[0], rows)
    n_left = np.arange(1, n, dtype=np.float64)
    n_right = n - n_left
    gains, thresholds, feats = [], [], []
    for f in features:
        seq = _node_sequence(order, f, member)
        xs = X[seq, f]
        cs = np.add.accumulate(yc[seq])
        s_tot = cs[-1]
        s_left = cs[:-1]
        s_right = s_tot - s_left
        ok = xs[:-1] < xs[1:]
        g = (s_left * s_left / n_left + s_right * s_right / n_right - s_tot * s_tot / n) / n
        gains.append(g[ok])
        thresholds.append(_midpoints(xs[:-1][ok], xs[1:][ok]))
        feats.append(np.full(int(ok.sum()), f, dtype=np.intp))
    return _select(gains, thresholds, feats, 1e-10 * (ss / n))


def best_split_classification(X, codes, n_classes, rows, features, order):
    n = rows.shape[0]
    if n < 2:
        return (-1, 0.0, 0.0)
    cr = codes[rows]
    tot = np.bincount(cr, minlength=n_classes).astype(np.int64)
    if np.count_nonzero(tot) < 2:
        return (-1, 0.0, 0.0)
    sq_tot = int((tot * tot).sum())
    gini = 1.0 - sq_tot / (float(n) * float(n))
    member = _membership(X.shape[0], rows)
    n_left = np.arange(1, n, dtype=np.float64)
    n_right = n - n_left
    gains, thresholds, feats = [], [], []
    for f in features:
        seq = _node_sequence(order, f, member)
        xs = X[seq, f]
        onehot = np.zeros((n, n_classes), dtype=np.int64)
        onehot[np.arange(n), codes[seq]] = 1
        left = np.cumsum(onehot, axis=0)[:-1]
        right = tot - left
        sq_left = (left * left).sum(axis=1).astype(np.float64)
        sq_right = (right * right).sum(axis=1).astype(np.float64)
        ok = xs[:-1] < xs[1:]
        g = (sq_left / n_left + sq_right / n_right - float(sq_tot) / n) / n
        gains.append(g[ok])
        thresholds.append(_midpoints(xs[:-1][ok], xs[1:][ok]))
        feats.append(np.full(int(ok.sum()), f, dtype=np.intp))
    return _select(gains, thresholds, feats, 1e-10 * gini)
