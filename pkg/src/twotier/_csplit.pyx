# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled best-split search for depth-limited CART.

Mirrors ``twotier._pysplit`` operation for operation so both backends
return the same split (and bit-identical gains) for the same inputs.

``order[f]`` lists all dataset rows sorted by (value of feature f, row);
a node visits its own rows in that order by filtering on membership, which
avoids sorting at every node.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, calloc, free
from libc.math cimport INFINITY

cnp.import_array()


cdef inline double _midpoint(double a, double b) noexcept nogil:
    cdef double t = a / 2.0 + b / 2.0
    if t >= b or t < a:
        t = a
    return t


cdef tuple _select(double* gains, double* thresholds, Py_ssize_t* feats,
                   Py_ssize_t n_cand, double tol):
    cdef Py_ssize_t i
    cdef double best = -INFINITY
    for i in range(n_cand):
        if gains[i] > best:
            best = gains[i]
    for i in range(n_cand):
        if gains[i] >= best - tol:
            return (feats[i], thresholds[i], gains[i])
    return (-1, 0.0, 0.0)


cdef Py_ssize_t _node_sequence(const Py_ssize_t[:, ::1] order, Py_ssize_t f,
                               const char* member, Py_ssize_t* seq) noexcept nogil:
    cdef Py_ssize_t i, r, k = 0
    cdef Py_ssize_t n_all = order.shape[1]
    for i in range(n_all):
        r = order[f, i]
        if member[r]:
            seq[k] = r
            k += 1
    return k


def best_split_regression(const double[:, ::1] X, const double[::1] y,
                          const Py_ssize_t[::1] rows, const Py_ssize_t[::1] features,
                          const Py_ssize_t[:, ::1] order):
    cdef Py_ssize_t n = rows.shape[0]
    cdef Py_ssize_t m = features.shape[0]
    cdef Py_ssize_t n_all = X.shape[0]
    cdef Py_ssize_t i, j, f, r, n_cand = 0
    cdef double total = 0.0, mean, ss = 0.0, ymin, ymax, v, xa, xb
    cdef double s_left, s_tot, s_right, between, n_d = <double> n
    cdef char* member
    cdef Py_ssize_t* seq
    cdef double* yc
    cdef double* gains
    cdef double* thresholds
    cdef Py_ssize_t* feats

    if n < 2:
        return (-1, 0.0, 0.0)
    ymin = y[rows[0]]
    ymax = ymin
    for i in range(n):
        v = y[rows[i]]
        total += v
        if v < ymin:
            ymin = v
        if v > ymax:
            ymax = v
    if ymin == ymax:
        return (-1, 0.0, 0.0)
    mean = total / n_d

    member = <char*> calloc(n_all, sizeof(char))
    seq = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    yc = <double*> malloc(n_all * sizeof(double))
    gains = <double*> malloc(m * (n - 1) * sizeof(double))
    thresholds = <double*> malloc(m * (n - 1) * sizeof(double))
    feats = <Py_ssize_t*> malloc(m * (n - 1) * sizeof(Py_ssize_t))
    if not member or not seq or not yc or not gains or not thresholds or not feats:
        free(member); free(seq); free(yc); free(gains); free(thresholds); free(feats)
        raise MemoryError()
    try:
        for i in range(n):
            r = rows[i]
            member[r] = 1
            yc[r] = y[r] - mean
            ss += yc[r] * yc[r]
        for j in range(m):
            f = features[j]
            _node_sequence(order, f, member, seq)
            s_tot = 0.0
            for i in range(n):
                s_tot += yc[seq[i]]
            s_left = 0.0
            for i in range(n - 1):
                s_left += yc[seq[i]]
                xa = X[seq[i], f]
                xb = X[seq[i + 1], f]
                if xa < xb:
                    s_right = s_tot - s_left
                    between = (s_left * s_left / <double> (i + 1)
                               + s_right * s_right / <double> (n - i - 1)
                               - s_tot * s_tot / n_d)
                    gains[n_cand] = between / n_d
                    thresholds[n_cand] = _midpoint(xa, xb)
                    feats[n_cand] = f
                    n_cand += 1
        return _select(gains, thresholds, feats, n_cand, 1e-10 * (ss / n_d))
    finally:
        free(member); free(seq); free(yc); free(gains); free(thresholds); free(feats)


def best_split_classification(const double[:, ::1] X, const Py_ssize_t[::1] codes,
                              Py_ssize_t n_classes, const Py_ssize_t[::1] rows,
                              const Py_ssize_t[::1] features,
                              const Py_ssize_t[:, ::1] order):
    cdef Py_ssize_t n = rows.shape[0]
    cdef Py_ssize_t m = features.shape[0]
    cdef Py_ssize_t n_all = X.shape[0]
    cdef Py_ssize_t i, j, c, f, n_cand = 0, n_present = 0
    cdef long long sq_tot = 0, sq_left, sq_right, r
    cdef double n_d = <double> n, gini, xa, xb
    cdef char* member
    cdef Py_ssize_t* seq
    cdef long long* tot
    cdef long long* left
    cdef double* gains
    cdef double* thresholds
    cdef Py_ssize_t* feats

    if n < 2:
        return (-1, 0.0, 0.0)
    member = <char*> calloc(n_all, sizeof(char))
    seq = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    tot = <long long*> calloc(n_classes, sizeof(long long))
    left = <long long*> malloc(n_classes * sizeof(long long))
    gains = <double*> malloc(m * (n - 1) * sizeof(double))
    thresholds = <double*> malloc(m * (n - 1) * sizeof(double))
    feats = <Py_ssize_t*> malloc(m * (n - 1) * sizeof(Py_ssize_t))
    if (not member or not seq or not tot or not left or not gains or not thresholds
            or not feats):
        free(member); free(seq); free(tot); free(left)
        free(gains); free(thresholds); free(feats)
        raise MemoryError()
    try:
        for i in range(n):
            member[rows[i]] = 1
            tot[codes[rows[i]]] += 1
        for c in range(n_classes):
            if tot[c] > 0:
                n_present += 1
            sq_tot += tot[c] * tot[c]
        if n_present < 2:
            return (-1, 0.0, 0.0)
        gini = 1.0 - <double> sq_tot / (n_d * n_d)
        for j in range(m):
            f = features[j]
            _node_sequence(order, f, member, seq)
            for c in range(n_classes):
                left[c] = 0
            for i in range(n - 1):
                left[codes[seq[i]]] += 1
                xa = X[seq[i], f]
                xb = X[seq[i + 1], f]
                if xa < xb:
                    sq_left = 0
                    sq_right = 0
                    for c in range(n_classes):
                        sq_left += left[c] * left[c]
                        r = tot[c] - left[c]
                        sq_right += r * r
                    gains[n_cand] = ((<double> sq_left / <double> (i + 1)
                                      + <double> sq_right / <double> (n - i - 1)
                                      - <double> sq_tot / n_d) / n_d)
                    thresholds[n_cand] = _midpoint(xa, xb)
                    feats[n_cand] = f
                    n_cand += 1
        return _select(gains, thresholds, feats, n_cand, 1e-10 * gini)
    finally:
        free(member); free(seq); free(tot); free(left)
        free(gains); free(thresholds); free(feats)
