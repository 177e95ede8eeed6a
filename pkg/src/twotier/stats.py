"""Rank correlation, medians and per-dataset summaries of triple scans."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats as sps

from .errors import DataError


def average_ranks(values) -> np.ndarray:
    """1-based ranks; tied values share the mean of the ranks they span."""
    x = np.asarray(values, dtype=np.float64)
    order = np.argsort(x, kind="stable")
    xs = x[order]
    ranks = np.empty(x.size, dtype=np.float64)
    start = 0
    for end in range(1, x.size + 1):
        if end == x.size or xs[end] != xs[start]:
            ranks[order[start:end]] = (start + end + 1) / 2.0
            start = end
    return ranks


def spearman(xs, ys) -> tuple[float, float]:
    """Spearman's rho and its two-sided p-value.

    The p-value uses ``t = rho * sqrt((n - 2) / (1 - rho**2))`` with ``n - 2``
    degrees of freedom.
    """
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise DataError(f"shape mismatch: {x.shape} vs {y.shape}")
    n = x.size
    if n < 3:
        raise DataError(f"rank correlation needs at least 3 pairs, got {n}")
    if x.min() == x.max() or y.min() == y.max():
        raise DataError("rank correlation is undefined for a constant input")
    rx = average_ranks(x) - (n + 1) / 2.0
    ry = average_ranks(y) - (n + 1) / 2.0
    rho = float(np.dot(rx, ry) / math.sqrt(np.dot(rx, rx) * np.dot(ry, ry)))
    rho = max(-1.0, min(1.0, rho))
    if abs(rho) == 1.0:
        return rho, 0.0
    t = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    return rho, float(2.0 * sps.t.sf(abs(t), n - 2))


def median(values) -> float:
    v = sorted(float(x) for x in values)
    if not v:
        raise DataError("median of an empty sequence")
    mid = len(v) // 2
    return v[mid] if len(v) % 2 else (v[mid - 1] + v[mid]) / 2.0


@dataclass(frozen=True)
class DatasetSummary:
    triple_count: int
    s_min: float
    s_median: float
    s_max: float
    t_median: float
    rho: float | None = None
    p_value: float | None = None
    flagged_count: int = 0


def summarize(records: Sequence) -> DatasetSummary:
    """Aggregate triple records of one dataset (or several, pooled).

    Flagged records (no coefficient) count towards the total but are left out
    of every statistic. rho and p are None below 3 usable records or when one
    of the two columns is constant.
    """
    if not records:
        raise DataError("cannot summarise an empty record list")
    usable = [r for r in records if not r.flagged]
    flagged = len(records) - len(usable)
    if not usable:
        nan = math.nan
        return DatasetSummary(len(records), nan, nan, nan, nan, None, None, flagged)
    s = [r.s_cv for r in usable]
    t = [r.ci_inter.mean for r in usable]
    rho = p = None
    if len(usable) >= 3 and min(s) != max(s) and min(t) != max(t):
        rho, p = spearman(t, s)
    return DatasetSummary(len(records), min(s), median(s), max(s), median(t), rho, p, flagged)
