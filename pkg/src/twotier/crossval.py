"""Paired repeated train/test evaluation and the cross-validated triple scan.

Every feature subset is scored on the same list of seeded splits, so score
``j`` of one subset and score ``j`` of another always come from the same
partition. Per-seed scores are stored in seed order and only then reduced,
which keeps the scan's output independent of how work is scheduled.
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import stats as sps

from .data import DEFAULT_TRAIN_FRACTION, Dataset, SplitPlan, make_split
from .errors import DataError, DegenerateTargetError, NonPositiveDenominatorError
from .interference import is_complementary
from .scoring import full_data_score, score_subset

log = logging.getLogger(__name__)

COMPLEMENTARITY_POLICIES = ("cv", "full")


@dataclass(frozen=True, eq=False)
class ScoreSample:
    subset: tuple[int, ...]
    scores: np.ndarray
    seeds: tuple[int, ...]

    @property
    def mean(self) -> float:
        return float(np.mean(self.scores))


@dataclass(frozen=True)
class MeanCI:
    lo: float
    hi: float
    mean: float

    @classmethod
    def from_bounds(cls, lo: float, hi: float) -> "MeanCI":
        return cls(float(lo), float(hi), (lo + hi) / 2.0)


@dataclass(frozen=True)
class TripleRecord:
    f1: int
    f2: int
    s: int
    ci_inter: MeanCI
    ci_elim: MeanCI
    s_cv_min: float
    s_cv_max: float
    s_cv: float
    flagged: bool = False


def make_seeds(r: int, seed_base: int = 0) -> list[int]:
    """Seeds ``seed_base + 1 .. seed_base + r``."""
    if r < 2:
        raise DataError(f"need at least 2 splits, got {r}")
    return [seed_base + j for j in range(1, r + 1)]


def make_plans(d: Dataset, seeds: Sequence[int],
               train_fraction: float = DEFAULT_TRAIN_FRACTION) -> list[SplitPlan]:
    return [make_split(d, train_fraction, s) for s in seeds]


def _subset_name(d: Dataset, subset) -> str:
    return "{" + ", ".join(d.feature_names[i] for i in subset) + "}"


def _scores_on_plans(d: Dataset, subset: tuple[int, ...], plans: Sequence[SplitPlan],
                     floor_scope: str) -> np.ndarray:
    out = np.empty(len(plans), dtype=np.float64)
    for j, plan in enumerate(plans):
        try:
            out[j] = score_subset(d, plan, subset, floor_scope)
        except DegenerateTargetError as exc:
            raise DegenerateTargetError(
                f"seed {plan.seed}, subset {_subset_name(d, subset)}: {exc}") from exc
    return out


def cv_scores(d: Dataset, subset: Iterable[int], seeds: Sequence[int],
              train_fraction: float = DEFAULT_TRAIN_FRACTION, floor_scope: str = "train",
              plans: Sequence[SplitPlan] | None = None) -> ScoreSample:
    """Test-set scores of ``subset``, one per seed, on seed-determined splits."""
    seeds = [int(s) for s in seeds]
    if len(seeds) < 2:
        raise DataError(f"need at least 2 seeds, got {len(seeds)}")
    subset = tuple(sorted(set(int(i) for i in subset)))
    if plans is None:
        plans = make_plans(d, seeds, train_fraction)
    elif [p.seed for p in plans] != seeds:
        raise ValueError("plans do not match the seed list")
    return ScoreSample(subset, _scores_on_plans(d, subset, plans, floor_scope), tuple(seeds))


def mean_ci(scores, alpha: float = 0.05) -> MeanCI:
    """Two-sided Student-t interval for the mean of ``scores``."""
    x = np.asarray(scores, dtype=np.float64)
    if x.size < 2:
        raise DataError(f"a confidence interval needs at least 2 scores, got {x.size}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if x.min() == x.max():
        c = float(x[0])
        return MeanCI(c, c, c)
    m = float(np.mean(x))
    sd = float(np.std(x, ddof=1))
    half = float(sps.t.ppf(1.0 - alpha / 2.0, x.size - 1)) * sd / math.sqrt(x.size)
    return MeanCI.from_bounds(m - half, m + half)


def s_cv_bounds(ci_elim: MeanCI, ci_inter: MeanCI) -> tuple[float, float, float]:
    """``(S_min, S_max, midpoint)`` of the ratio of the two interval-bounded scores."""
    if not ci_inter.lo > 0:
        raise NonPositiveDenominatorError(
            f"lower bound {ci_inter.lo} of the triple interval is not positive")
    s_min = ci_elim.lo / ci_inter.hi
    s_max = ci_elim.hi / ci_inter.lo
    return s_min, s_max, (s_min + s_max) / 2.0


def build_record(f1: int, f2: int, s: int, ci_inter: MeanCI, ci_elim: MeanCI) -> TripleRecord:
    try:
        lo, hi, mid = s_cv_bounds(ci_elim, ci_inter)
    except NonPositiveDenominatorError:
        return TripleRecord(f1, f2, s, ci_inter, ci_elim, math.nan, math.nan, math.nan, True)
    return TripleRecord(f1, f2, s, ci_inter, ci_elim, lo, hi, mid, False)


# -- scan -----------------------------------------------------------------------

_worker_state: dict = {}


def _init_worker(d, plans, floor_scope):
    _worker_state.update(d=d, plans=plans, floor_scope=floor_scope)


def _worker_scores(subset):
    st = _worker_state
    return _scores_on_plans(st["d"], subset, st["plans"], st["floor_scope"])


class _Evaluator:
    """Caches one score vector per subset; fans batches out to worker processes."""

    def __init__(self, d, plans, floor_scope, workers):
        self.d, self.plans, self.floor_scope = d, plans, floor_scope
        self.cache: dict[tuple[int, ...], np.ndarray] = {}
        self.pool = None
        if workers > 1:
            self.pool = ProcessPoolExecutor(
                max_workers=workers, initializer=_init_worker,
                initargs=(d, plans, floor_scope))

    def close(self):
        if self.pool is not None:
            self.pool.shutdown()

    def evaluate(self, subsets):
        todo = [s for s in dict.fromkeys(subsets) if s not in self.cache]
        if self.pool is None:
            results = (_scores_on_plans(self.d, s, self.plans, self.floor_scope) for s in todo)
        else:
            results = self.pool.map(_worker_scores, todo, chunksize=max(1, len(todo) // 64))
        for s, scores in zip(todo, results):
            self.cache[s] = scores

    def __getitem__(self, subset):
        return self.cache[subset]


@dataclass
class ScanResult:
    records: list[TripleRecord]
    pairs: list[tuple[int, int, float, float, float]]  # (f1, f2, t1, t2, t12) complementary
    samples: dict[tuple[int, ...], np.ndarray]
    plans: list[SplitPlan]


def scan(d: Dataset, seeds: Sequence[int], alpha: float = 0.05,
         train_fraction: float = DEFAULT_TRAIN_FRACTION, *, workers: int = 1,
         floor_scope: str = "train", complementarity: str = "cv") -> ScanResult:
    """Like :func:`scan_triples` but also returns the intermediate scores."""
    k = d.n_features
    if k < 3:
        raise DataError(f"a triple scan needs at least 3 features, got {k}")
    if complementarity not in COMPLEMENTARITY_POLICIES:
        raise ValueError(f"complementarity must be one of {COMPLEMENTARITY_POLICIES}")
    seeds = [int(s) for s in seeds]
    if len(seeds) < 2:
        raise DataError(f"need at least 2 seeds, got {len(seeds)}")
    plans = make_plans(d, seeds, train_fraction)
    ev = _Evaluator(d, plans, floor_scope, workers)
    try:
        singles = [(i,) for i in range(k)]
        pairs = list(itertools.combinations(range(k), 2))
        ev.evaluate(singles + pairs)

        if complementarity == "cv":
            t = {s: float(np.mean(ev[s])) for s in singles + pairs}
        else:
            t = {s: full_data_score(d, s) for s in singles + pairs}
        comp = [(a, b) for a, b in pairs if is_complementary(t[(a,)], t[(b,)], t[(a, b)])]
        log.info("%d of %d pairs are complementary", len(comp), len(pairs))

        triples = [(a, b, s) for a, b in comp for s in range(k) if s not in (a, b)]
        ev.evaluate([tuple(sorted(x)) for x in triples])

        records = []
        for a, b, s in triples:
            ci_inter = mean_ci(ev[tuple(sorted((a, b, s)))], alpha)
            ci_elim = mean_ci(ev[(a, b)], alpha)
            if ci_elim.lo > ci_inter.hi:
                records.append(build_record(a, b, s, ci_inter, ci_elim))
        records.sort(key=lambda r: (r.f1, r.f2, r.s))
        pair_rows = [(a, b, t[(a,)], t[(b,)], t[(a, b)]) for a, b in comp]
        return ScanResult(records, pair_rows, dict(ev.cache), plans)
    finally:
        ev.close()


def scan_triples(d: Dataset, seeds: Sequence[int], alpha: float = 0.05,
                 train_fraction: float = DEFAULT_TRAIN_FRACTION, *, workers: int = 1,
                 floor_scope: str = "train", complementarity: str = "cv") -> list[TripleRecord]:
    """Find triples ``(f1, f2, s)`` where removing ``s`` significantly helps the pair.

    A pair is complementary when its mean score beats both singletons' mean
    scores (or, with ``complementarity="full"``, their full-data training
    scores). For each such pair and every other feature ``s`` a record is
    emitted when the pair's confidence interval lies entirely above the
    triple's. Records are sorted by ``(f1, f2, s)``.
    """
    return scan(d, seeds, alpha, train_fraction, workers=workers,
                floor_scope=floor_scope, complementarity=complementarity).records
