"""Greedy two-tier decision trees and interfering-feature analysis."""

__version__ = "0.1.0"

from .crossval import (MeanCI, ScoreSample, TripleRecord, cv_scores, make_seeds, mean_ci,
                       s_cv_bounds, scan_triples)
from .data import (Dataset, SplitPlan, Task, emit_synthetic, filter_rows, load_csv, make_split,
                   write_csv)
from .errors import DataError, DegenerateTargetError, NonPositiveDenominatorError, TwoTierError
from .interference import interference_coefficient, is_complementary
from .kernels import BACKEND_NAME
from .scoring import (explained_variance_fraction, normalized_accuracy,
                      normalized_accuracy_floor, score_subset)
from .stats import DatasetSummary, median, spearman, summarize
from .tree import TwoTierTree, best_split, fit_two_tier, predict, predict_many, render
