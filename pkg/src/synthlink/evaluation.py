"""Tie-aware ROC/AUC and replicate aggregation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from synthlink.errors import ConfigurationError


def _scores(values, what):
    arr = np.asarray(values, dtype=np.float64).ravel()
    if arr.size == 0:
        raise ConfigurationError(f"{what} scores are empty")
    if not np.all(np.isfinite(arr)):
        raise ConfigurationError(f"{what} scores contain non-finite values")
    return arr


def auc(positive_scores, negative_scores) -> float:
    """P(pos > neg) + P(pos == neg) / 2 over all positive x negative pairs.

    Computed from mid-ranks of the pooled sample (Mann-Whitney U), so ties
    get half credit and the cost is one sort.
    """
    pos = _scores(positive_scores, "positive")
    neg = _scores(negative_scores, "negative")
    n_pos, n_neg = len(pos), len(neg)
    pooled = np.concatenate([pos, neg])
    uniq, inverse, counts = np.unique(pooled, return_inverse=True, return_counts=True)
    # mid-rank of each distinct value (1-based)
    upper = np.cumsum(counts)
    midrank = upper - (counts - 1) / 2.0
    rank_sum = midrank[inverse[:n_pos]].sum()
    u_stat = rank_sum - n_pos * (n_pos + 1) / 2.0
    return float(u_stat / (n_pos * n_neg))


@dataclass(frozen=True, eq=False)
class RocCurve:
    """ROC polyline from (0, 0) to (1, 1).

    ``thresholds[i]`` is the score cut that yields point ``i`` (pairs scoring
    ``>= threshold`` are predicted); the first point has threshold ``+inf``.
    """

    fpr: np.ndarray
    tpr: np.ndarray
    thresholds: np.ndarray

    @property
    def points(self):
        return list(zip(self.fpr.tolist(), self.tpr.tolist()))

    def area(self) -> float:
        return float(np.sum(np.diff(self.fpr) * (self.tpr[1:] + self.tpr[:-1]) / 2.0))


def roc_curve(positive_scores, negative_scores) -> RocCurve:
    """Sweep every distinct score as a threshold, highest first."""
    pos = _scores(positive_scores, "positive")
    neg = _scores(negative_scores, "negative")
    pooled = np.concatenate([pos, neg])
    is_pos = np.concatenate([np.ones(len(pos)), np.zeros(len(neg))])
    order = np.argsort(-pooled, kind="stable")
    s = pooled[order]
    lab = is_pos[order]
    tp = np.cumsum(lab)
    fp = np.cumsum(1.0 - lab)
    # last index of each run of equal scores
    last = np.r_[np.flatnonzero(np.diff(s) != 0), len(s) - 1]
    tpr = np.r_[0.0, tp[last] / len(pos)]
    fpr = np.r_[0.0, fp[last] / len(neg)]
    thr = np.r_[np.inf, s[last]]
    return RocCurve(fpr, tpr, thr)


@dataclass(frozen=True)
class AucSummary:
    mean: float
    variance: float
    n_replicates: int
    per_replicate: tuple = field(default=())

    @property
    def stderr(self) -> float:
        return float(np.sqrt(self.variance / self.n_replicates))


def aggregate(aucs) -> AucSummary:
    """Mean and unbiased variance over replicates (variance 0 for one replicate)."""
    vals = [float(a) for a in aucs]
    if not vals:
        raise ConfigurationError("cannot aggregate an empty list of AUCs")
    arr = np.asarray(vals)
    var = float(arr.var(ddof=1)) if len(arr) > 1 else 0.0
    return AucSummary(float(arr.mean()), var, len(arr), tuple(vals))


def eval_set_auc(eval_set, scores) -> float:
    """AUC of ``scores`` aligned with ``eval_set.candidate_pairs``."""
    scores = np.asarray(scores, dtype=np.float64)
    n_pos = len(eval_set.heldout)
    return auc(scores[:n_pos], scores[n_pos:])
