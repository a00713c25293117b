"""Closed-form AUC of the ideal predictor and of the planted block model.

Both predictors emit a handful of distinct score levels, so their ROC
curves are polygons with breakpoints determined by the edge census. The
AUC of each is the trapezoidal area under those breakpoints.

Shorthand used below, all relative to a census:

    a = Ē_SS / E            fraction of existing links inside structures
    s = Ẽ_SS / T            fraction of non-links inside structures
    b = Ẽ_SB / T            fraction of non-links between structure and bridge

with ``E`` all existing links and ``T`` all non-existing pairs.
"""

from __future__ import annotations

from typing import NamedTuple

from synthlink.census import EdgeCensus
from synthlink.errors import ConfigurationError
from synthlink.graphgen import GraphSpec, structure_edge_count

TIE_TOL = 1e-12


class RocPoint(NamedTuple):
    fpr: float
    tpr: float


class PlantedProbabilities(NamedTuple):
    """Block-model link probabilities.

    ``p`` is the structure-bridge probability and ``q`` the within-structure
    density.
    """

    p: float
    q: float


def _check(census: EdgeCensus):
    if census.e_total_existing <= 0:
        raise ConfigurationError("census has no existing links; AUC undefined")
    if census.total_missing <= 0:
        raise ConfigurationError("census has no non-existing pairs; AUC undefined")


def trapezoid(points) -> float:
    """Area under a polyline of (fpr, tpr) points sorted by fpr."""
    area = 0.0
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        area += (x1 - x0) * (y0 + y1) / 2.0
    return area


def ideal_roc_points(census: EdgeCensus) -> tuple[RocPoint, RocPoint, RocPoint]:
    """Breakpoints A, B, C of the ideal predictor's ROC curve.

    A: only structural links predicted (no false positives).
    B: every link predicted, false positives are the missing SB pairs.
    C: everything predicted.
    """
    _check(census)
    a = census.frac_ss_existing
    b = census.frac_sb_missing
    return RocPoint(0.0, a), RocPoint(b, 1.0), RocPoint(1.0, 1.0)


def ideal_auc(census: EdgeCensus) -> float:
    """Upper bound on the AUC of any predictor: ``1 - b * (1 - a) / 2``."""
    _check(census)
    return 1.0 - 0.5 * census.frac_sb_missing * (1.0 - census.frac_ss_existing)


def planted_probabilities(spec: GraphSpec) -> PlantedProbabilities:
    """``p = D_B / N_S`` and ``q`` = link density inside one structure.

    For a k x k lattice q reduces to ``4 (k-1) / (k (k^2 - 1))``; for a
    clique it is 1.
    """
    w = spec.structure_size
    if w <= 1:
        raise ConfigurationError("structure size must be > 1 for a within-structure density")
    q = 2.0 * structure_edge_count(spec.kind, spec.k) / (w * (w - 1))
    return PlantedProbabilities(spec.bridge_prob, q)


def planted_roc_points(
    census: EdgeCensus, probs: PlantedProbabilities
) -> tuple[RocPoint, RocPoint, RocPoint, RocPoint]:
    """Breakpoints A, B, C, D of the planted block model's ROC curve.

    The higher of ``p`` and ``q`` is predicted first. With ``p == q`` both
    classes enter together and B coincides with C.
    """
    _check(census)
    a = census.frac_ss_existing
    s = census.frac_ss_missing
    b = census.frac_sb_missing
    origin, top = RocPoint(0.0, 0.0), RocPoint(1.0, 1.0)
    c = RocPoint(s + b, 1.0)
    if abs(probs.p - probs.q) <= TIE_TOL:
        return origin, c, c, top
    if probs.q > probs.p:
        return origin, RocPoint(s, a), c, top
    return origin, RocPoint(b, 1.0 - a), c, top


def planted_sbm_auc(census: EdgeCensus, probs: PlantedProbabilities) -> float:
    """AUC of the planted block model.

    Expanded closed forms (same shorthand as the module docstring)::

        q > p:  1 - b/2 + a*b/2 + a*s/2 - s
        p > q:  1 - s/2 + a'*s/2 + a'*b/2 - b     with a' = 1 - a
        p = q:  1 - (s + b)/2
    """
    _check(census)
    a = census.frac_ss_existing
    s = census.frac_ss_missing
    b = census.frac_sb_missing
    if abs(probs.p - probs.q) <= TIE_TOL:
        return 1.0 - 0.5 * (s + b)
    if probs.q > probs.p:
        return 1.0 - 0.5 * b + 0.5 * a * b + 0.5 * a * s - s
    a_sb = 1.0 - a
    return 1.0 - 0.5 * s + 0.5 * a_sb * s + 0.5 * a_sb * b - b
