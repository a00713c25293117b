"""Synthetic bridge+structure graphs for benchmarking link prediction.

The package generates graphs made of ``M`` deterministic structures (cliques,
square lattices, lattices with closed diagonals) wired together by randomly
attached bridge nodes, computes closed-form AUC ceilings for them, and runs
link predictors against those ceilings under a hold-out protocol.
"""

from synthlink.errors import ConfigurationError, DataFormatError, SynthLinkError
from synthlink.graphgen import (
    GraphSpec,
    NodeRole,
    StructureKind,
    SyntheticGraph,
    generate,
    role_of,
    structure_edge_count,
    structure_link,
)
from synthlink.census import EdgeCensus, analytic_census, empirical_census
from synthlink.analytic import (
    PlantedProbabilities,
    RocPoint,
    ideal_auc,
    ideal_roc_points,
    planted_probabilities,
    planted_roc_points,
    planted_sbm_auc,
)
from synthlink.split import EvalSet, build_eval_set, sample_negatives, split_edges
from synthlink.evaluation import AucSummary, RocCurve, aggregate, auc, roc_curve

__version__ = "0.1.0"

__all__ = [
    "AucSummary",
    "ConfigurationError",
    "DataFormatError",
    "EdgeCensus",
    "EvalSet",
    "GraphSpec",
    "NodeRole",
    "PlantedProbabilities",
    "RocCurve",
    "RocPoint",
    "StructureKind",
    "SynthLinkError",
    "SyntheticGraph",
    "aggregate",
    "analytic_census",
    "auc",
    "build_eval_set",
    "empirical_census",
    "generate",
    "ideal_auc",
    "ideal_roc_points",
    "planted_probabilities",
    "planted_roc_points",
    "planted_sbm_auc",
    "role_of",
    "roc_curve",
    "sample_negatives",
    "split_edges",
    "structure_edge_count",
    "structure_link",
]
