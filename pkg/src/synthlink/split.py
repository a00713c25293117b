"""Observed/held-out edge partition and balanced negative sampling."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from synthlink.errors import ConfigurationError
from synthlink.graphgen import SyntheticGraph
from synthlink.rng import make_rng

_BATCH_OVERSAMPLE = 1.3


def holdout_size(n_edges: int, fraction: float) -> int:
    """round(fraction * n_edges), halves rounded up."""
    return int(math.floor(fraction * n_edges + 0.5))


def split_edges(graph: SyntheticGraph, holdout_fraction: float, seed: int):
    """Hold out a uniform random subset of the edges.

    Returns:
        ``(observed, heldout)``, both ``(n, 2)`` arrays in the graph's edge
        order.
    """
    if not 0.0 < holdout_fraction < 1.0:
        raise ConfigurationError(f"holdout fraction must lie in (0, 1), got {holdout_fraction}")
    n_edges = graph.n_edges
    if n_edges == 0:
        raise ConfigurationError("cannot split a graph without edges")
    size = holdout_size(n_edges, holdout_fraction)
    rng = make_rng(seed, 0)
    mask = np.zeros(n_edges, dtype=bool)
    mask[rng.choice(n_edges, size=size, replace=False)] = True
    return graph.edges[~mask], graph.edges[mask]


def _keys_to_pairs(keys: np.ndarray, n: int) -> np.ndarray:
    return np.column_stack([keys // n, keys % n])


def sample_negatives(graph: SyntheticGraph, count: int, seed: int) -> np.ndarray:
    """Uniform sample without replacement of ``count`` non-adjacent pairs.

    All non-edges are eligible, whatever their class. Uses rejection sampling
    unless non-edges are scarce (fewer than ten times ``count``), in which
    case they are enumerated explicitly.
    """
    n = graph.n_nodes
    if count < 0:
        raise ConfigurationError("negative count")
    available = n * (n - 1) // 2 - graph.n_edges
    if count > available:
        raise ConfigurationError(
            f"requested {count} negatives but only {available} non-edges exist"
        )
    if count == 0:
        return np.empty((0, 2), dtype=np.int64)
    edge_keys = graph.edge_keys()
    rng = make_rng(seed, 1)

    if available < 10 * count:
        iu, iv = np.triu_indices(n, 1)
        keys = iu.astype(np.int64) * n + iv
        keys = keys[~np.isin(keys, edge_keys, assume_unique=True)]
        chosen = rng.choice(len(keys), size=count, replace=False)
        return _keys_to_pairs(keys[chosen], n)

    picked = np.empty(0, dtype=np.int64)
    while len(picked) < count:
        need = count - len(picked)
        m = int(need * _BATCH_OVERSAMPLE) + 16
        u = rng.integers(0, n, size=m)
        v = rng.integers(0, n, size=m)
        ok = u != v
        u, v = u[ok], v[ok]
        keys = np.minimum(u, v) * n + np.maximum(u, v)
        keys = keys[~np.isin(keys, edge_keys)]
        # drop repeats (within the batch and against earlier draws), keep draw order
        allk = np.concatenate([picked, keys])
        _, first = np.unique(allk, return_index=True)
        allk = allk[np.sort(first)]
        picked = allk[:count]
    return _keys_to_pairs(picked, n)


@dataclass(frozen=True, eq=False)
class EvalSet:
    """One replicate's evaluation data: observed edges plus the scored pairs.

    ``negatives`` has exactly as many rows as ``heldout``.
    """

    observed: np.ndarray
    heldout: np.ndarray
    negatives: np.ndarray
    seed: int
    holdout_fraction: float = 0.1

    @property
    def candidate_pairs(self) -> np.ndarray:
        """Held-out pairs followed by negatives."""
        return np.concatenate([self.heldout, self.negatives])

    @property
    def labels(self) -> np.ndarray:
        return np.concatenate(
            [np.ones(len(self.heldout), dtype=bool), np.zeros(len(self.negatives), dtype=bool)]
        )

    def fingerprint(self) -> str:
        """Hash of the held-out and negative pair sets, for identity checks."""
        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.heldout, dtype=np.int64).tobytes())
        h.update(b"|")
        h.update(np.ascontiguousarray(self.negatives, dtype=np.int64).tobytes())
        return h.hexdigest()


def build_eval_set(graph: SyntheticGraph, holdout_fraction: float, seed: int) -> EvalSet:
    observed, heldout = split_edges(graph, holdout_fraction, seed)
    negatives = sample_negatives(graph, len(heldout), seed)
    return EvalSet(observed, heldout, negatives, seed, holdout_fraction)
