"""Pair scoring.

Native predictors (common neighbours, Jaccard, Adamic-Adar, random) only
see the observed graph. Oracle predictors (ideal, planted block model) read
the true node allocation from the generating spec and are flagged as such
in the registry. External methods plug in through score files, see
:func:`import_scores`.

Pairs are passed as ``(n, 2)`` integer arrays; a single ``(u, v)`` tuple is
also accepted and yields a scalar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np
import scipy.sparse as sp

from synthlink.analytic import PlantedProbabilities, planted_probabilities
from synthlink.errors import ConfigurationError, DataFormatError
from synthlink.graphgen import BRIDGE, SyntheticGraph, structure_links
from synthlink.rng import hash_pairs


def _as_pairs(pairs):
    arr = np.asarray(pairs, dtype=np.int64)
    single = arr.ndim == 1
    return arr.reshape(-1, 2), single


def _unwrap(values: np.ndarray, single: bool):
    return float(values[0]) if single else values


class ObservedGraph:
    """Adjacency of the observed edges, with cached degrees."""

    def __init__(self, edges, n_nodes: int):
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if len(edges) and (edges.min() < 0 or edges.max() >= n_nodes):
            raise ConfigurationError("edge endpoint outside [0, n_nodes)")
        rows = np.concatenate([edges[:, 0], edges[:, 1]])
        cols = np.concatenate([edges[:, 1], edges[:, 0]])
        adj = sp.csr_matrix(
            (np.ones(len(rows), dtype=np.float64), (rows, cols)), shape=(n_nodes, n_nodes)
        )
        adj.sum_duplicates()
        adj.data[:] = 1.0
        self.adjacency = adj
        self.n_nodes = n_nodes
        self.degree = np.asarray(adj.sum(axis=1)).ravel()

    def neighbors(self, node: int) -> np.ndarray:
        a = self.adjacency
        return a.indices[a.indptr[node]:a.indptr[node + 1]]

    def _common(self, pairs: np.ndarray, weights=None) -> np.ndarray:
        if len(pairs) == 0:
            return np.zeros(0)
        a = self.adjacency
        rows_u = a[pairs[:, 0]]
        rows_v = a[pairs[:, 1]]
        if weights is not None:
            rows_v = rows_v @ sp.diags(weights)
        return np.asarray(rows_u.multiply(rows_v).sum(axis=1)).ravel()


def common_neighbors(observed: ObservedGraph, pairs):
    """|N(u) & N(v)| in the observed graph."""
    arr, single = _as_pairs(pairs)
    return _unwrap(observed._common(arr), single)


def jaccard(observed: ObservedGraph, pairs):
    """|N(u) & N(v)| / |N(u) | N(v)|, 0 when both neighbourhoods are empty."""
    arr, single = _as_pairs(pairs)
    inter = observed._common(arr)
    union = observed.degree[arr[:, 0]] + observed.degree[arr[:, 1]] - inter
    out = np.divide(inter, union, out=np.zeros_like(inter), where=union > 0)
    return _unwrap(out, single)


def adamic_adar(observed: ObservedGraph, pairs):
    """Sum over common neighbours w of 1 / ln(deg(w)).

    A common neighbour has degree >= 2, so the weights are finite; nodes of
    degree < 2 get weight 0, which never contributes.
    """
    arr, single = _as_pairs(pairs)
    deg = observed.degree
    w = np.zeros_like(deg)
    np.divide(1.0, np.log(deg, where=deg > 1, out=np.ones_like(deg)), out=w, where=deg > 1)
    return _unwrap(observed._common(arr, w), single)


def _check_meta(graph):
    if graph is None or getattr(graph, "spec", None) is None:
        raise ConfigurationError("oracle predictors need the generating spec of the graph")


def oracle_ideal(graph: SyntheticGraph, pairs):
    """Score of the ideal predictor.

    1 for links of a structure's pattern, ``D_B / N_S`` for any
    structure-bridge pair, 0 for everything else.
    """
    _check_meta(graph)
    arr, single = _as_pairs(pairs)
    spec = graph.spec
    bu = graph.blocks[arr[:, 0]]
    bv = graph.blocks[arr[:, 1]]
    out = np.zeros(len(arr))
    out[(bu == BRIDGE) ^ (bv == BRIDGE)] = spec.bridge_prob
    same = np.flatnonzero((bu == bv) & (bu != BRIDGE))
    if len(same):
        w = spec.structure_size
        linked = structure_links(spec.kind, spec.k, arr[same, 0] % w, arr[same, 1] % w)
        out[same] = linked.astype(np.float64)
    return _unwrap(out, single)


def planted_sbm_score(graph: SyntheticGraph, probs: PlantedProbabilities, pairs):
    """Block-model score: q within a structure, p structure-bridge, 0 otherwise."""
    _check_meta(graph)
    arr, single = _as_pairs(pairs)
    bu = graph.blocks[arr[:, 0]]
    bv = graph.blocks[arr[:, 1]]
    out = np.zeros(len(arr))
    out[(bu == BRIDGE) ^ (bv == BRIDGE)] = probs.p
    out[(bu == bv) & (bu != BRIDGE)] = probs.q
    return _unwrap(out, single)


def random_baseline(seed: int, pairs):
    """Deterministic pseudo-random score in [0, 1) per (seed, pair)."""
    arr, single = _as_pairs(pairs)
    lo = np.minimum(arr[:, 0], arr[:, 1])
    hi = np.maximum(arr[:, 0], arr[:, 1])
    return _unwrap(hash_pairs(seed, lo, hi), single)


@dataclass(frozen=True)
class Predictor:
    """Registry entry.

    ``oracle`` predictors are called as ``fn(graph, pairs, seed)`` with the
    full generated graph; the others as ``fn(observed, pairs, seed)``.
    """

    name: str
    fn: Callable
    oracle: bool = False


PREDICTORS = {
    p.name: p
    for p in [
        Predictor("adamic-adar", lambda obs, pairs, seed: adamic_adar(obs, pairs)),
        Predictor("common-neighbors", lambda obs, pairs, seed: common_neighbors(obs, pairs)),
        Predictor("jaccard", lambda obs, pairs, seed: jaccard(obs, pairs)),
        Predictor("random", lambda obs, pairs, seed: random_baseline(seed, pairs)),
        Predictor("oracle-ideal", lambda g, pairs, seed: oracle_ideal(g, pairs), oracle=True),
        Predictor(
            "planted-sbm",
            lambda g, pairs, seed: planted_sbm_score(g, planted_probabilities(g.spec), pairs),
            oracle=True,
        ),
    ]
}


def get_predictor(name: str) -> Predictor:
    key = name.strip().lower().replace("_", "-")
    if key not in PREDICTORS:
        raise ConfigurationError(
            f"unknown predictor {name!r}; available: {', '.join(sorted(PREDICTORS))}"
        )
    return PREDICTORS[key]


def score_pairs(name: str, pairs, *, observed: ObservedGraph, graph=None, seed: int = 0):
    """Score ``pairs`` with a registered predictor."""
    pred = get_predictor(name)
    arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if pred.oracle:
        return np.asarray(pred.fn(graph, arr, seed), dtype=np.float64)
    return np.asarray(pred.fn(observed, arr, seed), dtype=np.float64)


@dataclass(frozen=True, eq=False)
class ScoredPairs:
    """Predictor output: one score per unique pair (stored with u < v)."""

    pairs: np.ndarray
    scores: np.ndarray
    predictor_name: str

    def __len__(self):
        return len(self.scores)

    def lookup(self, pairs) -> np.ndarray:
        """Scores for ``pairs`` (any orientation).

        Raises:
            DataFormatError: a requested pair has no score.
        """
        arr = np.sort(np.asarray(pairs, dtype=np.int64).reshape(-1, 2), axis=1)
        table = {(int(u), int(v)): i for i, (u, v) in enumerate(self.pairs)}
        idx = np.empty(len(arr), dtype=np.int64)
        for i, (u, v) in enumerate(arr):
            j = table.get((int(u), int(v)))
            if j is None:
                raise DataFormatError(
                    f"predictor {self.predictor_name!r} has no score for pair ({u}, {v})"
                )
            idx[i] = j
        return self.scores[idx]


def import_scores(path, predictor_name: str | None = None) -> ScoredPairs:
    """Parse a score file: ``u<TAB>v<TAB>score`` per line, ``#`` comments.

    A ``# predictor=<name>`` comment names the predictor; otherwise the file
    stem is used.
    """
    path = Path(path)
    name = predictor_name
    pairs, scores, seen = [], [], {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    if tok.startswith("predictor=") and name is None:
                        name = tok.split("=", 1)[1]
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise DataFormatError(f"{path}:{lineno}: expected 'u<TAB>v<TAB>score'")
            try:
                u, v, score = int(parts[0]), int(parts[1]), float(parts[2])
            except ValueError:
                raise DataFormatError(f"{path}:{lineno}: cannot parse {line!r}") from None
            if u < 0 or v < 0 or u == v:
                raise DataFormatError(f"{path}:{lineno}: invalid pair ({u}, {v})")
            if not math.isfinite(score):
                raise DataFormatError(f"{path}:{lineno}: non-finite score {parts[2]!r}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DataFormatError(
                    f"{path}:{lineno}: duplicate pair {key} (first seen on line {seen[key]})"
                )
            seen[key] = lineno
            pairs.append(key)
            scores.append(score)
    return ScoredPairs(
        np.asarray(pairs, dtype=np.int64).reshape(-1, 2),
        np.asarray(scores, dtype=np.float64),
        name or path.stem,
    )


def write_scores(path, scored: ScoredPairs, header_lines=()):
    with open(path, "w", encoding="utf-8") as fh:
        for h in header_lines:
            fh.write(f"# {h}\n")
        fh.write(f"# predictor={scored.predictor_name}\n")
        for (u, v), s in zip(scored.pairs, scored.scores):
            fh.write(f"{u}\t{v}\t{float(s)!r}\n")
