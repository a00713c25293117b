"""Edge-class bookkeeping.

Every node pair of a synthetic graph falls in exactly one class:

* SS: both endpoints in the same structure (existing or missing),
* SB: one structure node and one bridge (existing or missing),
* BL: structure nodes of two different structures (never existing),
* BB: two bridges (never existing).

The analytic census uses the expected bridge edge count ``D_B * N_B``; the
empirical census counts an actual graph. All other fields are exact in both.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields

import numpy as np

from synthlink.errors import DataFormatError
from synthlink.graphgen import BRIDGE, GraphSpec, SyntheticGraph, structure_edge_count


@dataclass(frozen=True)
class EdgeCensus:
    """Pair counts per class.

    ``e_sb_existing`` and ``e_sb_missing`` (and hence ``e_total_existing``)
    are expectations in an analytic census and integers in an empirical one.
    """

    e_ss_possible: float
    e_ss_existing: float
    e_ss_missing: float
    e_sb_possible: float
    e_sb_existing: float
    e_sb_missing: float
    e_bl_missing: float
    e_bb_missing: float
    e_impossible: float
    e_total_existing: float
    n_nodes: int

    @property
    def total_pairs(self) -> int:
        return self.n_nodes * (self.n_nodes - 1) // 2

    @property
    def total_missing(self) -> float:
        """All non-existing pairs; equals N(N-1)/2 - E for a consistent census."""
        return self.e_ss_missing + self.e_sb_missing + self.e_impossible

    @property
    def frac_ss_existing(self) -> float:
        """Fraction of existing links that are within structures."""
        return self.e_ss_existing / self.e_total_existing

    @property
    def frac_sb_existing(self) -> float:
        return self.e_sb_existing / self.e_total_existing

    @property
    def frac_sb_missing(self) -> float:
        """Fraction of non-existing pairs that are structure-bridge pairs."""
        return self.e_sb_missing / self.total_missing

    @property
    def frac_ss_missing(self) -> float:
        return self.e_ss_missing / self.total_missing

    def scaled(self, factor: float) -> EdgeCensus:
        """Multiply every pair count by ``factor`` (``n_nodes`` is kept).

        Not the census of any graph; used to check that closed-form AUCs
        depend only on ratios.
        """
        vals = {f.name: getattr(self, f.name) * factor for f in fields(self)}
        vals["n_nodes"] = self.n_nodes
        return EdgeCensus(**vals)

    def as_dict(self) -> dict:
        return asdict(self)


def analytic_census(spec: GraphSpec) -> EdgeCensus:
    """Expected census of graphs generated from ``spec``."""
    w = spec.structure_size
    m = spec.n_structures
    n_s = spec.n_structure_nodes
    n_b = spec.n_bridge
    ss_possible = m * w * (w - 1) // 2
    ss_existing = m * structure_edge_count(spec.kind, spec.k)
    sb_possible = n_s * n_b
    sb_existing = spec.bridge_degree * n_b
    bl = n_s * (n_s - 1) // 2 - ss_possible
    bb = n_b * (n_b - 1) // 2
    return EdgeCensus(
        e_ss_possible=ss_possible,
        e_ss_existing=ss_existing,
        e_ss_missing=ss_possible - ss_existing,
        e_sb_possible=sb_possible,
        e_sb_existing=sb_existing,
        e_sb_missing=sb_possible - sb_existing,
        e_bl_missing=bl,
        e_bb_missing=bb,
        e_impossible=bl + bb,
        e_total_existing=ss_existing + sb_existing,
        n_nodes=spec.n_nodes,
    )


def empirical_census(graph: SyntheticGraph) -> EdgeCensus:
    """Count every class in an actual graph.

    Raises:
        DataFormatError: an edge joins two bridges or two different
            structures, which the generator never produces.
    """
    blocks = np.asarray(graph.blocks)
    n = graph.n_nodes
    bu = blocks[graph.edges[:, 0]]
    bv = blocks[graph.edges[:, 1]]
    bad_bb = (bu == BRIDGE) & (bv == BRIDGE)
    if bad_bb.any():
        u, v = graph.edges[np.argmax(bad_bb)]
        raise DataFormatError(f"edge ({u}, {v}) joins two bridge nodes")
    bad_bl = (bu != BRIDGE) & (bv != BRIDGE) & (bu != bv)
    if bad_bl.any():
        u, v = graph.edges[np.argmax(bad_bl)]
        raise DataFormatError(f"edge ({u}, {v}) joins two different structures")
    sb_existing = int(((bu == BRIDGE) ^ (bv == BRIDGE)).sum())
    ss_existing = int(len(graph.edges) - sb_existing)

    sizes = np.bincount(blocks[blocks != BRIDGE])
    n_s = int(sizes.sum())
    n_b = n - n_s
    ss_possible = int((sizes * (sizes - 1) // 2).sum())
    sb_possible = n_s * n_b
    bl = n_s * (n_s - 1) // 2 - ss_possible
    bb = n_b * (n_b - 1) // 2
    return EdgeCensus(
        e_ss_possible=ss_possible,
        e_ss_existing=ss_existing,
        e_ss_missing=ss_possible - ss_existing,
        e_sb_possible=sb_possible,
        e_sb_existing=sb_existing,
        e_sb_missing=sb_possible - sb_existing,
        e_bl_missing=bl,
        e_bb_missing=bb,
        e_impossible=bl + bb,
        e_total_existing=ss_existing + sb_existing,
        n_nodes=n,
    )
