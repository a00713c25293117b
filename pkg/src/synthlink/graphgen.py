"""Bridge+structure synthetic graphs.

A graph consists of ``M`` disjoint copies of a deterministic structure
(clique, square lattice, or square lattice with closed diagonals) and
``N_B`` bridge nodes. Every (bridge, structure node) pair is linked
independently with probability ``D_B / N_S``; bridges never link to each
other and structures never link to each other.

Node layout: structure ``s`` (0-based) occupies the contiguous block
``[s*w, (s+1)*w)`` where ``w`` is the structure size, and bridge nodes take
the indices ``N_S .. N-1``. Lattice nodes inside a block are numbered
row-major.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from synthlink.errors import ConfigurationError
from synthlink.rng import make_rng

BRIDGE = -1  # block id used for bridge nodes in SyntheticGraph.blocks

_KIND_NAMES = ("clique", "lattice", "lattice-diag")


@dataclass(frozen=True)
class StructureKind:
    """Type of the deterministic structure.

    ``diagonals`` is only meaningful for ``lattice-diag``: 1 closes the main
    diagonal of every unit cell, 2 closes both diagonals.
    """

    name: str
    diagonals: int = 0

    def __post_init__(self):
        if self.name not in _KIND_NAMES:
            raise ConfigurationError(
                f"unknown structure kind {self.name!r}; expected one of {_KIND_NAMES}"
            )
        if self.name == "lattice-diag":
            if self.diagonals not in (1, 2):
                raise ConfigurationError("lattice-diag needs diagonals in {1, 2}")
        elif self.diagonals != 0:
            raise ConfigurationError(f"{self.name} does not take a diagonal count")

    @classmethod
    def clique(cls) -> StructureKind:
        return cls("clique")

    @classmethod
    def lattice(cls) -> StructureKind:
        return cls("lattice")

    @classmethod
    def lattice_diag(cls, m: int = 1) -> StructureKind:
        return cls("lattice-diag", m)

    @classmethod
    def parse(cls, label: str) -> StructureKind:
        """Inverse of :attr:`label` (``"lattice-diag2"`` -> LatticeDiag(2))."""
        if label.startswith("lattice-diag") and label != "lattice-diag":
            try:
                m = int(label[len("lattice-diag"):])
            except ValueError:
                raise ConfigurationError(f"bad structure label {label!r}") from None
            return cls("lattice-diag", m)
        if label == "lattice-diag":
            return cls("lattice-diag", 1)
        return cls(label)

    @property
    def label(self) -> str:
        if self.name == "lattice-diag":
            return f"lattice-diag{self.diagonals}"
        return self.name

    def size(self, k: int) -> int:
        """Number of nodes in one structure of parameter ``k``."""
        return k if self.name == "clique" else k * k


def structure_edge_count(kind: StructureKind, k: int) -> int:
    """Number of links inside one structure (closed form)."""
    if k < 1:
        raise ConfigurationError("k must be >= 1")
    if kind.name == "clique":
        return k * (k - 1) // 2
    n = 2 * k * (k - 1)
    if kind.name == "lattice-diag":
        # one diagonal per direction per unit cell; a k x k grid has (k-1)^2 cells
        n += kind.diagonals * (k - 1) ** 2
    return n


def structure_link(kind: StructureKind, k: int, a: int, b: int) -> bool:
    """Link function for two local indices inside one structure."""
    w = kind.size(k)
    if not (0 <= a < w and 0 <= b < w):
        raise ConfigurationError(f"local index out of range [0, {w}): ({a}, {b})")
    if a == b:
        raise ConfigurationError("a structure has no self-links")
    if kind.name == "clique":
        return True
    ra, ca = divmod(a, k)
    rb, cb = divmod(b, k)
    dr, dc = rb - ra, cb - ca
    if abs(dr) + abs(dc) == 1:
        return True
    if kind.name == "lattice-diag" and abs(dr) == 1 and abs(dc) == 1:
        if dr == dc:
            return True  # main diagonal: (r, c) -- (r+1, c+1)
        return kind.diagonals == 2
    return False


def structure_links(kind: StructureKind, k: int, a, b) -> np.ndarray:
    """Vectorised :func:`structure_link`; ``a == b`` gives False."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if kind.name == "clique":
        return a != b
    dr = np.abs(a // k - b // k)
    dc = np.abs(a % k - b % k)
    out = dr + dc == 1
    if kind.name == "lattice-diag":
        diag = (dr == 1) & (dc == 1)
        if kind.diagonals == 1:
            # same sign of row and column offsets: the (r, c) -- (r+1, c+1) diagonal
            diag &= (a // k - b // k) == (a % k - b % k)
        out |= diag
    return out


def structure_edges(kind: StructureKind, k: int) -> np.ndarray:
    """All links of one structure as an ``(E_S, 2)`` array of local pairs, a < b."""
    if kind.name == "clique":
        a, b = np.triu_indices(k, 1)
        return np.column_stack([a, b]).astype(np.int64)
    idx = np.arange(k * k, dtype=np.int64).reshape(k, k)
    parts = [
        np.column_stack([idx[:, :-1].ravel(), idx[:, 1:].ravel()]),
        np.column_stack([idx[:-1, :].ravel(), idx[1:, :].ravel()]),
    ]
    if kind.name == "lattice-diag":
        parts.append(np.column_stack([idx[:-1, :-1].ravel(), idx[1:, 1:].ravel()]))
        if kind.diagonals == 2:
            parts.append(np.column_stack([idx[:-1, 1:].ravel(), idx[1:, :-1].ravel()]))
    edges = np.concatenate(parts)
    edges = np.sort(edges, axis=1)
    return edges[np.lexsort((edges[:, 1], edges[:, 0]))]


@dataclass(frozen=True)
class GraphSpec:
    """Generator parameters.

    Attributes:
        n_bridge: number of bridge nodes ``N_B``.
        bridge_degree: expected bridge degree ``D_B``.
        n_structures: number of structures ``M``.
        kind: structure type.
        k: clique size, or lattice side length.
        seed: 64-bit seed for the bridge wiring.
    """

    n_bridge: int
    bridge_degree: float
    n_structures: int
    kind: StructureKind
    k: int
    seed: int = 0

    def __post_init__(self):
        if self.n_bridge < 0:
            raise ConfigurationError("n_bridge must be >= 0")
        if self.bridge_degree < 0:
            raise ConfigurationError("bridge_degree must be >= 0")
        if self.n_structures < 1:
            raise ConfigurationError("n_structures must be >= 1")
        if self.k < 1:
            raise ConfigurationError("k must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must be a 64-bit unsigned integer")
        if self.bridge_degree > self.n_structure_nodes:
            raise ConfigurationError(
                f"bridge link probability D_B/N_S = {self.bridge_degree}/"
                f"{self.n_structure_nodes} exceeds 1"
            )

    @property
    def structure_size(self) -> int:
        return self.kind.size(self.k)

    @property
    def n_structure_nodes(self) -> int:
        return self.n_structures * self.structure_size

    @property
    def n_nodes(self) -> int:
        return self.n_structure_nodes + self.n_bridge

    @property
    def bridge_prob(self) -> float:
        return self.bridge_degree / self.n_structure_nodes

    @property
    def structure_fraction(self) -> float:
        """C_S = N_S / N."""
        return self.n_structure_nodes / self.n_nodes

    def with_seed(self, seed: int) -> GraphSpec:
        return GraphSpec(
            self.n_bridge, self.bridge_degree, self.n_structures, self.kind, self.k, seed
        )

    def as_dict(self) -> dict:
        return {
            "n_bridge": self.n_bridge,
            "bridge_degree": self.bridge_degree,
            "n_structures": self.n_structures,
            "kind": self.kind.name,
            "diagonals": self.kind.diagonals,
            "k": self.k,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> GraphSpec:
        try:
            kind = StructureKind(str(d["kind"]), int(d.get("diagonals", 0)))
            bd = float(d["bridge_degree"])
            return cls(
                n_bridge=int(d["n_bridge"]),
                bridge_degree=int(bd) if bd.is_integer() else bd,
                n_structures=int(d["n_structures"]),
                kind=kind,
                k=int(d["k"]),
                seed=int(d.get("seed", 0)),
            )
        except KeyError as exc:
            raise ConfigurationError(f"graph spec is missing {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigurationError):
                raise
            raise ConfigurationError(f"bad graph spec value: {exc}") from None


@dataclass(frozen=True)
class NodeRole:
    """Allocation of a node: a 1-based structure index, or ``None`` for a bridge."""

    structure: int | None

    @property
    def is_bridge(self) -> bool:
        return self.structure is None

    def __str__(self):
        return "B" if self.structure is None else f"S{self.structure}"

    @classmethod
    def parse(cls, text: str) -> NodeRole:
        if text == "B":
            return cls(None)
        if text.startswith("S") and text[1:].isdigit() and int(text[1:]) >= 1:
            return cls(int(text[1:]))
        raise ValueError(f"bad role {text!r}")


def node_blocks(spec: GraphSpec, nodes) -> np.ndarray:
    """Vectorised allocation: 0-based structure index per node, BRIDGE for bridges."""
    nodes = np.asarray(nodes, dtype=np.int64)
    blocks = nodes // spec.structure_size
    return np.where(nodes >= spec.n_structure_nodes, BRIDGE, blocks)


@dataclass(frozen=True, eq=False)
class SyntheticGraph:
    """A generated instance.

    ``edges`` is an ``(E, 2)`` int64 array of pairs with ``u < v``, sorted
    lexicographically and read-only.
    """

    spec: GraphSpec
    edges: np.ndarray
    blocks: np.ndarray = field(repr=False)

    @property
    def n_nodes(self) -> int:
        return self.spec.n_nodes

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def roles(self) -> list[NodeRole]:
        return [NodeRole(None if b == BRIDGE else int(b) + 1) for b in self.blocks]

    def edge_keys(self) -> np.ndarray:
        """Sorted scalar keys ``u * N + v`` of all edges."""
        return self.edges[:, 0] * self.n_nodes + self.edges[:, 1]


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def from_edges(spec: GraphSpec, edges) -> SyntheticGraph:
    """Wrap an explicit edge array (e.g. read from disk) as a SyntheticGraph."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    edges = np.sort(edges, axis=1)
    edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]
    blocks = node_blocks(spec, np.arange(spec.n_nodes))
    return SyntheticGraph(spec, _freeze(np.ascontiguousarray(edges)), _freeze(blocks))


def generate(spec: GraphSpec) -> SyntheticGraph:
    """Build one graph instance; the result depends only on ``spec``."""
    w = spec.structure_size
    n_s = spec.n_structure_nodes
    local = structure_edges(spec.kind, spec.k)
    offsets = np.arange(spec.n_structures, dtype=np.int64) * w
    struct = (local[None, :, :] + offsets[:, None, None]).reshape(-1, 2)

    rng = make_rng(spec.seed)
    p = spec.bridge_prob
    bridge_parts = []
    # row chunks bound memory at roughly 2**22 draws
    chunk = max(1, (1 << 22) // max(n_s, 1))
    for start in range(0, spec.n_bridge, chunk):
        stop = min(start + chunk, spec.n_bridge)
        hits = rng.random((stop - start, n_s)) < p
        b, s = np.nonzero(hits)
        bridge_parts.append(np.column_stack([s, b + start + n_s]).astype(np.int64))
    bridge = np.concatenate(bridge_parts) if bridge_parts else np.empty((0, 2), np.int64)

    # structure pairs first, then bridge pairs; both already have u < v
    edges = np.concatenate([struct, bridge])
    edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]
    blocks = node_blocks(spec, np.arange(spec.n_nodes))
    return SyntheticGraph(spec, _freeze(np.ascontiguousarray(edges)), _freeze(blocks))


def role_of(graph: SyntheticGraph, node: int) -> NodeRole:
    if not 0 <= node < graph.n_nodes:
        raise ConfigurationError(f"node {node} out of range [0, {graph.n_nodes})")
    b = int(graph.blocks[node])
    return NodeRole(None if b == BRIDGE else b + 1)
