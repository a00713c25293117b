"""Text file formats.

Edge list::

    # n_bridge=4 bridge_degree=5 n_structures=4 kind=lattice-diag diagonals=1 k=8 seed=1
    # tool=synthlink version=0.1.0 argv='...'
    0<TAB>1
    ...

The first comment line holds the generating spec as ``key=value`` pairs;
further comment lines carry free ``key=value`` metadata (split role,
fraction, seed, provenance). Pairs are 0-indexed with ``u < v``.

Roles file: ``node<TAB>role`` per line, role ``S<i>`` (1-based structure) or
``B``.
"""

from __future__ import annotations

import csv
import io
import shlex
from pathlib import Path

import numpy as np

from synthlink.errors import ConfigurationError, DataFormatError
from synthlink.graphgen import GraphSpec, NodeRole, SyntheticGraph

_SPEC_KEYS = ("n_bridge", "bridge_degree", "n_structures", "kind", "diagonals", "k", "seed")


def format_kv(d: dict) -> str:
    return " ".join(f"{k}={shlex.quote(str(v))}" for k, v in d.items())


def parse_kv(text: str) -> dict:
    out = {}
    try:
        tokens = shlex.split(text)
    except ValueError as exc:
        raise DataFormatError(f"bad header line {text!r}: {exc}") from None
    for tok in tokens:
        if "=" in tok:
            k, v = tok.split("=", 1)
            out[k] = v
    return out


def spec_header(spec: GraphSpec) -> str:
    return format_kv(spec.as_dict())


def write_edge_list(path, edges, spec: GraphSpec | None = None, meta=()):
    """Write pairs with an optional spec line and extra ``key=value`` lines."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if spec is not None:
            fh.write(f"# {spec_header(spec)}\n")
        for line in meta:
            fh.write(f"# {line}\n")
        for u, v in np.asarray(edges, dtype=np.int64).reshape(-1, 2):
            a, b = (u, v) if u < v else (v, u)
            fh.write(f"{a}\t{b}\n")


def read_edge_list(path):
    """Return ``(spec_or_None, meta, edges)``.

    ``meta`` merges the ``key=value`` tokens of every comment line after the
    spec line.
    """
    path = Path(path)
    spec = None
    meta = {}
    rows = []
    first_comment = True
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                kv = parse_kv(line[1:])
                if first_comment and all(k in kv for k in ("n_bridge", "n_structures", "kind", "k")):
                    try:
                        spec = GraphSpec.from_dict(kv)
                    except ConfigurationError as exc:
                        raise DataFormatError(f"{path}:{lineno}: bad spec header: {exc}") from None
                else:
                    meta.update(kv)
                first_comment = False
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise DataFormatError(f"{path}:{lineno}: expected 'u<TAB>v'")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise DataFormatError(f"{path}:{lineno}: cannot parse {line!r}") from None
            if u < 0 or v < 0 or u == v:
                raise DataFormatError(f"{path}:{lineno}: invalid pair ({u}, {v})")
            rows.append((min(u, v), max(u, v)))
    edges = np.asarray(rows, dtype=np.int64).reshape(-1, 2)
    if spec is not None and len(edges) and edges.max() >= spec.n_nodes:
        raise DataFormatError(f"{path}: node index exceeds N={spec.n_nodes} from the header")
    return spec, meta, edges


def write_roles(path, graph: SyntheticGraph, meta=()):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in meta:
            fh.write(f"# {line}\n")
        for i, role in enumerate(graph.roles):
            fh.write(f"{i}\t{role}\n")


def read_roles(path) -> list[NodeRole]:
    roles = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            try:
                node = int(parts[0])
                role = NodeRole.parse(parts[1])
            except (IndexError, ValueError):
                raise DataFormatError(f"{path}:{lineno}: expected 'node<TAB>role'") from None
            if node != len(roles):
                raise DataFormatError(f"{path}:{lineno}: nodes must be listed in order 0..N-1")
            roles.append(role)
    return roles


def to_csv(rows: list[dict]) -> str:
    """Render dict rows as CSV text (header taken from the first row)."""
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()
