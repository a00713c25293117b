import sys
import itertools

import numpy as np
import pytest

from synthlink.graphgen import GraphSpec, StructureKind

KINDS = [
    StructureKind.clique(),
    StructureKind.lattice(),
    StructureKind.lattice_diag(1),
    StructureKind.lattice_diag(2),
]


def all_pairs(n):
    return np.array(list(itertools.combinations(range(n), 2)), dtype=np.int64).reshape(-1, 2)


def brute_auc(pos, neg):
    """Quadratic reference: wins + ties/2 over every positive x negative pair."""
    total = 0.0
    for a in pos:
        for b in neg:
            if a > b:
                total += 1.0
            elif a == b:
                total += 0.5
    return total / (len(pos) * len(neg))


@pytest.fixture
def small_spec():
    return GraphSpec(n_bridge=6, bridge_degree=3, n_structures=3,
                     kind=StructureKind.lattice_diag(1), k=3, seed=11)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
