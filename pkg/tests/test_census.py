import numpy as np
import pytest

from conftest import KINDS
from reference_tables import CLIQUE_ROWS, LATTICE_ROWS, row_spec
from synthlink.census import analytic_census, empirical_census
from synthlink.errors import DataFormatError
from synthlink.graphgen import GraphSpec, StructureKind, from_edges, generate

DETERMINISTIC = ("e_ss_possible", "e_ss_existing", "e_ss_missing", "e_sb_possible",
                 "e_bl_missing", "e_bb_missing", "e_impossible", "n_nodes")


def check_invariants(c):
    assert c.e_ss_possible == c.e_ss_existing + c.e_ss_missing
    assert c.e_sb_possible == c.e_sb_existing + c.e_sb_missing
    assert c.e_ss_possible + c.e_sb_possible + c.e_bl_missing + c.e_bb_missing == c.total_pairs
    assert c.e_total_existing == c.e_ss_existing + c.e_sb_existing
    assert c.e_impossible == c.e_bl_missing + c.e_bb_missing
    assert c.total_missing == pytest.approx(c.total_pairs - c.e_total_existing)
    assert 0 <= c.frac_ss_existing <= 1
    assert 0 <= c.frac_sb_missing <= 1


def test_clique_row():
    c = analytic_census(row_spec(CLIQUE_ROWS[0], StructureKind.clique()))
    assert c.e_ss_existing == 2240
    assert c.e_sb_existing == 30720
    assert c.e_total_existing == 32960
    assert c.e_ss_missing == 0
    check_invariants(c)


def test_lattice_row():
    c = analytic_census(row_spec(LATTICE_ROWS[0], StructureKind.lattice()))
    assert c.e_ss_existing == 1120
    assert c.e_total_existing == 31840
    check_invariants(c)


def test_no_bridges():
    c = analytic_census(GraphSpec(0, 0, 3, StructureKind.lattice(), 4))
    assert c.e_sb_possible == 0 and c.e_sb_missing == 0 and c.e_bb_missing == 0
    check_invariants(c)


def test_two_triangles_empirical():
    g = generate(GraphSpec(0, 0, 2, StructureKind.clique(), 3, seed=1))
    c = empirical_census(g)
    assert c.e_ss_existing == 6
    assert c.e_bl_missing == 9
    assert c.e_sb_possible == c.e_sb_existing == c.e_sb_missing == c.e_bb_missing == 0
    check_invariants(c)


def test_generated_table_row_census():
    spec = row_spec(CLIQUE_ROWS[0], StructureKind.clique(), seed=3)
    c = empirical_census(generate(spec))
    assert c.e_ss_existing == 2240
    sd = np.sqrt(spec.n_bridge * spec.n_structure_nodes * spec.bridge_prob * (1 - spec.bridge_prob))
    assert abs(c.e_sb_existing - 30720) < 4 * sd


@pytest.mark.parametrize("kind", KINDS, ids=lambda kd: kd.label)
@pytest.mark.parametrize("k,m,nb,db", [(2, 3, 5, 2), (4, 2, 9, 3.5), (3, 5, 0, 0), (5, 1, 12, 4)])
def test_empirical_matches_analytic(kind, k, m, nb, db):
    spec = GraphSpec(nb, db, m, kind, k, seed=17)
    a = analytic_census(spec)
    e = empirical_census(generate(spec))
    for f in DETERMINISTIC:
        assert getattr(a, f) == getattr(e, f), f
    check_invariants(a)
    check_invariants(e)


def test_empirical_matches_brute_force_classification():
    spec = GraphSpec(5, 3, 3, StructureKind.lattice_diag(2), 3, seed=4)
    g = generate(spec)
    edges = {tuple(x) for x in g.edges.tolist()}
    counts = {"ss_e": 0, "ss_m": 0, "sb_e": 0, "sb_m": 0, "bl": 0, "bb": 0}
    blocks = g.blocks
    n = g.n_nodes
    for u in range(n):
        for v in range(u + 1, n):
            bu, bv = blocks[u], blocks[v]
            exists = (u, v) in edges
            if bu == -1 and bv == -1:
                counts["bb"] += 1
            elif bu == -1 or bv == -1:
                counts["sb_e" if exists else "sb_m"] += 1
            elif bu == bv:
                counts["ss_e" if exists else "ss_m"] += 1
            else:
                counts["bl"] += 1
    c = empirical_census(g)
    assert (c.e_ss_existing, c.e_ss_missing, c.e_sb_existing, c.e_sb_missing,
            c.e_bl_missing, c.e_bb_missing) == tuple(counts.values())


def test_clique_has_no_missing_structure_pairs():
    for row in CLIQUE_ROWS:
        assert analytic_census(row_spec(row, StructureKind.clique())).e_ss_missing == 0


def test_corrupted_graph_rejected():
    spec = GraphSpec(3, 1, 2, StructureKind.clique(), 3)
    with pytest.raises(DataFormatError, match="two bridge"):
        empirical_census(from_edges(spec, [[6, 7]]))
    with pytest.raises(DataFormatError, match="different structures"):
        empirical_census(from_edges(spec, [[0, 3]]))
