"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

The lines are printed in the pytest terminal summary (see conftest.py) and
also when this file is run directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import functools
import sys

import numpy as np
import pytest

from conftest import brute_auc
from reference_tables import CLIQUE_ROWS, LATTICE_ROWS, row_spec
from synthlink.analytic import ideal_auc, planted_probabilities, planted_sbm_auc
from synthlink.bench import PRESETS, SweepConfig, SweepPoint, preset_points, run_sweep
from synthlink.census import analytic_census, empirical_census
from synthlink.cli import main as cli_main
from synthlink.evaluation import auc, roc_curve
from synthlink.graphgen import GraphSpec, StructureKind, generate
from synthlink.predict import ScoredPairs, import_scores, write_scores

RESULTS: list[str] = []

CLIQUE = StructureKind.clique()
LATTICE = StructureKind.lattice()
TABLE_SPECS = [row_spec(r, CLIQUE) for r in CLIQUE_ROWS] + [row_spec(r, LATTICE) for r in LATTICE_ROWS]
TABLE_ROWS = CLIQUE_ROWS + LATTICE_ROWS
# first lattice row with a bridge degree high enough that p = 0.075 > q = 1/18
P_GT_Q_SPEC = GraphSpec(2560, 48, 10, LATTICE, 8)
REPLICATES = 10


def record(number: int, ok: bool, detail: str):
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


@functools.lru_cache(maxsize=None)
def oracle_sweep():
    points = tuple(SweepPoint(s) for s in TABLE_SPECS) + (SweepPoint(P_GT_Q_SPEC),)
    cfg = SweepConfig("custom", points, ("oracle-ideal", "planted-sbm"), REPLICATES, base_seed=0)
    return run_sweep(cfg, workers=4)


def test_criterion_01_census_exactness():
    bad = []
    for spec, row in zip(TABLE_SPECS, TABLE_ROWS):
        c = analytic_census(spec)
        if c.e_total_existing != row[5] or c.e_sb_existing != row[6]:
            bad.append((spec.kind.label, row[3], c.e_total_existing, c.e_sb_existing))
    record(1, not bad, f"16 table rows, L and L_B exact; mismatches={bad}")


def test_criterion_02_empirical_census():
    exact_fields = ("e_ss_possible", "e_ss_existing", "e_ss_missing", "e_sb_possible",
                    "e_bl_missing", "e_bb_missing", "e_impossible")
    worst_hits, failures = REPLICATES, []
    for spec in TABLE_SPECS:
        a = analytic_census(spec)
        se = np.sqrt(spec.n_bridge * spec.n_structure_nodes * spec.bridge_prob * (1 - spec.bridge_prob))
        hits = 0
        for r in range(REPLICATES):
            e = empirical_census(generate(spec.with_seed(1000 + r)))
            for f in exact_fields:
                if getattr(e, f) != getattr(a, f):
                    failures.append((spec.kind.label, spec.structure_fraction, r, f))
            hits += abs(e.e_sb_existing - a.e_sb_existing) <= 4 * se
        worst_hits = min(worst_hits, hits)
    ok = not failures and worst_hits >= 9
    record(2, ok, f"deterministic-field mismatches={len(failures)}; "
                  f"min replicates with E_SB within 4 SE = {worst_hits}/10")


def test_criterion_03_ideal_oracle_agreement():
    res = oracle_sweep()
    devs = [abs(r.summary.mean - r.ideal_auc) for r in res.rows
            if r.predictor == "oracle-ideal" and r.point_index < len(TABLE_SPECS)]
    record(3, max(devs) <= 0.01, f"max |MC mean - ideal_auc| over 16 rows = {max(devs):.4f} (tol 0.01)")


def test_criterion_04_planted_agreement():
    res = oracle_sweep()
    rows = [r for r in res.rows if r.predictor == "planted-sbm"]
    devs = [abs(r.summary.mean - r.planted_auc) for r in rows]
    branches = []
    for r in rows:
        probs = planted_probabilities(r.point.spec)
        c = analytic_census(r.point.spec)
        branches.append(("p>q" if probs.p > probs.q else "q>p", c.e_ss_missing > 0))
    covered = {("q>p", False), ("q>p", True), ("p>q", True)} <= set(branches)
    record(4, covered and max(devs) <= 0.01,
           f"max |MC mean - planted_auc| over 17 configs = {max(devs):.4f} (tol 0.01); "
           f"branches covered={sorted(set(branches))}")


def test_criterion_05_clique_degeneracy():
    gaps = []
    for spec in TABLE_SPECS[:8]:
        c = analytic_census(spec)
        gaps.append(abs(planted_sbm_auc(c, planted_probabilities(spec)) - ideal_auc(c)))
    record(5, max(gaps) <= 1e-12, f"max |planted - ideal| on clique rows = {max(gaps):.2e}")


def test_criterion_06_adamic_adar_shape():
    means = {}
    for preset in ("fig4_lattice", "fig4_clique"):
        res = run_sweep(SweepConfig.from_preset(preset, ["adamic-adar"], REPLICATES, 0), workers=4)
        means[preset] = np.array([r.summary.mean for r in res.rows])
    lat, cli = means["fig4_lattice"], means["fig4_clique"]
    near_half = np.abs(lat - 0.5) <= 0.03
    gap = cli - lat
    increasing = bool(np.all(np.diff(cli) > 0))
    ok = bool(near_half.all() and np.all(gap >= 0.1) and increasing)
    record(6, ok,
           f"lattice AA={np.round(lat, 4).tolist()} (within 0.5+-0.03 at {int(near_half.sum())}/8); "
           f"clique-lattice gap={np.round(gap, 4).tolist()} (>=0.1 at {int((gap >= 0.1).sum())}/8); "
           f"clique increasing={increasing}")


def test_criterion_07_ceiling_shape():
    turning = {}
    for preset in ("fig4_clique", "fig4_lattice"):
        vals = np.array([ideal_auc(analytic_census(p.spec)) for p in preset_points(preset)])
        signs = np.sign(np.diff(vals))
        turning[preset] = int(np.sum(signs[1:] != signs[:-1]))
    ok = all(v >= 1 for v in turning.values())
    record(7, ok, f"sign changes of successive ideal_auc differences: {turning}")


def _corpus(n_lists=1000, seed=20240):
    rng = np.random.default_rng(seed)
    for _ in range(n_lists):
        n_pos, n_neg = rng.integers(1, 60, size=2)
        levels = rng.integers(2, 12)
        # coarse grid forces ties within and across classes
        pos = rng.integers(0, levels, n_pos) / levels
        neg = rng.integers(0, levels, n_neg) / levels
        if rng.random() < 0.5:
            pos = pos + rng.normal(0, 1e-3, n_pos) * (rng.random(n_pos) < 0.3)
        yield pos, neg


def test_criterion_08_evaluator(tmp_path):
    worst_brute = worst_trap = worst_trip = 0.0
    for i, (pos, neg) in enumerate(_corpus()):
        a = auc(pos, neg)
        worst_brute = max(worst_brute, abs(a - brute_auc(pos, neg)))
        worst_trap = max(worst_trap, abs(roc_curve(pos, neg).area() - a))
        if i % 10 == 0:
            n_pos = len(pos)
            pairs = np.array([[j, 10_000 + j] for j in range(n_pos + len(neg))])
            path = tmp_path / f"s{i}.scores"
            write_scores(path, ScoredPairs(pairs, np.concatenate([pos, neg]), "synthetic"))
            back = import_scores(path)
            b = auc(back.lookup(pairs[:n_pos]), back.lookup(pairs[n_pos:]))
            worst_trip = max(worst_trip, abs(b - a))
    ok = worst_brute <= 1e-12 and worst_trap <= 1e-12 and worst_trip == 0.0
    record(8, ok, f"1000 lists: max|auc-brute|={worst_brute:.1e}, max|trapezoid-auc|={worst_trap:.1e}, "
                  f"score-file round trip max diff={worst_trip:.1e}")


def test_criterion_09_determinism(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    argv = ["sweep", "--preset", "fig4-lattice", "--seed", "7", "--out", "results.csv"]
    codes, blobs = [], []
    for _ in range(2):
        codes.append(cli_main(argv))
        blobs.append((tmp_path / "results.csv").read_bytes())
        (tmp_path / "results.csv").unlink()
    capsys.readouterr()
    ok = codes == [0, 0] and blobs[0] == blobs[1]
    record(9, ok, f"exit codes={codes}; identical bytes={blobs[0] == blobs[1]} ({len(blobs[0])} bytes)")


def test_criterion_10_null_model():
    worst, total, failing = 0.0, 0, []
    for preset in PRESETS:
        res = run_sweep(SweepConfig.from_preset(preset, ["random"], REPLICATES, 0), workers=4)
        for r in res.rows:
            s = r.summary
            z = abs(s.mean - 0.5) / s.stderr
            worst = max(worst, z)
            total += 1
            if z > 4:
                failing.append((preset, r.point.sweep_value))
    record(10, not failing, f"{total} preset points; max |mean-0.5|/stderr = {worst:.2f} (limit 4); "
                            f"failing={failing}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
