"""Parameter sweeps: generate, split, score and aggregate over replicates.

Presets
-------
``fig3``
    Lattices with one closed diagonal, ``k=8``, ``D_B=5`` and ``N_B = M``
    over ``M`` in 1, 2, 4, ..., 64.
``fig4_clique`` / ``fig4_lattice``
    ``N=3200`` nodes, ``D_B=12``, ``k=8``, structure fraction ``C_S`` in
    0.2 .. 0.9 (eight points). The number of structures follows from
    ``N_S = C_S * N``: 8-node cliques or 64-node lattices.
``fig5_lattice`` / ``fig5_diag``
    ``M=4`` lattices (plain or with one closed diagonal), ``C_S = 0.75``,
    ``D_B=5``, side ``k`` in 3 .. 12. ``N_B = round(N_S / 3)``, so C_S is
    exactly 0.75 only when 3 divides ``k``.

Every (point, replicate) task draws its graph and evaluation seeds from
``derive_seed(base_seed, point, replicate, ...)``, so results do not depend
on how tasks are scheduled.
"""

from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from synthlink.analytic import ideal_auc, planted_probabilities, planted_sbm_auc
from synthlink.census import analytic_census
from synthlink.errors import ConfigurationError, SynthLinkError
from synthlink.evaluation import AucSummary, aggregate, eval_set_auc
from synthlink.formats import spec_header, write_edge_list, write_roles
from synthlink.graphgen import GraphSpec, StructureKind, generate
from synthlink.predict import ObservedGraph, get_predictor, score_pairs
from synthlink.rng import derive_seed
from synthlink.split import build_eval_set

log = logging.getLogger(__name__)

PRESETS = ("fig3", "fig4_clique", "fig4_lattice", "fig5_lattice", "fig5_diag")

FIG3_GRID = (1, 2, 4, 8, 16, 32, 64)
FIG4_FRACTIONS = (0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
FIG4_N = 3200
FIG5_K = tuple(range(3, 13))
FIG5_DB = 5

CSV_COLUMNS = (
    "sweep_param", "sweep_value", "N_B", "D_B", "M", "kind", "k", "predictor",
    "auc_mean", "auc_var", "n_replicates", "ideal_auc", "planted_auc", "base_seed",
)


@dataclass(frozen=True)
class SweepPoint:
    spec: GraphSpec
    sweep_param: str = "point"
    sweep_value: object = 0


def _fig4(kind: StructureKind) -> list[SweepPoint]:
    w = kind.size(8)
    points = []
    for cs in FIG4_FRACTIONS:
        n_s = int(round(cs * FIG4_N))
        spec = GraphSpec(FIG4_N - n_s, 12, n_s // w, kind, 8)
        points.append(SweepPoint(spec, "C_S", cs))
    return points


def preset_points(preset: str) -> list[SweepPoint]:
    key = preset.replace("-", "_")
    if key == "fig3":
        kind = StructureKind.lattice_diag(1)
        return [SweepPoint(GraphSpec(m, 5, m, kind, 8), "M", m) for m in FIG3_GRID]
    if key == "fig4_clique":
        return _fig4(StructureKind.clique())
    if key == "fig4_lattice":
        return _fig4(StructureKind.lattice())
    if key in ("fig5_lattice", "fig5_diag"):
        kind = StructureKind.lattice() if key == "fig5_lattice" else StructureKind.lattice_diag(1)
        points = []
        for k in FIG5_K:
            n_s = 4 * k * k
            spec = GraphSpec(int(round(n_s / 3)), FIG5_DB, 4, kind, k)
            points.append(SweepPoint(spec, "k", k))
        return points
    raise ConfigurationError(f"unknown preset {preset!r}; expected one of {PRESETS}")


def preset_specs(preset: str) -> list[GraphSpec]:
    return [p.spec for p in preset_points(preset)]


@dataclass(frozen=True)
class SweepConfig:
    preset: str
    points: tuple
    predictors: tuple
    n_replicates: int = 10
    base_seed: int = 0
    holdout_fraction: float = 0.1

    def __post_init__(self):
        if not self.points:
            raise ConfigurationError("sweep has no points")
        if not self.predictors:
            raise ConfigurationError("sweep has no predictors")
        if self.n_replicates < 1:
            raise ConfigurationError("n_replicates must be >= 1")
        if not 0.0 < self.holdout_fraction < 1.0:
            raise ConfigurationError("holdout_fraction must lie in (0, 1)")
        for name in self.predictors:
            get_predictor(name)

    @classmethod
    def from_preset(cls, preset, predictors, n_replicates=10, base_seed=0, holdout_fraction=0.1):
        return cls(
            preset.replace("-", "_"),
            tuple(preset_points(preset)),
            tuple(predictors),
            n_replicates,
            base_seed,
            holdout_fraction,
        )


def load_config(path) -> SweepConfig:
    """Read a JSON sweep config.

    Keys: ``predictors`` (list), optional ``n_replicates``, ``base_seed``,
    ``holdout_fraction``, and either ``preset`` or ``points`` - a list of
    objects with the spec keys ``n_bridge``, ``bridge_degree``,
    ``n_structures``, ``kind``, ``diagonals``, ``k`` plus optional
    ``sweep_param`` / ``sweep_value``.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigurationError(f"{path}: top level must be an object")
    common = dict(
        n_replicates=int(raw.get("n_replicates", 10)),
        base_seed=int(raw.get("base_seed", 0)),
        holdout_fraction=float(raw.get("holdout_fraction", 0.1)),
    )
    predictors = raw.get("predictors")
    if not isinstance(predictors, list):
        raise ConfigurationError(f"{path}: 'predictors' must be a list")
    if "preset" in raw and "points" in raw:
        raise ConfigurationError(f"{path}: give either 'preset' or 'points', not both")
    if "preset" in raw:
        return SweepConfig.from_preset(raw["preset"], predictors, **common)
    points = []
    for i, p in enumerate(raw.get("points") or []):
        spec = GraphSpec.from_dict(p)
        points.append(SweepPoint(spec, str(p.get("sweep_param", "point")), p.get("sweep_value", i)))
    return SweepConfig("custom", tuple(points), tuple(predictors), **common)


@dataclass(frozen=True)
class SweepRow:
    point_index: int
    point: SweepPoint
    predictor: str
    summary: AucSummary
    ideal_auc: float
    planted_auc: float


@dataclass
class SweepResult:
    rows: list = field(default_factory=list)
    base_seed: int = 0
    # (point, replicate) -> EvalSet fingerprint shared by all predictors
    fingerprints: dict = field(default_factory=dict)


def point_ceilings(spec: GraphSpec) -> tuple[float, float]:
    """(ideal AUC, planted block-model AUC); NaN where undefined."""
    census = analytic_census(spec)
    try:
        ideal = ideal_auc(census)
    except ConfigurationError:
        return math.nan, math.nan
    try:
        planted = planted_sbm_auc(census, planted_probabilities(spec))
    except ConfigurationError:
        planted = math.nan
    return ideal, planted


def run_replicate(config: SweepConfig, point_index: int, replicate: int, emit_dir=None):
    """One task: returns ``(fingerprint, {predictor: auc})``."""
    point = config.points[point_index]
    try:
        graph_seed = derive_seed(config.base_seed, point_index, replicate, 0)
        eval_seed = derive_seed(config.base_seed, point_index, replicate, 1)
        graph = generate(point.spec.with_seed(graph_seed))
        es = build_eval_set(graph, config.holdout_fraction, eval_seed)
        observed = ObservedGraph(es.observed, graph.n_nodes)
        pairs = es.candidate_pairs
        aucs = {}
        for name in config.predictors:
            scores = score_pairs(name, pairs, observed=observed, graph=graph, seed=eval_seed)
            aucs[name] = eval_set_auc(es, scores)
        if emit_dir is not None:
            emit_split(Path(emit_dir), point_index, replicate, graph, es)
    except SynthLinkError as exc:
        raise type(exc)(f"point {point_index}, replicate {replicate}: {exc}") from exc
    return es.fingerprint(), aucs


def split_dir_name(point_index: int, replicate: int) -> str:
    return f"point{point_index:03d}_rep{replicate:02d}"


def emit_split(root: Path, point_index: int, replicate: int, graph, es):
    """Write graph, roles and the three split files for offline scoring."""
    d = root / split_dir_name(point_index, replicate)
    d.mkdir(parents=True, exist_ok=True)
    split_meta = f"holdout_fraction={es.holdout_fraction} seed={es.seed} replicate={replicate}"
    write_edge_list(d / "graph.edges", graph.edges, graph.spec, [f"role=graph replicate={replicate}"])
    write_roles(d / "graph.roles", graph, [spec_header(graph.spec)])
    write_edge_list(d / "observed.edges", es.observed, graph.spec, [f"role=observed {split_meta}"])
    write_edge_list(d / "heldout.edges", es.heldout, graph.spec, [f"role=heldout {split_meta}"])
    write_edge_list(d / "negatives.edges", es.negatives, graph.spec, [f"role=negatives {split_meta}"])


def _task(args):
    config, i, r, emit_dir = args
    return run_replicate(config, i, r, emit_dir)


def run_sweep(config: SweepConfig, workers: int = 1, emit_dir=None) -> SweepResult:
    """Run every (point, replicate) task and aggregate per predictor."""
    tasks = [
        (config, i, r, emit_dir)
        for i in range(len(config.points))
        for r in range(config.n_replicates)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outputs = list(pool.map(_task, tasks))
    else:
        outputs = [_task(t) for t in tasks]

    result = SweepResult(base_seed=config.base_seed)
    per_point: dict[int, dict[str, list[float]]] = {}
    for (_, i, r, _), (fp, aucs) in zip(tasks, outputs):
        result.fingerprints[(i, r)] = fp
        bucket = per_point.setdefault(i, {name: [] for name in config.predictors})
        for name, value in aucs.items():
            bucket[name].append(value)

    for i, point in enumerate(config.points):
        ideal, planted = point_ceilings(point.spec)
        for name in config.predictors:
            summary = aggregate(per_point[i][name])
            result.rows.append(SweepRow(i, point, name, summary, ideal, planted))
        log.info("point %d (%s=%s) done", i, point.sweep_param, point.sweep_value)
    return result


def _fmt(x) -> str:
    if isinstance(x, float):
        return "nan" if math.isnan(x) else repr(x)
    return str(x)


def csv_rows(result: SweepResult) -> list[dict]:
    rows = []
    for row in result.rows:
        s = row.point.spec
        rows.append({
            "sweep_param": row.point.sweep_param,
            "sweep_value": row.point.sweep_value,
            "N_B": s.n_bridge,
            "D_B": s.bridge_degree,
            "M": s.n_structures,
            "kind": s.kind.label,
            "k": s.k,
            "predictor": row.predictor,
            "auc_mean": row.summary.mean,
            "auc_var": row.summary.variance,
            "n_replicates": row.summary.n_replicates,
            "ideal_auc": row.ideal_auc,
            "planted_auc": row.planted_auc,
            "base_seed": result.base_seed,
        })
    return rows


def write_csv(result: SweepResult, path, header_lines=()):
    """Header row plus one row per (point, predictor); floats use repr."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for h in header_lines:
            fh.write(f"# {h}\n")
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for r in csv_rows(result):
            fh.write(",".join(_fmt(r[c]) for c in CSV_COLUMNS) + "\n")


def summaries_by_point(result: SweepResult, predictor: str) -> list[AucSummary]:
    return [r.summary for r in result.rows if r.predictor == predictor]


def ceilings_by_point(result: SweepResult) -> np.ndarray:
    seen = {}
    for r in result.rows:
        seen.setdefault(r.point_index, (r.ideal_auc, r.planted_auc))
    return np.asarray([seen[i] for i in sorted(seen)])
