"""Command-line entry point: ``synthlink <subcommand> ...``.

Exit codes: 0 success, 1 usage or invalid parameters, 2 bad input data or
I/O failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import shlex
import sys
from pathlib import Path

import numpy as np

from synthlink import __version__
from synthlink.analytic import (
    ideal_auc,
    ideal_roc_points,
    planted_probabilities,
    planted_roc_points,
    planted_sbm_auc,
)
from synthlink.bench import SweepConfig, load_config, run_sweep, write_csv
from synthlink.census import analytic_census, empirical_census
from synthlink.errors import ConfigurationError, DataFormatError
from synthlink.evaluation import auc
from synthlink.formats import format_kv, read_edge_list, to_csv, write_edge_list, write_roles
from synthlink.graphgen import GraphSpec, StructureKind, from_edges, generate
from synthlink.predict import (
    PREDICTORS,
    ObservedGraph,
    ScoredPairs,
    import_scores,
    score_pairs,
    write_scores,
)
from synthlink.split import build_eval_set

EDGE_FORMAT = (
    "Edge-list files: UTF-8, one 'u<TAB>v' pair per line (0-indexed, u < v); "
    "lines starting with '#' are comments and the first one records the "
    "graph spec as key=value pairs."
)
SCORE_FORMAT = "Score files: 'u<TAB>v<TAB>score' per line, '#' comments."


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


_argv_for_header: list[str] = []


def provenance(seed=None) -> str:
    d = {"tool": "synthlink", "version": __version__, "argv": shlex.join(_argv_for_header)}
    if seed is not None:
        d["seed"] = seed
    return format_kv(d)


def _add_spec_flags(p, required=True):
    g = p.add_argument_group("graph spec")
    g.add_argument("--m", type=int, required=required, help="number of structures M")
    g.add_argument("--k", type=int, required=required, help="clique size or lattice side k")
    g.add_argument(
        "--structure", choices=["clique", "lattice", "lattice-diag"], required=required,
        help="structure type",
    )
    g.add_argument("--diagonals", type=int, choices=[1, 2], default=None,
                   help="closed diagonals per lattice cell (lattice-diag only, default 1)")
    g.add_argument("--nb", type=int, default=None if not required else 0,
                   help="number of bridge nodes N_B (default 0)")
    g.add_argument("--db", type=float, default=None if not required else 0.0,
                   help="expected bridge degree D_B (default 0)")
    g.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")


def _spec_from_args(args) -> GraphSpec:
    if args.structure == "lattice-diag":
        kind = StructureKind.lattice_diag(args.diagonals or 1)
    else:
        if args.diagonals is not None:
            raise UsageError("--diagonals only applies to --structure lattice-diag")
        kind = StructureKind(args.structure)
    db = args.db if args.db is not None else 0.0
    db = int(db) if float(db).is_integer() else db
    return GraphSpec(args.nb or 0, db, args.m, kind, args.k, args.seed)


def _spec_flags_given(args) -> bool:
    return any(getattr(args, f) is not None for f in ("m", "k", "structure", "nb", "db"))


def _emit(rows: list[dict], fmt: str, out):
    if fmt == "csv":
        out.write(to_csv(rows))
    else:
        for r in rows:
            for k, v in r.items():
                out.write(f"{k}={v}\n")


def cmd_generate(args):
    spec = _spec_from_args(args)
    graph = generate(spec)
    out = Path(args.out)
    roles = Path(args.roles) if args.roles else out.with_suffix(".roles")
    write_edge_list(out, graph.edges, spec, [provenance(spec.seed)])
    write_roles(roles, graph, [provenance(spec.seed)])
    print(f"wrote {graph.n_edges} edges on {graph.n_nodes} nodes to {out} (roles: {roles})")


def _load_graph(path):
    spec, meta, edges = read_edge_list(path)
    if spec is None:
        raise DataFormatError(f"{path}: missing graph spec header line")
    return from_edges(spec, edges), meta


def cmd_census(args):
    if args.graph and _spec_flags_given(args):
        raise UsageError("--graph and spec flags are mutually exclusive")
    if args.graph:
        graph, _ = _load_graph(args.graph)
        census = empirical_census(graph)
    else:
        if args.m is None or args.k is None or args.structure is None:
            raise UsageError("give --graph or all of --m, --k, --structure")
        census = analytic_census(_spec_from_args(args))
    row = census.as_dict()
    row["total_missing"] = census.total_missing
    _emit([row], args.format, sys.stdout)


def cmd_analytic(args):
    spec = _spec_from_args(args)
    census = analytic_census(spec)
    row = {"ideal_auc": ideal_auc(census)}
    try:
        probs = planted_probabilities(spec)
    except ConfigurationError:
        probs = None
    row["planted_auc"] = planted_sbm_auc(census, probs) if probs else float("nan")
    row["p"] = spec.bridge_prob
    row["q"] = probs.q if probs else float("nan")
    for name, pt in zip("ABC", ideal_roc_points(census)):
        row[f"ideal_{name}_fpr"], row[f"ideal_{name}_tpr"] = pt
    if probs:
        for name, pt in zip("ABCD", planted_roc_points(census, probs)):
            row[f"planted_{name}_fpr"], row[f"planted_{name}_tpr"] = pt
    _emit([row], args.format, sys.stdout)


def cmd_split(args):
    graph, _ = _load_graph(args.graph)
    es = build_eval_set(graph, args.fraction, args.seed)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    meta = f"holdout_fraction={args.fraction} seed={args.seed}"
    prov = provenance(args.seed)
    write_edge_list(out / "observed.edges", es.observed, graph.spec, [f"role=observed {meta}", prov])
    write_edge_list(out / "heldout.edges", es.heldout, graph.spec, [f"role=heldout {meta}", prov])
    write_edge_list(out / "negatives.edges", es.negatives, graph.spec, [f"role=negatives {meta}", prov])
    print(f"observed={len(es.observed)} heldout={len(es.heldout)} negatives={len(es.negatives)}")


def _load_split(split_dir):
    d = Path(split_dir)
    spec, meta, observed = read_edge_list(d / "observed.edges")
    _, _, heldout = read_edge_list(d / "heldout.edges")
    _, _, negatives = read_edge_list(d / "negatives.edges")
    if spec is None:
        raise DataFormatError(f"{d / 'observed.edges'}: missing graph spec header line")
    if len(heldout) != len(negatives):
        raise DataFormatError(f"{d}: {len(heldout)} held-out pairs but {len(negatives)} negatives")
    return spec, meta, observed, heldout, negatives


def cmd_predict(args):
    spec, meta, observed, heldout, negatives = _load_split(args.split_dir)
    pairs = np.concatenate([heldout, negatives])
    obs = ObservedGraph(observed, spec.n_nodes)
    # oracle predictors need the true allocation, which the spec determines
    graph = from_edges(spec, np.concatenate([observed, heldout]))
    seed = args.seed if args.seed is not None else int(meta.get("seed", 0))
    scores = score_pairs(args.predictor, pairs, observed=obs, graph=graph, seed=seed)
    name = args.predictor.replace("_", "-")
    write_scores(args.out, ScoredPairs(pairs, scores, name), [provenance(seed)])
    print(f"scored {len(pairs)} pairs with {name} -> {args.out}")


def cmd_eval(args):
    _, meta, _, heldout, negatives = _load_split(args.split_dir)
    replicate = args.replicate if args.replicate is not None else meta.get("replicate", 0)
    rows = []
    for path in args.scores:
        scored = import_scores(path)
        pos = scored.lookup(heldout)
        neg = scored.lookup(negatives)
        rows.append({"replicate": replicate, "predictor": scored.predictor_name, "auc": repr(auc(pos, neg))})
    text = to_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"# {provenance()}\n")
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_sweep(args):
    if bool(args.preset) == bool(args.config):
        raise UsageError("give exactly one of --preset or --config")
    if args.config:
        config = load_config(args.config)
        overrides = {}
        if args.predictors:
            overrides["predictors"] = tuple(_split_names(args.predictors))
        if args.replicates is not None:
            overrides["n_replicates"] = args.replicates
        if args.seed is not None:
            overrides["base_seed"] = args.seed
        if overrides:
            config = dataclasses.replace(config, **overrides)
    else:
        config = SweepConfig.from_preset(
            args.preset,
            _split_names(args.predictors or "adamic-adar,oracle-ideal,planted-sbm,random"),
            n_replicates=args.replicates if args.replicates is not None else 10,
            base_seed=args.seed if args.seed is not None else 0,
            holdout_fraction=args.holdout,
        )
    result = run_sweep(config, workers=args.workers, emit_dir=args.emit_splits)
    write_csv(result, args.out, [provenance(config.base_seed)])
    print(f"wrote {len(result.rows)} rows to {args.out}")


def _split_names(text: str) -> list[str]:
    return [t.strip().replace("_", "-") for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="synthlink", description="Synthetic link-prediction benchmarks.")
    p.add_argument("--version", action="version", version=f"synthlink {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="generate a graph", epilog=EDGE_FORMAT +
                       " Roles file: 'node<TAB>role' with role S<i> (1-based) or B.")
    _add_spec_flags(g)
    g.add_argument("--out", required=True, help="edge-list output path")
    g.add_argument("--roles", help="roles output path (default: OUT with suffix .roles)")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("census", help="edge-class counts, analytic (spec flags) or empirical (--graph)",
                       epilog=EDGE_FORMAT)
    _add_spec_flags(c, required=False)
    c.add_argument("--graph", help="edge-list file to count instead of spec flags")
    c.add_argument("--format", choices=["kv", "csv"], default="kv", help="output format")
    c.set_defaults(func=cmd_census)

    a = sub.add_parser("analytic", help="closed-form ideal and planted block-model AUC")
    _add_spec_flags(a)
    a.add_argument("--format", choices=["kv", "csv"], default="kv", help="output format")
    a.set_defaults(func=cmd_analytic)

    s = sub.add_parser("split", help="hold out edges and sample negatives", epilog=EDGE_FORMAT +
                       " Writes observed.edges, heldout.edges and negatives.edges.")
    s.add_argument("--graph", required=True, help="edge-list file from 'generate'")
    s.add_argument("--fraction", type=float, default=0.1, help="held-out fraction (default 0.1)")
    s.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    s.add_argument("--out-dir", required=True, help="directory for the split files")
    s.set_defaults(func=cmd_split)

    pr = sub.add_parser("predict", help="score held-out and negative pairs", epilog=SCORE_FORMAT)
    pr.add_argument("--split-dir", required=True, help="directory written by 'split'")
    pr.add_argument("--predictor", required=True, choices=sorted(PREDICTORS), help="predictor name")
    pr.add_argument("--seed", type=int, default=None, help="seed for 'random' (default: split seed)")
    pr.add_argument("--out", required=True, help="score file output path")
    pr.set_defaults(func=cmd_predict)

    e = sub.add_parser("eval", help="AUC of score files on a split", epilog=SCORE_FORMAT +
                       " Output CSV columns: replicate, predictor, auc.")
    e.add_argument("--split-dir", required=True, help="directory written by 'split'")
    e.add_argument("--scores", nargs="+", required=True, help="one or more score files")
    e.add_argument("--replicate", type=int, default=None, help="replicate label for the rows")
    e.add_argument("--out", help="CSV output path (default stdout)")
    e.set_defaults(func=cmd_eval)

    sw = sub.add_parser(
        "sweep", help="run a parameter sweep",
        epilog="Presets: fig3, fig4-clique, fig4-lattice, fig5-lattice, fig5-diag. "
               "--config takes a JSON object with 'predictors', optional 'n_replicates', "
               "'base_seed', 'holdout_fraction', and either 'preset' or 'points' (list of "
               "spec objects: n_bridge, bridge_degree, n_structures, kind, diagonals, k, "
               "optional sweep_param/sweep_value).",
    )
    sw.add_argument("--preset", help="named parameter grid")
    sw.add_argument("--config", help="JSON sweep config")
    sw.add_argument("--predictors", help=f"comma-separated, from: {', '.join(sorted(PREDICTORS))}")
    sw.add_argument("--replicates", type=int, default=None, help="graphs per point (default 10)")
    sw.add_argument("--seed", type=int, default=None, help="base seed (default 0)")
    sw.add_argument("--holdout", type=float, default=0.1, help="held-out fraction (default 0.1)")
    sw.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")
    sw.add_argument("--emit-splits", help="directory for per-replicate split files")
    sw.add_argument("--out", required=True, help="CSV output path")
    sw.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    _argv_for_header[:] = ["synthlink", *argv]
    try:
        args.func(args)
    except (UsageError, ConfigurationError) as exc:
        print(f"synthlink {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except DataFormatError as exc:
        print(f"synthlink {args.command}: data error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"synthlink {args.command}: I/O error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
