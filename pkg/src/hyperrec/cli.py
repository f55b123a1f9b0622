"""Command-line surface.

Every command reads plain hyperedge lists (or weighted edge lists), accepts
``--seed`` and ``--out``, and records a manifest (inputs with checksums,
flags, seeds, library versions) sufficient to reproduce its output: JSON
outputs embed it under ``"manifest"``, file outputs get a sibling
``<out>.manifest.json``.  Data or validation problems exit 1 with a
single-line JSON error on stderr; usage problems exit 2.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .baselines import baseline_clique_cover, baseline_max_clique, baseline_multiplicity
from .classifier import Model, TrainConfig, train as train_model
from .cliques import maximal_cliques
from .datasets import BETA_PRESETS
from .diagnostics import error_partition, property_vector, rho_table, write_rho_csv
from .features import MotifContext, extract_matrix, write_feature_csv
from .hypergraph import (
    FormatError,
    load_hyperedges,
    load_weighted_edges,
    project,
    save_hyperedges,
)
from .pipeline import (
    evaluate_partitioned,
    feature_ablation,
    jaccard,
    run_pipeline,
    tune_beta,
)
from .sampler import (
    ABLATION_KINDS,
    SamplerPlan,
    ablation_sampler,
    draw_candidates,
    optimize_plan,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 2 with a JSON diagnostic, like data errors
        raise _UsageError(message)


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _manifest(args: argparse.Namespace, inputs: list[str]) -> dict:
    return {
        "command": args.command,
        "argv": sys.argv[1:],
        "inputs": {p: _sha256(p) for p in inputs if p and Path(p).is_file()},
        "seed": getattr(args, "seed", None),
        "versions": {
            "hyperrec": __version__,
            "numpy": np.__version__,
            "python": sys.version.split()[0],
        },
        "unix_time": int(time.time()),
    }


def _emit(args: argparse.Namespace, payload: dict, inputs: list[str]) -> None:
    payload = dict(payload)
    payload["manifest"] = _manifest(args, inputs)
    text = json.dumps(payload, indent=2, sort_keys=True)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n", encoding="utf-8")
        print(args.out)
    else:
        print(text)


def _emit_edges(args: argparse.Namespace, edges, inputs: list[str], summary: dict) -> None:
    if getattr(args, "out", None):
        save_hyperedges(args.out, edges)
        Path(args.out + ".manifest.json").write_text(
            json.dumps(_manifest(args, inputs), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        summary = dict(summary)
        summary["out"] = args.out
        print(json.dumps(summary, sort_keys=True))
    else:
        for edge in edges:
            print(" ".join(str(v) for v in edge))


def _load_h(path: str):
    return load_hyperedges(path).hypergraph


def _beta(value: str | int):
    if isinstance(value, int):
        return value
    if value == "auto":
        return "auto"
    if value in BETA_PRESETS:
        return BETA_PRESETS[value]
    return int(float(value))


def _text_report(data: dict) -> str:
    lines = [f"{key}: {value}" for key, value in data.items() if key != "manifest"]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_project(args) -> int:
    h = _load_h(args.input)
    g = project(h, with_multiplicity=args.multiplicity)
    rows = (
        [f"{u} {v} {g.multiplicity[(u, v)]}" for u, v in sorted(g.edges)]
        if args.multiplicity
        else [f"{u} {v}" for u, v in sorted(g.edges)]
    )
    if args.out:
        Path(args.out).write_text("\n".join(rows) + ("\n" if rows else ""), encoding="utf-8")
        Path(args.out + ".manifest.json").write_text(
            json.dumps(_manifest(args, [args.input]), indent=2, sort_keys=True) + "\n"
        )
        print(json.dumps({"nodes": g.node_count, "edges": len(g.edges), "out": args.out}))
    else:
        print("\n".join(rows))
    return 0


def _cmd_analyze(args) -> int:
    h = _load_h(args.input)
    cliques = maximal_cliques(project(h))
    report = error_partition(h, cliques)
    table = rho_table(h, cliques)
    if args.rho_out:
        write_rho_csv(args.rho_out, table)
    payload = report.to_dict()
    payload["property_vector"] = property_vector(h).to_dict()
    payload["rho_cells"] = len(table.cells)
    if args.format == "text":
        print(_text_report(payload))
        return 0
    _emit(args, payload, [args.input])
    return 0


def _cmd_optimize_sampler(args) -> int:
    h = _load_h(args.train)
    table = rho_table(h)
    plan = optimize_plan(table, _beta(args.beta))
    if args.out:
        plan.save(args.out)
        Path(args.out + ".manifest.json").write_text(
            json.dumps(_manifest(args, [args.train]), indent=2, sort_keys=True) + "\n"
        )
        print(json.dumps({"expected_yield": plan.expected_yield, "out": args.out}))
    else:
        print(plan.to_json())
    return 0


def _cmd_sample(args) -> int:
    h = _load_h(args.input)
    g = project(h)
    cliques = maximal_cliques(g)
    plan = SamplerPlan.load(args.plan)
    candidates = draw_candidates(g, cliques, plan, seed=args.seed, truth=h)
    summary = {
        "candidates": len(candidates),
        "true_hyperedges": int(sum(candidates.labels or ())),
    }
    _emit_edges(args, candidates.candidates, [args.input, args.plan], summary)
    return 0


def _cmd_train(args) -> int:
    from .pipeline import HypergraphReconstructor

    h0 = _load_h(args.train)
    rec = HypergraphReconstructor(
        beta=_beta(args.beta),
        extractor=args.features,
        epochs=args.epochs,
        learning_rate=args.learning_rate,
        class_weight=None if args.no_class_weight else "balanced",
        threshold=args.threshold,
        seed=args.seed,
    ).fit(h0)
    if args.plan_out:
        rec.plan_.save(args.plan_out)
    if args.dump_features:
        g0 = project(h0)
        m0 = maximal_cliques(g0)
        cands = draw_candidates(g0, m0, rec.plan_, seed=args.seed, truth=h0)
        matrix = extract_matrix(cands.candidates, MotifContext(g0, m0), args.features)
        write_feature_csv(args.dump_features, matrix, args.features, cands.candidates)
    if args.out:
        rec.model_.save(args.out)
        Path(args.out + ".manifest.json").write_text(
            json.dumps(_manifest(args, [args.train]), indent=2, sort_keys=True) + "\n"
        )
    print(
        json.dumps(
            {
                "beta": rec.beta_,
                "training_recall": rec.training_recall_,
                "train_candidates": rec.train_candidate_count_,
                "train_positives": rec.train_positive_count_,
                "model": args.out,
            },
            sort_keys=True,
        )
    )
    return 0


def _cmd_reconstruct(args) -> int:
    from .classifier import classify

    h1 = _load_h(args.query)
    g1 = project(h1)
    cliques = maximal_cliques(g1)
    plan = SamplerPlan.load(args.plan)
    model = Model.load(args.model)
    candidates = draw_candidates(g1, cliques, plan, seed=args.seed)
    recon = classify(model, candidates, MotifContext(g1, cliques))
    _emit_edges(
        args,
        recon,
        [args.query, args.plan, args.model],
        {"reconstructed": len(recon), "candidates": len(candidates)},
    )
    return 0


def _cmd_evaluate(args) -> int:
    truth = _load_h(args.truth)
    predicted = load_hyperedges(args.predicted).hypergraph
    report = evaluate_partitioned(truth, predicted.edge_sets)
    payload = report.to_dict()
    if args.format == "text":
        print(_text_report(payload))
        return 0
    _emit(args, payload, [args.truth, args.predicted])
    return 0


def _cmd_baseline(args) -> int:
    if args.method == "multiplicity":
        if args.weighted_edges:
            g = load_weighted_edges(args.input)
        else:
            g = project(_load_h(args.input), with_multiplicity=True)
        recon = baseline_multiplicity(g, weight=args.weight)
        recon = tuple(dict.fromkeys(recon))
    else:
        g = project(_load_h(args.input))
        recon = (
            baseline_max_clique(g)
            if args.method == "maxclique"
            else baseline_clique_cover(g, seed=args.seed)
        )
    summary = {"method": args.method, "reconstructed": len(recon)}
    if args.truth:
        summary["jaccard"] = jaccard(_load_h(args.truth).edge_sets, recon)
    _emit_edges(args, recon, [args.input, args.truth or ""], summary)
    return 0


def _cmd_pipeline(args) -> int:
    h0 = _load_h(args.train)
    h1 = _load_h(args.query)
    g1 = project(h1)
    cfg = TrainConfig(
        epochs=args.epochs,
        learning_rate=args.learning_rate,
        class_weight=None if args.no_class_weight else "balanced",
        seed=args.seed,
    )
    result = run_pipeline(
        h0,
        g1,
        beta=_beta(args.beta),
        extractor=args.features,
        cfg=cfg,
        seed=args.seed,
        threshold=args.threshold,
    )
    if args.recon_out:
        save_hyperedges(args.recon_out, result.reconstruction)
    report = evaluate_partitioned(h1, result.reconstruction)
    payload = {
        "jaccard": report.jaccard,
        "error1_share": report.error1_share,
        "error2_share": report.error2_share,
        "other_error_share": report.other_error_share,
        "reconstructed": len(result.reconstruction),
        **result.info,
    }
    _emit(args, payload, [args.train, args.query])
    return 0


def _cmd_tune_beta(args) -> int:
    h0 = _load_h(args.train)
    grid = [int(float(b)) for b in args.grid.split(",")]
    cfg = TrainConfig(epochs=args.epochs, learning_rate=args.learning_rate, seed=args.seed)
    best, scores = tune_beta(h0, grid, extractor=args.features, cfg=cfg, seed=args.seed)
    _emit(args, {"best_beta": best, "scores": {str(k): v for k, v in scores.items()}}, [args.train])
    return 0


def _cmd_ablate_features(args) -> int:
    h0 = _load_h(args.train)
    h1 = _load_h(args.query)
    cfg = TrainConfig(epochs=args.epochs, learning_rate=args.learning_rate, seed=args.seed)
    ranking = feature_ablation(
        h0,
        project(h1),
        h1,
        extractor=args.features,
        beta=_beta(args.beta),
        cfg=cfg,
        seed=args.seed,
    )
    _emit(
        args,
        {"ranking": [{"feature": idx, "jaccard_drop": drop} for idx, drop in ranking]},
        [args.train, args.query],
    )
    return 0


def _cmd_ablate_sampler(args) -> int:
    h0 = _load_h(args.train)
    h1 = _load_h(args.query)
    g1 = project(h1)
    m1 = maximal_cliques(g1)
    truth = set(h1.edge_sets)
    beta = _beta(args.beta)
    plan = optimize_plan(rho_table(h0), beta)
    recalls = {}
    plan_candidates = draw_candidates(g1, m1, plan, seed=args.seed)
    recalls["plan"] = sum(1 for c in plan_candidates.candidates if frozenset(c) in truth)
    for kind in args.kinds.split(","):
        cands = ablation_sampler(g1, m1, kind.strip(), beta, seed=args.seed)
        recalls[kind.strip()] = sum(1 for c in cands.candidates if frozenset(c) in truth)
    _emit(
        args,
        {"beta": beta, "true_hyperedges_collected": recalls, "truth_size": len(truth)},
        [args.train, args.query],
    )
    return 0


# ---------------------------------------------------------------------------
# parser wiring
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, out: bool = True) -> None:
    p.add_argument("--seed", type=int, default=0)
    if out:
        p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperrec", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("project", help="project a hypergraph to its pairwise graph")
    p.add_argument("input")
    p.add_argument("--multiplicity", action="store_true")
    _add_common(p)
    p.set_defaults(fn=_cmd_project)

    p = sub.add_parser("analyze", help="error partition, property vector, rho table")
    p.add_argument("input")
    p.add_argument("--rho-out", default=None)
    p.add_argument("--format", choices=("json", "text"), default="json")
    _add_common(p)
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("optimize-sampler", help="fit a sampling plan on training data")
    p.add_argument("train")
    p.add_argument("--beta", required=True)
    _add_common(p)
    p.set_defaults(fn=_cmd_optimize_sampler)

    p = sub.add_parser("sample", help="draw candidate cliques with a plan")
    p.add_argument("input")
    p.add_argument("--plan", required=True)
    _add_common(p)
    p.set_defaults(fn=_cmd_sample)

    p = sub.add_parser("train", help="optimize the sampler and fit the classifier")
    p.add_argument("train")
    p.add_argument("--beta", default="auto")
    p.add_argument("--features", choices=("count", "motif"), default="count")
    p.add_argument("--epochs", type=int, default=2000)
    p.add_argument("--learning-rate", type=float, default=1e-4)
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--no-class-weight", action="store_true")
    p.add_argument("--plan-out", default=None)
    p.add_argument("--dump-features", default=None)
    _add_common(p)
    p.set_defaults(fn=_cmd_train)

    p = sub.add_parser("reconstruct", help="classify sampled candidates of a query")
    p.add_argument("query")
    p.add_argument("--model", required=True)
    p.add_argument("--plan", required=True)
    _add_common(p)
    p.set_defaults(fn=_cmd_reconstruct)

    p = sub.add_parser("evaluate", help="Jaccard score plus mistake partition")
    p.add_argument("truth")
    p.add_argument("predicted")
    p.add_argument("--format", choices=("json", "text"), default="json")
    _add_common(p)
    p.set_defaults(fn=_cmd_evaluate)

    p = sub.add_parser("baseline", help="deterministic reconstruction baselines")
    p.add_argument("method", choices=("maxclique", "cover", "multiplicity"))
    p.add_argument("input")
    p.add_argument("--weighted-edges", action="store_true",
                   help="input is a 'u v w' edge list instead of a hyperedge list")
    p.add_argument("--weight", type=float, default=1.0)
    p.add_argument("--truth", default=None)
    _add_common(p)
    p.set_defaults(fn=_cmd_baseline)

    p = sub.add_parser("pipeline", help="end-to-end supervised reconstruction")
    p.add_argument("--train", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--beta", default="auto")
    p.add_argument("--features", choices=("count", "motif"), default="count")
    p.add_argument("--epochs", type=int, default=2000)
    p.add_argument("--learning-rate", type=float, default=1e-4)
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--no-class-weight", action="store_true")
    p.add_argument("--recon-out", default=None)
    _add_common(p)
    p.set_defaults(fn=_cmd_pipeline)

    p = sub.add_parser("tune-beta", help="pick a budget on a 90/10 training split")
    p.add_argument("--train", required=True)
    p.add_argument("--grid", required=True, help="comma-separated budgets")
    p.add_argument("--features", choices=("count", "motif"), default="count")
    p.add_argument("--epochs", type=int, default=2000)
    p.add_argument("--learning-rate", type=float, default=1e-4)
    _add_common(p)
    p.set_defaults(fn=_cmd_tune_beta)

    p = sub.add_parser("ablate-features", help="rank features by Jaccard drop")
    p.add_argument("--train", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--beta", default="auto")
    p.add_argument("--features", choices=("count", "motif"), default="count")
    p.add_argument("--epochs", type=int, default=2000)
    p.add_argument("--learning-rate", type=float, default=1e-4)
    _add_common(p)
    p.set_defaults(fn=_cmd_ablate_features)

    p = sub.add_parser("ablate-sampler", help="compare the plan against heuristics")
    p.add_argument("--train", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--kinds", default=",".join(ABLATION_KINDS))
    _add_common(p)
    p.set_defaults(fn=_cmd_ablate_sampler)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(json.dumps({"error": str(exc), "kind": "usage"}), file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except (ValueError, OSError, FormatError, KeyError) as exc:
        print(json.dumps({"error": str(exc), "kind": "data"}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
