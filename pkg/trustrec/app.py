"""Command-line entry point: ``python -m trustrec <command> [flags]``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from trustrec.core.errors import ConfigurationError, TrustRecError
from trustrec.core.evaluation import (
    DEFAULT_KS,
    ExperimentEntry,
    baseline_entries,
    check_no_leakage,
    cold_start_split,
    dedupe_configs,
    format_results_table,
    headline_configs,
    katz_entry,
    run_experiment,
    sweep_configs,
    write_curve_csv,
    write_metrics_csv,
)
from trustrec.core.graph import (
    Convention,
    IngestedDataset,
    load_dataset,
    load_dataset_bundle,
    save_dataset,
    spectral_radius,
    write_id_maps,
)
from trustrec.core.recommender import (
    MOST_POPULAR,
    TRUST_EXPLICIT,
    TRUST_JACCARD,
    JaccardSets,
    MostPopularRecommender,
    NeighborhoodRecommender,
    baseline_trust_explicit,
    baseline_trust_jaccard,
    write_recommendations,
)
from trustrec.core.similarity import (
    BoostDiagonal,
    BoostSource,
    DegreeNorm,
    KatzConfig,
    RowNorm,
    build_similarity,
    save_similarity,
    truncation_error_bound,
    write_sidecar,
)
from trustrec.utils import logger as logging_setup
from trustrec.utils.run_config import RunConfig, resolve_run_config

logger = logging.getLogger(__name__)

COMMANDS = ("ingest", "eigen", "similarity", "recommend", "evaluate", "sweep")
EXIT_DATA_ERROR = 1
EXIT_CONFIG_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trustrec",
        description="Trust-based collaborative filtering with truncated Katz similarity for cold-start users.",
    )
    parser.add_argument("command", choices=COMMANDS, help="Pipeline stage to run")
    parser.add_argument("--config", type=Path, default=None, help="key=value file (or YAML mapping) whose keys mirror the flag names")
    parser.add_argument("--trust", type=Path, default=None, help="Trust statements file: 'truster trustee [value]'")
    parser.add_argument("--ratings", type=Path, default=None, help="Ratings file: 'user item rating'")
    parser.add_argument("--out", type=Path, default=None, help="Output directory (also holds the ingested dataset)")
    parser.add_argument("--delimiter", type=str, default=None, help="Single-character field delimiter (default: whitespace)")

    katz = parser.add_argument_group("similarity")
    katz.add_argument("--alpha", type=float, default=None, help="Attenuation factor (default 0.008)")
    katz.add_argument("--kmax", type=int, default=None, help="Maximum path length of the Katz sum")
    katz.add_argument("--degree-norm", choices=[m.value for m in DegreeNorm], default=None)
    katz.add_argument("--row-norm", choices=[m.value for m in RowNorm], default=None)
    boost = katz.add_mutually_exclusive_group()
    boost.add_argument("--boost", dest="boost", action="store_true", help="Boost propagated similarities")
    boost.add_argument("--no-boost", dest="boost", action="store_false", help="Disable boosting")
    katz.add_argument("--boost-diag", choices=[m.value for m in BoostDiagonal], default=None)
    katz.add_argument("--boost-source", choices=[m.value for m in BoostSource], default=None)
    katz.add_argument("--convention", choices=[m.value for m in Convention], default=None)
    parser.set_defaults(boost=None)

    rec = parser.add_argument_group("recommendation")
    rec.add_argument("--neighbors", type=int, default=None, help="Number of nearest neighbours (default 60)")
    rec.add_argument("--topn", type=int, default=None, help="Length of each recommendation list (default 10)")
    rec.add_argument("--min-rating", type=float, default=None, help="Only use neighbour ratings at or above this value")
    rec.add_argument("--jaccard-sets", choices=[m.value for m in JaccardSets], default=None)
    rec.add_argument(
        "--method",
        choices=["ks", TRUST_EXPLICIT, TRUST_JACCARD, MOST_POPULAR],
        default="ks",
        help="Recommender used by the 'recommend' command",
    )
    rec.add_argument("--users", type=int, nargs="+", default=None, help="Raw user ids to recommend for (default: cold users)")

    evaluation = parser.add_argument_group("evaluation")
    evaluation.add_argument("--cold-threshold", type=int, default=None, help="Maximum ratings of a cold-start user")
    selection = evaluation.add_mutually_exclusive_group()
    selection.add_argument("--baselines-only", action="store_true", help="Evaluate only MP, Trust_exp and Trust_jac")
    selection.add_argument("--table", action="store_true", help="Evaluate the baselines and the seven headline configurations")
    selection.add_argument("--sweep", action="store_true", help="Evaluate the baselines and every valid configuration")

    runtime = parser.add_argument_group("runtime")
    runtime.add_argument("--seed", type=int, default=None, help="Seed of the eigenvalue estimator's start vector")
    runtime.add_argument("--tol", type=float, default=None, help="Eigenvalue estimator tolerance")
    runtime.add_argument("--max-iter", type=int, default=None, help="Eigenvalue estimator iteration cap")
    runtime.add_argument("--threads", type=int, default=None, help="Worker threads for per-user evaluation")
    runtime.add_argument("--verbose", action="store_true", help="Debug logging for every component")
    return parser


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    overrides = {
        key: getattr(args, key)
        for key in (
            "trust", "ratings", "out", "delimiter", "alpha", "kmax", "degree_norm", "row_norm", "boost",
            "boost_diag", "boost_source", "convention", "neighbors", "topn", "min_rating", "jaccard_sets",
            "cold_threshold", "seed", "tol", "max_iter", "threads",
        )
    }
    return resolve_run_config(overrides, args.config)


def _dataset(run: RunConfig) -> IngestedDataset:
    if run.trust_path and run.ratings_path:
        return load_dataset(run.trust_path, run.ratings_path, run.delimiter, run.katz.convention)
    if run.trust_path or run.ratings_path:
        raise ConfigurationError("--trust and --ratings must be given together")
    dataset = load_dataset_bundle(run.dataset_bundle)
    logger.info(f"Loaded ingested dataset from {run.dataset_bundle}")
    return dataset


def cmd_ingest(run: RunConfig) -> int:
    if not (run.trust_path and run.ratings_path):
        raise ConfigurationError("ingest needs --trust and --ratings")
    dataset = load_dataset(run.trust_path, run.ratings_path, run.delimiter, run.katz.convention)
    save_dataset(
        dataset,
        run.dataset_bundle,
        sources={"trust_path": str(run.trust_path), "ratings_path": str(run.ratings_path)},
    )
    user_path, item_path = write_id_maps(dataset, run.out_dir)
    write_sidecar(user_path, {"kind": "user_ids", "users": len(dataset.user_ids), **run.to_dict()})
    write_sidecar(item_path, {"kind": "item_ids", "items": len(dataset.item_ids), **run.to_dict()})
    logger.info(f"Id maps written to {user_path} and {item_path}")
    print(dataset.stats.summary_line())
    return 0


def cmd_eigen(run: RunConfig) -> int:
    dataset = _dataset(run)
    estimate = spectral_radius(dataset.graph.adjacency, run.eigen_tol, run.eigen_max_iter, run.seed)
    bound = 1.0 / estimate.value if estimate.value > 0 else float("inf")
    tail = truncation_error_bound(run.katz.alpha, estimate.value, run.katz.k_max)
    print(
        f"lambda={estimate.value:.6f} iterations={estimate.iterations} converged={str(estimate.converged).lower()} "
        f"alpha_bound={bound:.6g} alpha={run.katz.alpha:g} truncation_tail={tail:.6g}"
    )
    if run.katz.alpha >= bound:
        logger.warning(f"alpha={run.katz.alpha} exceeds 1/lambda; only the truncated sum is well defined")
    return 0 if estimate.converged else EXIT_DATA_ERROR


def cmd_similarity(run: RunConfig) -> int:
    dataset = _dataset(run)
    similarity = build_similarity(dataset.graph, config=run.katz)
    path = save_similarity(similarity, run.out_dir / f"similarity_{similarity.label}.txt")
    print(
        f"config={similarity.label} nnz={similarity.matrix.nnz} density={similarity.offdiagonal_density:.6g} "
        f"file={path}"
    )
    return 0


def _recommender(run: RunConfig, method: str, dataset: IngestedDataset, train):
    graph = dataset.graph.with_convention(run.katz.convention)
    if method == MOST_POPULAR:
        return MostPopularRecommender(train)
    if method == TRUST_EXPLICIT:
        similarity = baseline_trust_explicit(graph)
    elif method == TRUST_JACCARD:
        similarity = baseline_trust_jaccard(graph, run.jaccard_sets)
    else:
        similarity = build_similarity(graph, config=run.katz)
    return NeighborhoodRecommender(similarity, train, run.k_neighbors, run.min_rating)


def cmd_recommend(run: RunConfig, method: str = "ks", raw_users: Optional[Sequence[int]] = None) -> int:
    dataset = _dataset(run)
    split = cold_start_split(dataset.ratings, run.cold_threshold)
    recommender = _recommender(run, method, dataset, split.train)
    users = dataset.user_ids.to_dense(list(raw_users)).tolist() if raw_users else split.cold_users.tolist()

    recommendations = []
    for user in users:
        recs = recommender.recommend(user, run.top_n)
        check_no_leakage(recs, split.train)
        recommendations.append(recs)

    path = write_recommendations(
        run.out_dir / f"recommendations_{recommender.name}.txt",
        recommendations,
        dataset.user_ids,
        dataset.item_ids,
    )
    write_sidecar(path, {"recommender": recommender.name, **run.to_dict()})
    empty = sum(1 for recs in recommendations if len(recs) == 0)
    print(f"recommender={recommender.name} users={len(users)} empty_lists={empty} file={path}")
    return 0


def _entries(run: RunConfig, dataset: IngestedDataset, mode: str) -> List[ExperimentEntry]:
    graph = dataset.graph.with_convention(run.katz.convention)
    entries = baseline_entries(graph, run.jaccard_sets, run.min_rating)
    if mode == "baselines":
        return entries
    overrides = dict(
        alpha=run.katz.alpha,
        convention=run.katz.convention,
        boost_diag=run.katz.boost_diag,
        boost_source=run.katz.boost_source,
    )
    if mode == "table":
        configs = headline_configs(**overrides)
    elif mode == "sweep":
        configs = sweep_configs(**overrides)
    else:
        configs = [run.katz]
    logger.info(f"Evaluating {len(configs)} Katz configurations and {len(entries)} baselines")
    return entries + [katz_entry(graph, config, run.min_rating) for config in configs]


def cmd_evaluate(run: RunConfig, mode: str = "configured") -> int:
    dataset = _dataset(run)
    split = cold_start_split(dataset.ratings, run.cold_threshold)
    entries = _entries(run, dataset, mode)
    reports = run_experiment(split, entries, run.k_neighbors, run.top_n, run.threads)

    prefix = "sweep_" if mode == "sweep" else ""
    metrics_path = write_metrics_csv(reports, run.out_dir / f"{prefix}metrics.csv")
    curve_path = write_curve_csv(reports, run.out_dir / f"{prefix}curves.csv")
    provenance = {"mode": mode, "entries": [entry.label for entry in entries], **run.to_dict()}
    write_sidecar(metrics_path, provenance)
    write_sidecar(curve_path, provenance)

    known = dedupe_configs(
        [run.katz]
        + sweep_configs(
            alpha=run.katz.alpha,
            convention=run.katz.convention,
            boost_diag=run.katz.boost_diag,
            boost_source=run.katz.boost_source,
        )
    )
    configs: Dict[str, KatzConfig] = {config.label: config for config in known}
    print(format_results_table(reports, configs, k=min(run.top_n, DEFAULT_KS[-1])))
    print(f"metrics={metrics_path} curves={curve_path}")
    failed = len(entries) - len(reports)
    if failed:
        logger.error(f"{failed} of {len(entries)} configurations failed")
        return EXIT_DATA_ERROR
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging_setup.configure(args.verbose)

    try:
        run = run_config_from_args(args)
        if args.command == "ingest":
            return cmd_ingest(run)
        if args.command == "eigen":
            return cmd_eigen(run)
        if args.command == "similarity":
            return cmd_similarity(run)
        if args.command == "recommend":
            return cmd_recommend(run, args.method, args.users)
        if args.command == "sweep":
            return cmd_evaluate(run, "sweep")
        mode = "baselines" if args.baselines_only else "table" if args.table else "sweep" if args.sweep else "configured"
        return cmd_evaluate(run, mode)
    except ConfigurationError as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_CONFIG_ERROR
    except (TrustRecError, FileNotFoundError, KeyError, ValueError, OverflowError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
