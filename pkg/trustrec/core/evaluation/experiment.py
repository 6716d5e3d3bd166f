from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import EvaluationError
from ..graph.ratings import RatingsTable
from ..graph.trust_graph import TrustGraph
from ..recommender.base import RankedRecommendations, Recommender
from ..recommender.baselines import (
    JaccardSets,
    MostPopularRecommender,
    baseline_trust_explicit,
    baseline_trust_jaccard,
)
from ..recommender.neighborhood import DEFAULT_NEIGHBORS, DEFAULT_TOP_N, NeighborhoodRecommender
from ..similarity.config import KatzConfig
from ..similarity.pipeline import build_similarity
from .metrics import DEFAULT_KS, MetricsReport, evaluate_user
from .split import ColdStartSplit

logger = logging.getLogger(__name__)

RecommenderFactory = Callable[[RatingsTable, int], Recommender]


@dataclass(frozen=True)
class ExperimentEntry:
    """A named approach; ``factory(train, k_neighbors)`` builds its recommender."""

    label: str
    factory: RecommenderFactory


def katz_entry(graph: TrustGraph, config: KatzConfig, min_rating: Optional[float] = None) -> ExperimentEntry:
    def factory(train: RatingsTable, k_neighbors: int) -> Recommender:
        similarity = build_similarity(graph, config=config)
        return NeighborhoodRecommender(similarity, train, k_neighbors, min_rating)

    return ExperimentEntry(config.label, factory)


def baseline_entries(
    graph: TrustGraph,
    jaccard_sets: Union[JaccardSets, str] = JaccardSets.OUT,
    min_rating: Optional[float] = None,
) -> List[ExperimentEntry]:
    """Trust_exp, Trust_jac and MostPopular."""

    def explicit(train: RatingsTable, k_neighbors: int) -> Recommender:
        return NeighborhoodRecommender(baseline_trust_explicit(graph), train, k_neighbors, min_rating)

    def jaccard(train: RatingsTable, k_neighbors: int) -> Recommender:
        return NeighborhoodRecommender(baseline_trust_jaccard(graph, jaccard_sets), train, k_neighbors, min_rating)

    def popular(train: RatingsTable, k_neighbors: int) -> Recommender:
        return MostPopularRecommender(train)

    jaccard_label = "Trust_jac" if JaccardSets(jaccard_sets) == JaccardSets.OUT else "Trust_jac-in"
    return [
        ExperimentEntry("Trust_exp", explicit),
        ExperimentEntry(jaccard_label, jaccard),
        ExperimentEntry("MP", popular),
    ]


def check_no_leakage(recommendations: RankedRecommendations, train: RatingsTable) -> None:
    leaked = np.isin(recommendations.items, train.items_of(recommendations.target))
    if leaked.any():
        raise EvaluationError(
            f"user {recommendations.target} was recommended training items {recommendations.items[leaked].tolist()}"
        )


def _evaluate_chunk(
    recommender: Recommender,
    users: Sequence[int],
    split: ColdStartSplit,
    top_n: int,
    ks: Tuple[int, ...],
) -> Tuple[np.ndarray, int]:
    values = np.zeros((len(users), 3, len(ks)), dtype=np.float64)
    empty = 0
    for row, user in enumerate(users):
        recommendations = recommender.recommend(user, top_n)
        check_no_leakage(recommendations, split.train)
        if len(recommendations) == 0:
            empty += 1
            continue
        values[row] = evaluate_user(recommendations.item_list(), split.test[user], ks)
    return values, empty


def evaluate_recommender(
    recommender: Recommender,
    split: ColdStartSplit,
    top_n: int = DEFAULT_TOP_N,
    ks: Tuple[int, ...] = DEFAULT_KS,
    threads: int = 1,
    chunk_size: int = 1024,
) -> MetricsReport:
    """Average per-user metrics over cold users with a non-empty test set.

    Users with an empty recommendation list score 0 and are still counted.
    """
    users = [user for user in split.cold_users.tolist() if split.test.get(user)]
    skipped = len(split) - len(users)
    if skipped:
        logger.warning(f"{recommender.name}: skipped {skipped} cold users with empty test sets")
    if not users:
        raise EvaluationError("no cold users with test items to evaluate")

    chunks = [users[start:start + chunk_size] for start in range(0, len(users), chunk_size)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads, thread_name_prefix="evaluate") as pool:
            results = list(pool.map(lambda chunk: _evaluate_chunk(recommender, chunk, split, top_n, ks), chunks))
    else:
        results = [_evaluate_chunk(recommender, chunk, split, top_n, ks) for chunk in chunks]

    values = np.concatenate([chunk_values for chunk_values, _ in results], axis=0)
    empty_lists = sum(empty for _, empty in results)
    means = values.mean(axis=0)
    return MetricsReport(
        label=recommender.name,
        ks=tuple(ks),
        ndcg=means[0],
        precision=means[1],
        recall=means[2],
        users=len(users),
        empty_lists=empty_lists,
    )


def run_experiment(
    split: ColdStartSplit,
    entries: Sequence[ExperimentEntry],
    k_neighbors: int = DEFAULT_NEIGHBORS,
    top_n: int = DEFAULT_TOP_N,
    threads: int = 1,
    ks: Tuple[int, ...] = DEFAULT_KS,
) -> List[MetricsReport]:
    """Evaluate every entry; a failing entry is logged and left out, the others still run."""
    if split.is_empty:
        raise EvaluationError(
            f"cold-start split is empty: no user has between 1 and {split.threshold} ratings"
        )
    reports: List[MetricsReport] = []
    for entry in entries:
        try:
            recommender = entry.factory(split.train, k_neighbors)
            recommender.name = entry.label
            report = evaluate_recommender(recommender, split, top_n, ks, threads)
        except Exception:
            logger.exception(f"Configuration {entry.label} failed; continuing with the remaining ones")
            continue
        ndcg, precision, recall = report.at(ks[-1])
        logger.info(
            f"{report.label}: nDCG@{ks[-1]}={ndcg:.4f} R@{ks[-1]}={recall:.4f} P@{ks[-1]}={precision:.4f} "
            f"users={report.users} empty_lists={report.empty_lists}"
        )
        reports.append(report)
    return reports
