"""User-based top-N recommendation over a trust similarity matrix.

An item's score is the sum of the similarities of the target's neighbours who
rated it; the target's own training items are never recommended.
"""
from __future__ import annotations

import logging
from typing import Dict, Mapping, Optional, Union

import numpy as np
import scipy.sparse as sp

from ..errors import ShapeError
from ..graph.ratings import RatingsTable
from ..similarity.config import SimilarityMatrix
from .base import NeighborList, RankedRecommendations

logger = logging.getLogger(__name__)

DEFAULT_NEIGHBORS = 60
DEFAULT_TOP_N = 10


def select_neighbors(
    sigma: Union[SimilarityMatrix, sp.csr_matrix],
    target: int,
    k_neighbors: int = DEFAULT_NEIGHBORS,
) -> NeighborList:
    similarity = sigma if isinstance(sigma, SimilarityMatrix) else SimilarityMatrix(matrix=sigma)
    users, sims = similarity.row(target)
    keep = (users != target) & (sims > 0)
    users, sims = users[keep], sims[keep]
    if users.size == 0:
        return NeighborList.empty(target)
    order = np.lexsort((users, -sims))[: max(k_neighbors, 0)]
    return NeighborList(target, users[order], sims[order].astype(np.float64))


def score_items(
    target: int,
    neighbors: NeighborList,
    train: RatingsTable,
    min_rating: Optional[float] = None,
    interactions: Optional[sp.csr_matrix] = None,
) -> Dict[int, float]:
    """Map item -> summed similarity of the neighbours who rated it.

    ``interactions`` is the binary user x item matrix of ``train``; passing it
    avoids rebuilding it per user.
    """
    if len(neighbors) == 0:
        return {}
    if interactions is None:
        interactions = train.interaction_matrix(min_rating)
    rows = interactions[neighbors.users]
    if rows.nnz == 0:
        return {}
    weights = np.repeat(neighbors.similarities, np.diff(rows.indptr))
    items, inverse = np.unique(rows.indices, return_inverse=True)
    scores = np.bincount(inverse, weights=weights, minlength=items.size)

    own = train.items_of(target)
    if own.size:
        keep = ~np.isin(items, own)
        items, scores = items[keep], scores[keep]
    return dict(zip(items.tolist(), scores.tolist()))


def recommend_top_n(
    scores: Mapping[int, float],
    n: int = DEFAULT_TOP_N,
    target: int = -1,
) -> RankedRecommendations:
    if n < 1:
        raise ValueError(f"N must be at least 1, got {n}")
    if not scores:
        return RankedRecommendations(target, np.empty(0, dtype=np.int64), np.empty(0, dtype=np.float64))
    items = np.fromiter(scores.keys(), dtype=np.int64, count=len(scores))
    values = np.fromiter(scores.values(), dtype=np.float64, count=len(scores))
    positive = values > 0
    items, values = items[positive], values[positive]
    order = np.lexsort((items, -values))[:n]
    return RankedRecommendations(target, items[order], values[order])


class NeighborhoodRecommender:
    """k-nearest-neighbour recommender driven by any user x user similarity."""

    def __init__(
        self,
        similarity: SimilarityMatrix,
        train: RatingsTable,
        k_neighbors: int = DEFAULT_NEIGHBORS,
        min_rating: Optional[float] = None,
        name: Optional[str] = None,
    ):
        if similarity.n_users != train.n_users:
            raise ShapeError(f"similarity covers {similarity.n_users} users, ratings cover {train.n_users}")
        self.similarity = similarity
        self.train = train
        self.k_neighbors = k_neighbors
        self.min_rating = min_rating
        self.name = name or similarity.label
        self._interactions = train.interaction_matrix(min_rating)

    def neighbors(self, user: int) -> NeighborList:
        return select_neighbors(self.similarity, user, self.k_neighbors)

    def recommend(self, user: int, n: int = DEFAULT_TOP_N) -> RankedRecommendations:
        neighbors = self.neighbors(user)
        scores = score_items(user, neighbors, self.train, interactions=self._interactions)
        return recommend_top_n(scores, n, target=user)
