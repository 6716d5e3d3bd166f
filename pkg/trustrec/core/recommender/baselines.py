from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np
import scipy.sparse as sp

from ..graph.ratings import RatingsTable
from ..graph.sparse import canonical, transpose
from ..graph.trust_graph import TrustGraph
from ..similarity.config import SimilarityMatrix
from .base import RankedRecommendations
from .neighborhood import DEFAULT_TOP_N

logger = logging.getLogger(__name__)

MOST_POPULAR = "MP"
TRUST_EXPLICIT = "Trust_exp"
TRUST_JACCARD = "Trust_jac"


class JaccardSets(str, Enum):
    """OUT compares the sets of users each one trusts; IN compares their sets of trusters."""

    OUT = "out"
    IN = "in"


@dataclass(frozen=True)
class PopularityRanking:
    items: np.ndarray
    counts: np.ndarray

    def __len__(self) -> int:
        return int(self.items.size)


def baseline_most_popular(train: RatingsTable) -> PopularityRanking:
    """Items by training rating count, most rated first, ties by item id."""
    counts = train.counts_per_item()
    rated = np.flatnonzero(counts)
    order = np.lexsort((rated, -counts[rated]))
    return PopularityRanking(rated[order].astype(np.int64), counts[rated][order])


class MostPopularRecommender:
    def __init__(self, train: RatingsTable, name: str = MOST_POPULAR):
        self.train = train
        self.name = name
        self.ranking = baseline_most_popular(train)

    def recommend(self, user: int, n: int = DEFAULT_TOP_N) -> RankedRecommendations:
        own = self.train.items_of(user)
        head = self.ranking.items[: n + own.size]
        counts = self.ranking.counts[: n + own.size]
        if own.size:
            keep = ~np.isin(head, own)
            head, counts = head[keep], counts[keep]
        return RankedRecommendations(user, head[:n], counts[:n].astype(np.float64))


def baseline_trust_explicit(graph: TrustGraph) -> SimilarityMatrix:
    """The adjacency itself as similarity: binary, so only the id tie-break orders neighbours."""
    return SimilarityMatrix(matrix=canonical(graph.adjacency), label=TRUST_EXPLICIT)


def baseline_trust_jaccard(
    graph: TrustGraph,
    sets: Union[JaccardSets, str] = JaccardSets.OUT,
    block_size: int = 4096,
) -> SimilarityMatrix:
    """|T_a & T_b| / |T_a | T_b| over trust sets, computed in row blocks of co-trust counts."""
    sets = JaccardSets(sets)
    trust = graph.trust_matrix()
    if sets == JaccardSets.IN:
        trust = transpose(trust)
    n = graph.n_users
    sizes = np.diff(trust.indptr).astype(np.float64)
    trust_t = transpose(trust)

    blocks = []
    for start in range(0, n, block_size):
        stop = min(start + block_size, n)
        shared = (trust[start:stop] @ trust_t).tocoo()
        rows = shared.row + start
        union = sizes[rows] + sizes[shared.col] - shared.data
        values = shared.data / union
        blocks.append(sp.csr_matrix((values, (shared.row, shared.col)), shape=(stop - start, n)))
    matrix = canonical(sp.vstack(blocks, format="csr")) if blocks else sp.csr_matrix((0, 0), dtype=np.float64)
    label = TRUST_JACCARD if sets == JaccardSets.OUT else f"{TRUST_JACCARD}-in"
    logger.info(f"{label}: nnz={matrix.nnz}")
    return SimilarityMatrix(matrix=matrix, label=label)
