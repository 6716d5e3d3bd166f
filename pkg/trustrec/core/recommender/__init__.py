from .base import NeighborList, RankedRecommendations, Recommender
from .baselines import (
    MOST_POPULAR,
    TRUST_EXPLICIT,
    TRUST_JACCARD,
    JaccardSets,
    MostPopularRecommender,
    PopularityRanking,
    baseline_most_popular,
    baseline_trust_explicit,
    baseline_trust_jaccard,
)
from .dump import write_recommendations
from .neighborhood import (
    DEFAULT_NEIGHBORS,
    DEFAULT_TOP_N,
    NeighborhoodRecommender,
    recommend_top_n,
    score_items,
    select_neighbors,
)

__all__ = [
    "DEFAULT_NEIGHBORS",
    "DEFAULT_TOP_N",
    "MOST_POPULAR",
    "TRUST_EXPLICIT",
    "TRUST_JACCARD",
    "JaccardSets",
    "MostPopularRecommender",
    "NeighborList",
    "NeighborhoodRecommender",
    "PopularityRanking",
    "RankedRecommendations",
    "Recommender",
    "baseline_most_popular",
    "baseline_trust_explicit",
    "baseline_trust_jaccard",
    "recommend_top_n",
    "score_items",
    "select_neighbors",
    "write_recommendations",
]
