from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet

import numpy as np

from ..errors import ConfigurationError
from ..graph.ratings import RatingsTable

logger = logging.getLogger(__name__)

DEFAULT_COLD_THRESHOLD = 10


@dataclass(frozen=True)
class ColdStartSplit:
    """Cold users (1..threshold ratings) are tested on all their items; everyone else trains."""

    cold_users: np.ndarray
    train: RatingsTable
    test: Dict[int, FrozenSet[int]]
    threshold: int = DEFAULT_COLD_THRESHOLD

    def __len__(self) -> int:
        return int(self.cold_users.size)

    @property
    def is_empty(self) -> bool:
        return len(self) == 0


def cold_start_split(ratings: RatingsTable, threshold: int = DEFAULT_COLD_THRESHOLD) -> ColdStartSplit:
    if threshold < 1:
        raise ConfigurationError(f"cold-start threshold must be at least 1, got {threshold}")
    counts = ratings.counts_per_user()
    cold_mask = (counts >= 1) & (counts <= threshold)
    cold_users = np.flatnonzero(cold_mask).astype(np.int64)

    test: Dict[int, FrozenSet[int]] = {}
    boundaries = np.searchsorted(ratings.users, np.stack([cold_users, cold_users + 1]))
    for user, start, stop in zip(cold_users.tolist(), boundaries[0].tolist(), boundaries[1].tolist()):
        test[user] = frozenset(ratings.items[start:stop].tolist())

    train = ratings.subset(~cold_mask)
    logger.info(
        f"Cold-start split (threshold={threshold}): {cold_users.size} cold users, "
        f"{len(train)} training ratings"
    )
    return ColdStartSplit(cold_users=cold_users, train=train, test=test, threshold=threshold)
