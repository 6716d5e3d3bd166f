from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Protocol, Tuple

import numpy as np


@dataclass(frozen=True)
class NeighborList:
    """Nearest trust neighbours of ``target``, most similar first, ties by user id."""

    target: int
    users: np.ndarray
    similarities: np.ndarray

    def __len__(self) -> int:
        return int(self.users.size)

    def __iter__(self) -> Iterator[Tuple[int, float]]:
        return zip(self.users.tolist(), self.similarities.tolist())

    @classmethod
    def empty(cls, target: int) -> "NeighborList":
        return cls(target, np.empty(0, dtype=np.int64), np.empty(0, dtype=np.float64))


@dataclass(frozen=True)
class RankedRecommendations:
    """Top-N items for ``target``, highest score first, ties by item id."""

    target: int
    items: np.ndarray
    scores: np.ndarray

    def __len__(self) -> int:
        return int(self.items.size)

    def item_list(self) -> List[int]:
        return self.items.tolist()


class Recommender(Protocol):
    name: str

    def recommend(self, user: int, n: int = 10) -> RankedRecommendations: ...
