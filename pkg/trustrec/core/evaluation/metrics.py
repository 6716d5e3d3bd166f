"""Binary-relevance top-N accuracy metrics.

nDCG discounts a hit at 1-based position p by log2(p + 1); precision divides
hits by k even when fewer than k items were recommended.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import AbstractSet, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

DEFAULT_KS: Tuple[int, ...] = tuple(range(1, 11))


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")


def hits_at_k(recommended: Sequence[int], relevant: AbstractSet[int], k: int) -> int:
    _check_k(k)
    return sum(1 for item in recommended[:k] if item in relevant)


def ndcg_at_k(recommended: Sequence[int], relevant: AbstractSet[int], k: int) -> float:
    _check_k(k)
    if not relevant:
        return 0.0
    dcg = 0.0
    for position, item in enumerate(recommended[:k], start=1):
        if item in relevant:
            dcg += 1.0 / math.log2(position + 1)
    idcg = sum(1.0 / math.log2(position + 1) for position in range(1, min(k, len(relevant)) + 1))
    return dcg / idcg


def precision_at_k(recommended: Sequence[int], relevant: AbstractSet[int], k: int) -> float:
    return hits_at_k(recommended, relevant, k) / float(k)


def recall_at_k(recommended: Sequence[int], relevant: AbstractSet[int], k: int) -> Optional[float]:
    """None when there is nothing to recall; such users are left out of averages."""
    if not relevant:
        _check_k(k)
        return None
    return hits_at_k(recommended, relevant, k) / float(len(relevant))


def evaluate_user(
    recommended: Sequence[int],
    relevant: AbstractSet[int],
    ks: Sequence[int] = DEFAULT_KS,
) -> Optional[np.ndarray]:
    """Rows ndcg, precision, recall by columns ``ks``; None for an empty relevant set."""
    if not relevant:
        return None
    values = np.empty((3, len(ks)), dtype=np.float64)
    for column, k in enumerate(ks):
        values[0, column] = ndcg_at_k(recommended, relevant, k)
        values[1, column] = precision_at_k(recommended, relevant, k)
        values[2, column] = recall_at_k(recommended, relevant, k)
    return values


@dataclass(frozen=True)
class MetricsReport:
    label: str
    ks: Tuple[int, ...]
    ndcg: np.ndarray
    precision: np.ndarray
    recall: np.ndarray
    users: int
    empty_lists: int

    def at(self, k: int) -> Tuple[float, float, float]:
        """(ndcg, precision, recall) at cutoff ``k``."""
        column = self.ks.index(k)
        return float(self.ndcg[column]), float(self.precision[column]), float(self.recall[column])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "config": self.label,
                "k": list(self.ks),
                "ndcg": self.ndcg,
                "precision": self.precision,
                "recall": self.recall,
                "users": self.users,
                "empty_lists": self.empty_lists,
            }
        )

    def curve_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"config": self.label, "k": list(self.ks), "recall": self.recall, "precision": self.precision}
        )
