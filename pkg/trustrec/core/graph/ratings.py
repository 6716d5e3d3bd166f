from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd
import scipy.sparse as sp

from .ids import IdMap

logger = logging.getLogger(__name__)

MIN_RATING = 1.0
MAX_RATING = 5.0


@dataclass(frozen=True)
class RatingsTable:
    """One (user, item, rating) record per pair, sorted by user then item."""

    users: np.ndarray
    items: np.ndarray
    ratings: np.ndarray
    n_users: int
    n_items: int
    duplicates: int = 0

    @classmethod
    def from_records(
        cls,
        users,
        items,
        ratings,
        n_users: Optional[int] = None,
        n_items: Optional[int] = None,
    ) -> "RatingsTable":
        """Collapse repeated (user, item) pairs keeping the last record."""
        frame = pd.DataFrame(
            {
                "user": np.asarray(users, dtype=np.int64),
                "item": np.asarray(items, dtype=np.int64),
                "rating": np.asarray(ratings, dtype=np.float64),
            }
        )
        out_of_range = (frame["rating"] < MIN_RATING) | (frame["rating"] > MAX_RATING)
        if out_of_range.any():
            raise ValueError(f"{int(out_of_range.sum())} ratings outside [{MIN_RATING:g}, {MAX_RATING:g}]")
        if ((frame["user"] < 0) | (frame["item"] < 0)).any():
            raise ValueError("user and item ids must be non-negative")

        before = len(frame)
        frame = frame.drop_duplicates(subset=["user", "item"], keep="last")
        frame = frame.sort_values(["user", "item"], kind="mergesort")
        duplicates = before - len(frame)
        if duplicates:
            logger.warning(f"Collapsed {duplicates} duplicate ratings (last record wins)")

        user_arr = frame["user"].to_numpy(dtype=np.int64)
        item_arr = frame["item"].to_numpy(dtype=np.int64)
        if n_users is None:
            n_users = int(user_arr.max()) + 1 if user_arr.size else 0
        if n_items is None:
            n_items = int(item_arr.max()) + 1 if item_arr.size else 0
        if user_arr.size and (user_arr.max() >= n_users or item_arr.max() >= n_items):
            raise ValueError("rating ids exceed the declared table dimensions")
        return cls(
            users=user_arr,
            items=item_arr,
            ratings=frame["rating"].to_numpy(dtype=np.float64),
            n_users=int(n_users),
            n_items=int(n_items),
            duplicates=int(duplicates),
        )

    def __len__(self) -> int:
        return int(self.users.size)

    @property
    def distinct_users(self) -> int:
        return int(np.unique(self.users).size)

    @property
    def distinct_items(self) -> int:
        return int(np.unique(self.items).size)

    def counts_per_user(self) -> np.ndarray:
        return np.bincount(self.users, minlength=self.n_users).astype(np.int64)

    def counts_per_item(self) -> np.ndarray:
        return np.bincount(self.items, minlength=self.n_items).astype(np.int64)

    def items_of(self, user: int) -> np.ndarray:
        start, stop = np.searchsorted(self.users, [user, user + 1])
        return self.items[start:stop]

    def interaction_matrix(self, min_rating: Optional[float] = None) -> sp.csr_matrix:
        """Binary user x item matrix; ``min_rating`` keeps only ratings at or above it."""
        keep = np.ones(len(self), dtype=bool) if min_rating is None else self.ratings >= min_rating
        data = np.ones(int(keep.sum()), dtype=np.float64)
        matrix = sp.csr_matrix(
            (data, (self.users[keep], self.items[keep])),
            shape=(self.n_users, self.n_items),
        )
        matrix.sort_indices()
        return matrix

    def subset(self, user_mask: np.ndarray) -> "RatingsTable":
        """Records of the users flagged in ``user_mask``, same dimensions."""
        keep = np.asarray(user_mask, dtype=bool)[self.users]
        return RatingsTable(
            users=self.users[keep],
            items=self.items[keep],
            ratings=self.ratings[keep],
            n_users=self.n_users,
            n_items=self.n_items,
        )

    def reindex(self, user_ids: IdMap, item_ids: IdMap) -> "RatingsTable":
        """Map raw ids to dense ids; ``duplicates`` carries over from the raw table."""
        table = RatingsTable.from_records(
            user_ids.to_dense(self.users),
            item_ids.to_dense(self.items),
            self.ratings,
            n_users=len(user_ids),
            n_items=len(item_ids),
        )
        return RatingsTable(
            users=table.users,
            items=table.items,
            ratings=table.ratings,
            n_users=table.n_users,
            n_items=table.n_items,
            duplicates=self.duplicates,
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"user": self.users, "item": self.items, "rating": self.ratings})
