from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import pandas as pd
from sklearn.preprocessing import LabelEncoder


@dataclass(frozen=True)
class IdMap:
    """Bijection between raw dataset identifiers and dense ids in ``[0, len)``.

    ``raw[d]`` is the raw id of dense id ``d``; raw ids are kept sorted so the
    dense order follows the raw order.
    """

    raw: np.ndarray

    @classmethod
    def fit(cls, *raw_ids: Sequence[int]) -> "IdMap":
        arrays = [np.asarray(ids, dtype=np.int64).ravel() for ids in raw_ids]
        combined = np.concatenate(arrays) if arrays else np.empty(0, dtype=np.int64)
        if combined.size == 0:
            return cls(np.empty(0, dtype=np.int64))
        encoder = LabelEncoder()
        encoder.fit(combined)
        return cls(np.asarray(encoder.classes_, dtype=np.int64))

    def __len__(self) -> int:
        return int(self.raw.size)

    def to_dense(self, raw_ids) -> np.ndarray:
        raw_ids = np.asarray(raw_ids, dtype=np.int64)
        positions = np.searchsorted(self.raw, raw_ids)
        clipped = np.minimum(positions, max(len(self) - 1, 0))
        if len(self) == 0 and raw_ids.size:
            raise KeyError(f"unknown raw ids: {raw_ids.ravel()[:5].tolist()}")
        if raw_ids.size and not np.array_equal(self.raw[clipped], raw_ids):
            missing = raw_ids[self.raw[clipped] != raw_ids]
            raise KeyError(f"unknown raw ids: {missing.ravel()[:5].tolist()}")
        return positions.astype(np.int64)

    def to_raw(self, dense_ids) -> np.ndarray:
        return self.raw[np.asarray(dense_ids, dtype=np.int64)]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"dense": np.arange(len(self), dtype=np.int64), "raw": self.raw})
