from __future__ import annotations

from pathlib import Path
from typing import Iterable, Union

from ..graph.ids import IdMap
from .base import RankedRecommendations


def write_recommendations(
    path: Union[str, Path],
    recommendations: Iterable[RankedRecommendations],
    user_ids: IdMap,
    item_ids: IdMap,
) -> Path:
    """Write ``user item rank score`` lines with raw ids, one per recommended item."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for recs in recommendations:
            raw_user = int(user_ids.to_raw(recs.target))
            raw_items = item_ids.to_raw(recs.items).tolist()
            for rank, (item, score) in enumerate(zip(raw_items, recs.scores.tolist()), start=1):
                fh.write(f"{raw_user} {item} {rank} {score:.17g}\n")
    return path
