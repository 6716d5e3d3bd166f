"""Readers for the trust statement and ratings files.

Both files hold one record per line. Fields are separated by any run of
whitespace unless a single-character delimiter is configured; blank lines and
lines starting with ``#`` are skipped.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple, Union

import joblib
import numpy as np

from ..errors import ParseError
from .ids import IdMap
from .ratings import MAX_RATING, MIN_RATING, RatingsTable
from .trust_graph import Convention, TrustGraph, build_trust_graph

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
MAX_RAW_ID = int(np.iinfo(np.int64).max)


@dataclass(frozen=True)
class IngestionStats:
    users: int
    items: int
    ratings: int
    edges: int
    density: float
    dropped_self_loops: int
    duplicates: int
    duplicate_edges: int = 0

    def summary_line(self) -> str:
        return (
            f"users={self.users} items={self.items} ratings={self.ratings} edges={self.edges} "
            f"density={self.density:.6g} dropped_self_loops={self.dropped_self_loops} "
            f"duplicates={self.duplicates} duplicate_edges={self.duplicate_edges}"
        )


@dataclass(frozen=True)
class IngestedDataset:
    graph: TrustGraph
    ratings: RatingsTable
    user_ids: IdMap
    item_ids: IdMap
    stats: IngestionStats


def _check_delimiter(delimiter: Optional[str]) -> None:
    if delimiter is not None and len(delimiter) != 1:
        raise ValueError(f"delimiter must be a single character, got {delimiter!r}")


def _records(
    stream: Iterable[Union[str, bytes]],
    delimiter: Optional[str],
) -> Iterator[Tuple[int, List[str], str]]:
    """Yield (line number, fields, stripped line); byte lines are decoded as UTF-8."""
    _check_delimiter(delimiter)
    for line_number, raw_line in enumerate(stream, start=1):
        if isinstance(raw_line, bytes):
            try:
                raw_line = raw_line.decode("utf-8")
            except UnicodeDecodeError as e:
                raise ParseError(f"invalid UTF-8 at byte {e.start}", line_number) from None
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if delimiter is None:
            fields = line.split()
        else:
            fields = [field.strip() for field in line.split(delimiter)]
        yield line_number, fields, line


def _parse_id(value: str, line_number: int, line: str, what: str) -> int:
    try:
        parsed = int(value)
    except ValueError:
        raise ParseError(f"{what} id {value!r} is not an integer", line_number, line) from None
    if parsed < 0:
        raise ParseError(f"{what} id {parsed} is negative", line_number, line)
    if parsed > MAX_RAW_ID:
        raise ParseError(f"{what} id {parsed} exceeds the 64-bit id range", line_number, line)
    return parsed


def parse_trust_edges(stream: Iterable[Union[str, bytes]], delimiter: Optional[str] = None) -> List[Tuple[int, int]]:
    """Return the (truster, trustee) raw id pairs of a trust file.

    An optional third field holds the trust value; only positive trust (1) is
    accepted.
    """
    edges: List[Tuple[int, int]] = []
    for line_number, fields, line in _records(stream, delimiter):
        if len(fields) < 2:
            raise ParseError("expected at least 'truster trustee'", line_number, line)
        truster = _parse_id(fields[0], line_number, line, "truster")
        trustee = _parse_id(fields[1], line_number, line, "trustee")
        if len(fields) >= 3:
            try:
                value = float(fields[2])
            except ValueError:
                raise ParseError(f"trust value {fields[2]!r} is not numeric", line_number, line) from None
            if value != 1.0:
                raise ParseError(f"trust value must be 1, got {fields[2]}", line_number, line)
        edges.append((truster, trustee))
    return edges


def parse_ratings(stream: Iterable[Union[str, bytes]], delimiter: Optional[str] = None) -> RatingsTable:
    """Read ``user item rating`` lines into a table keyed by the raw ids."""
    users: List[int] = []
    items: List[int] = []
    ratings: List[float] = []
    for line_number, fields, line in _records(stream, delimiter):
        if len(fields) < 3:
            raise ParseError("expected 'user item rating'", line_number, line)
        user = _parse_id(fields[0], line_number, line, "user")
        item = _parse_id(fields[1], line_number, line, "item")
        try:
            rating = float(fields[2])
        except ValueError:
            raise ParseError(f"rating {fields[2]!r} is not numeric", line_number, line) from None
        if not MIN_RATING <= rating <= MAX_RATING:
            raise ParseError(f"rating {rating:g} outside [{MIN_RATING:g}, {MAX_RATING:g}]", line_number, line)
        users.append(user)
        items.append(item)
        ratings.append(rating)
    table = RatingsTable.from_records(users, items, ratings)
    logger.info(
        f"Parsed {len(table)} ratings from {table.distinct_users} users on {table.distinct_items} items "
        f"({table.duplicates} duplicates)"
    )
    return table


def _open(path: PathLike, what: str):
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"{what} file not found at {path}")
    return path.open("rb")


def load_dataset(
    trust_path: PathLike,
    ratings_path: PathLike,
    delimiter: Optional[str] = None,
    convention: Union[Convention, str] = Convention.AS_PAPER,
) -> IngestedDataset:
    """Parse both files and re-index users (over both files) and items densely."""
    with _open(trust_path, "Trust") as fh:
        raw_edges = np.asarray(parse_trust_edges(fh, delimiter), dtype=np.int64).reshape(-1, 2)
    with _open(ratings_path, "Ratings") as fh:
        raw_ratings = parse_ratings(fh, delimiter)

    user_ids = IdMap.fit(raw_edges.ravel(), raw_ratings.users)
    item_ids = IdMap.fit(raw_ratings.items)
    graph = build_trust_graph(user_ids.to_dense(raw_edges), len(user_ids), convention)
    ratings = raw_ratings.reindex(user_ids, item_ids)

    stats = IngestionStats(
        users=len(user_ids),
        items=len(item_ids),
        ratings=len(ratings),
        edges=graph.edge_count,
        density=graph.density,
        dropped_self_loops=graph.dropped_self_loops,
        duplicates=ratings.duplicates,
        duplicate_edges=graph.duplicate_edges,
    )
    logger.info(f"Ingested {stats.summary_line()}")
    return IngestedDataset(graph=graph, ratings=ratings, user_ids=user_ids, item_ids=item_ids, stats=stats)


def write_id_maps(dataset: IngestedDataset, out_dir: PathLike) -> Tuple[Path, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    user_path = out_dir / "user_ids.csv"
    item_path = out_dir / "item_ids.csv"
    dataset.user_ids.to_frame().to_csv(user_path, index=False, lineterminator="\n")
    dataset.item_ids.to_frame().to_csv(item_path, index=False, lineterminator="\n")
    return user_path, item_path


def save_dataset(
    dataset: IngestedDataset,
    output_path: PathLike,
    sources: Optional[Dict[str, Any]] = None,
) -> Path:
    """Persist the ingested dataset with provenance metadata."""
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "graph": dataset.graph,
        "ratings": dataset.ratings,
        "user_ids": dataset.user_ids,
        "item_ids": dataset.item_ids,
        "stats": dataset.stats,
        "metadata": {
            "ingested_at": datetime.now(timezone.utc).isoformat(),
            **(sources or {}),
        },
    }
    joblib.dump(payload, output_path)
    logger.info(f"Dataset saved to {output_path}")
    return output_path


def load_dataset_bundle(bundle_path: PathLike) -> IngestedDataset:
    bundle_path = Path(bundle_path)
    if not bundle_path.exists():
        raise FileNotFoundError(f"Ingested dataset not found at {bundle_path}; run 'ingest' first")
    payload = joblib.load(bundle_path)
    missing = {"graph", "ratings", "user_ids", "item_ids", "stats"} - set(payload)
    if missing:
        raise ValueError(f"Dataset bundle {bundle_path} missing entries: {sorted(missing)}")
    return IngestedDataset(
        graph=payload["graph"],
        ratings=payload["ratings"],
        user_ids=payload["user_ids"],
        item_ids=payload["item_ids"],
        stats=payload["stats"],
    )
