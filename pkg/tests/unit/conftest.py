from __future__ import annotations

import logging
import sys
from pathlib import Path

import pytest  # type: ignore[import]

PROJECT_ROOT = Path(__file__).resolve().parents[2]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

# Trust triangle 0 -> 1 -> 2 -> 0 plus 4 -> 3, written as (truster, trustee).
TOY_TRUST = [(0, 1), (1, 2), (2, 0), (4, 3)]

# Users 2 and 3 hold at most two ratings, so they are the cold users at threshold 2.
TOY_RATINGS = [
    (0, 0, 5), (0, 1, 4), (0, 2, 3),
    (1, 1, 4), (1, 3, 5), (1, 5, 2),
    (2, 0, 4), (2, 5, 5),
    (3, 3, 4),
    (4, 0, 3), (4, 3, 4), (4, 4, 5),
]


@pytest.fixture(autouse=True)
def reset_root_logging():
    """CLI runs point the root logger at the captured stdout; detach it after each test."""
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        if type(handler) is logging.StreamHandler:
            root.removeHandler(handler)
    root.setLevel(logging.WARNING)


@pytest.fixture
def toy_files(tmp_path):
    trust_path = tmp_path / "trust_data.txt"
    ratings_path = tmp_path / "ratings_data.txt"
    trust_path.write_text("".join(f"{a} {b} 1\n" for a, b in TOY_TRUST), encoding="utf-8")
    ratings_path.write_text("".join(f"{u} {i} {r}\n" for u, i, r in TOY_RATINGS), encoding="utf-8")
    return trust_path, ratings_path


@pytest.fixture
def toy_dataset(toy_files):
    from trustrec.core.graph import load_dataset

    return load_dataset(*toy_files)


# Chains 3 -> 2 -> 0 and 5 -> 4 -> 1 as (truster, trustee): the cold users 0 and 1 are
# reached by raters only through a two-hop path, the one-hop trusters 2 and 4 rate nothing.
PROPAGATION_TRUST = [(2, 0), (3, 2), (4, 1), (5, 4)]

# At threshold 2 users 0 and 1 are cold; 10 and 11 are the least popular training items.
PROPAGATION_RATINGS = [
    (0, 10, 5),
    (1, 11, 4),
    (3, 10, 5), (3, 20, 4), (3, 21, 3),
    (5, 11, 5), (5, 20, 4), (5, 22, 3),
    (6, 20, 5), (6, 21, 4), (6, 22, 3),
    (7, 20, 4), (7, 21, 5), (7, 22, 4),
]


@pytest.fixture
def propagation_files(tmp_path):
    trust_path = tmp_path / "chain_trust.txt"
    ratings_path = tmp_path / "chain_ratings.txt"
    trust_path.write_text("".join(f"{a} {b} 1\n" for a, b in PROPAGATION_TRUST), encoding="utf-8")
    ratings_path.write_text("".join(f"{u} {i} {r}\n" for u, i, r in PROPAGATION_RATINGS), encoding="utf-8")
    return trust_path, ratings_path
