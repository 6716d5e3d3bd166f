from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp

from ..errors import ShapeError
from .sparse import canonical

logger = logging.getLogger(__name__)


class Convention(str, Enum):
    """Which way a trust statement is stored in the adjacency matrix.

    AS_PAPER: truster j -> trustee i is stored at A[i][j] (row i holds the trusters of i).
    TRANSPOSED: the same statement is stored at A[j][i] (row j holds the users j trusts).
    """

    AS_PAPER = "as-paper"
    TRANSPOSED = "transposed"


class DegreeMode(str, Enum):
    IN = "in"
    COMBINED = "combined"


@dataclass(frozen=True)
class TrustGraph:
    """Directed, unweighted trust network over densely indexed users."""

    n_users: int
    edges: np.ndarray  # (E, 2) rows of (truster, trustee), unique and sorted
    convention: Convention
    adjacency: sp.csr_matrix
    dropped_self_loops: int = 0
    duplicate_edges: int = 0

    @property
    def edge_count(self) -> int:
        return int(self.edges.shape[0])

    @property
    def density(self) -> float:
        if self.n_users == 0:
            return 0.0
        return self.edge_count / float(self.n_users * self.n_users)

    @property
    def trusters(self) -> np.ndarray:
        return self.edges[:, 0]

    @property
    def trustees(self) -> np.ndarray:
        return self.edges[:, 1]

    def trust_matrix(self) -> sp.csr_matrix:
        """Row u holds the users u trusts, whatever the adjacency convention."""
        return _edge_matrix(self.trusters, self.trustees, self.n_users)

    def with_convention(self, convention: Union[Convention, str]) -> "TrustGraph":
        convention = Convention(convention)
        if convention == self.convention:
            return self
        return TrustGraph(
            n_users=self.n_users,
            edges=self.edges,
            convention=convention,
            adjacency=_adjacency(self.edges, self.n_users, convention),
            dropped_self_loops=self.dropped_self_loops,
            duplicate_edges=self.duplicate_edges,
        )


@dataclass(frozen=True)
class DegreeVector:
    mode: DegreeMode
    values: np.ndarray

    def __len__(self) -> int:
        return int(self.values.size)


def _edge_matrix(rows: np.ndarray, cols: np.ndarray, n_users: int) -> sp.csr_matrix:
    data = np.ones(rows.size, dtype=np.float64)
    return canonical(sp.csr_matrix((data, (rows, cols)), shape=(n_users, n_users)))


def _adjacency(edges: np.ndarray, n_users: int, convention: Convention) -> sp.csr_matrix:
    truster, trustee = edges[:, 0], edges[:, 1]
    if convention == Convention.AS_PAPER:
        return _edge_matrix(trustee, truster, n_users)
    return _edge_matrix(truster, trustee, n_users)


def build_trust_graph(
    edges: Union[Sequence[Tuple[int, int]], np.ndarray, Iterable[Tuple[int, int]]],
    n_users: int,
    convention: Union[Convention, str] = Convention.AS_PAPER,
) -> TrustGraph:
    """Build the adjacency for dense (truster, trustee) pairs.

    Self-loops are dropped and counted; repeated pairs collapse to a single
    entry so every stored value is exactly 1.
    """
    convention = Convention(convention)
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64).reshape(-1, 2)
    if arr.size and (arr.min() < 0 or arr.max() >= n_users):
        raise ShapeError(f"edge endpoints must lie in [0, {n_users})")

    self_loops = arr[:, 0] == arr[:, 1]
    dropped = int(np.count_nonzero(self_loops))
    if dropped:
        logger.info(f"Dropped {dropped} self-loop trust statements")
    arr = arr[~self_loops]

    if arr.shape[0]:
        unique = np.unique(arr, axis=0)
    else:
        unique = np.empty((0, 2), dtype=np.int64)
    duplicates = int(arr.shape[0] - unique.shape[0])
    if duplicates:
        logger.info(f"Collapsed {duplicates} duplicate trust statements")

    return TrustGraph(
        n_users=int(n_users),
        edges=unique,
        convention=convention,
        adjacency=_adjacency(unique, n_users, convention),
        dropped_self_loops=dropped,
        duplicate_edges=duplicates,
    )


def degree_vector(graph: TrustGraph, mode: Union[DegreeMode, str]) -> DegreeVector:
    """In-degree counts the trusters of each user; combined adds the users each one trusts."""
    mode = DegreeMode(mode)
    in_degree = np.bincount(graph.trustees, minlength=graph.n_users).astype(np.int64)
    if mode == DegreeMode.IN:
        return DegreeVector(mode, in_degree)
    out_degree = np.bincount(graph.trusters, minlength=graph.n_users).astype(np.int64)
    return DegreeVector(mode, in_degree + out_degree)
