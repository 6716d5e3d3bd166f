"""Canonical CSR helpers shared by the graph, similarity and recommender layers.

Every matrix handed between stages is a ``scipy.sparse.csr_matrix`` of float64
with sorted column indices, no duplicate entries and no stored zeros.
"""
from __future__ import annotations

from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd
import scipy.sparse as sp

from ..errors import ShapeError

SparseMatrix = sp.csr_matrix


def canonical(matrix) -> sp.csr_matrix:
    """Return a float64 CSR copy of ``matrix`` that satisfies the storage invariants."""
    csr = sp.csr_matrix(matrix, dtype=np.float64, copy=True)
    csr.sum_duplicates()
    csr.eliminate_zeros()
    csr.sort_indices()
    return csr


def identity(n: int) -> sp.csr_matrix:
    return sp.identity(n, dtype=np.float64, format="csr")


def transpose(matrix: sp.csr_matrix) -> sp.csr_matrix:
    return canonical(matrix.T.tocsr())


def require_square(matrix, name: str = "matrix") -> int:
    rows, cols = matrix.shape
    if rows != cols:
        raise ShapeError(f"{name} must be square, got {rows}x{cols}")
    return rows


def require_same_shape(left, right, names: str = "operands") -> None:
    if left.shape != right.shape:
        raise ShapeError(f"{names} differ in shape: {left.shape} vs {right.shape}")


def matvec(matrix: sp.csr_matrix, vector) -> np.ndarray:
    vector = np.asarray(vector, dtype=np.float64)
    if vector.shape != (matrix.shape[1],):
        raise ShapeError(f"cannot multiply {matrix.shape} matrix by vector of shape {vector.shape}")
    return np.asarray(matrix @ vector, dtype=np.float64)


def density(matrix) -> float:
    rows, cols = matrix.shape
    if rows == 0 or cols == 0:
        return 0.0
    return matrix.nnz / float(rows * cols)


def offdiagonal_density(matrix) -> float:
    """Fraction of stored off-diagonal entries over all n*m positions."""
    rows, cols = matrix.shape
    if rows == 0 or cols == 0:
        return 0.0
    on_diagonal = int(np.count_nonzero(matrix.diagonal()))
    return (matrix.nnz - on_diagonal) / float(rows * cols)


def save_triplets(matrix, path: Union[str, Path]) -> Path:
    """Write ``n_rows n_cols nnz`` followed by ``row col value`` lines sorted by (row, col)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    csr = canonical(matrix)
    coo = csr.tocoo()
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{csr.shape[0]} {csr.shape[1]} {csr.nnz}\n")
        for row, col, value in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
            fh.write(f"{row} {col} {value:.17g}\n")
    return path


def load_triplets(path: Union[str, Path]) -> sp.csr_matrix:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Similarity file not found at {path}")
    with path.open("r", encoding="utf-8") as fh:
        header = fh.readline().split()
    if len(header) != 3:
        raise ShapeError(f"{path}: expected header 'n_rows n_cols nnz', got {header}")
    n_rows, n_cols, nnz = (int(value) for value in header)
    if nnz == 0:
        return sp.csr_matrix((n_rows, n_cols), dtype=np.float64)
    frame = pd.read_csv(
        path,
        sep=" ",
        skiprows=1,
        header=None,
        names=["row", "col", "value"],
        dtype={"row": np.int64, "col": np.int64, "value": np.float64},
        float_precision="round_trip",
    )
    if len(frame) != nnz:
        raise ShapeError(f"{path}: header promises {nnz} entries, found {len(frame)}")
    matrix = sp.csr_matrix(
        (frame["value"].to_numpy(), (frame["row"].to_numpy(), frame["col"].to_numpy())),
        shape=(n_rows, n_cols),
    )
    return canonical(matrix)
