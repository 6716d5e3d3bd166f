from __future__ import annotations

from typing import Union

import numpy as np
import scipy.sparse as sp
from sklearn.preprocessing import normalize

from ..errors import ShapeError
from ..graph.sparse import canonical
from ..graph.trust_graph import DegreeVector
from .config import RowNorm, SimilarityMatrix


def degree_normalize(sigma: SimilarityMatrix, degrees: Union[DegreeVector, np.ndarray]) -> SimilarityMatrix:
    """sigma_ij / (d_i * d_j); a zero degree is treated as 1 so the row survives."""
    values = degrees.values if isinstance(degrees, DegreeVector) else np.asarray(degrees)
    values = values.astype(np.float64)
    if values.shape != (sigma.n_users,):
        raise ShapeError(f"degree vector of length {values.size} does not match {sigma.n_users} users")
    values[values == 0] = 1.0
    scale = sp.diags(1.0 / values, format="csr")
    return sigma.replace(canonical(scale @ sigma.matrix @ scale))


def row_normalize(sigma: SimilarityMatrix, norm: Union[RowNorm, str]) -> SimilarityMatrix:
    """Scale every non-zero row to unit l1 sum, l2 length or max entry; zero rows stay as they are."""
    norm = RowNorm(norm)
    if norm == RowNorm.NONE:
        return sigma
    return sigma.replace(canonical(normalize(sigma.matrix, norm=norm.value, axis=1, copy=True)))
