from __future__ import annotations

import logging
from typing import Union

import scipy.sparse as sp

from ..errors import ConfigurationError
from ..graph.sparse import canonical, require_same_shape
from .config import BoostDiagonal, RowNorm, SimilarityMatrix
from .normalization import row_normalize

logger = logging.getLogger(__name__)


def boost_propagated(
    adjacency,
    sigma3: SimilarityMatrix,
    norm: Union[RowNorm, str],
    diagonal: Union[BoostDiagonal, str] = BoostDiagonal.DROP,
) -> SimilarityMatrix:
    """Rescale two-hop similarities per row and put direct trust back at exactly 1.

    Entries of ``sigma3`` at positions with a trust edge are masked out, the rest
    are row-normalized with ``norm`` and the adjacency is added on top.
    With ``diagonal=drop`` self-similarity is removed before normalizing so it
    cannot dominate the max norm.
    """
    norm = RowNorm(norm)
    diagonal = BoostDiagonal(diagonal)
    if norm == RowNorm.NONE:
        raise ConfigurationError("boost needs a row norm (l1, l2 or max)")
    if sigma3.k_max is not None and sigma3.k_max != 2:
        raise ConfigurationError(f"boost is defined on the k_max=2 Katz sum, got k_max={sigma3.k_max}")
    require_same_shape(adjacency, sigma3.matrix, "adjacency and sigma")

    edges = canonical(adjacency)
    edge_mask = edges.copy()
    edge_mask.data[:] = 1.0

    masked = canonical(sigma3.matrix - sigma3.matrix.multiply(edge_mask))
    if diagonal == BoostDiagonal.DROP:
        masked = canonical(masked - sp.diags(masked.diagonal(), format="csr"))

    propagated = row_normalize(sigma3.replace(masked), norm)
    boosted = canonical(edge_mask + propagated.matrix)
    logger.debug(f"Boosted {propagated.matrix.nnz} propagated entries over {edges.nnz} trust edges")
    return sigma3.replace(boosted)
