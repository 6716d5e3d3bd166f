from __future__ import annotations

import logging
from typing import Optional

from ..errors import ConfigurationError
from ..graph.trust_graph import DegreeMode, DegreeVector, TrustGraph, degree_vector
from .boost import boost_propagated
from .config import BoostSource, DegreeNorm, KatzConfig, RowNorm, SimilarityMatrix
from .katz import katz_truncated
from .normalization import degree_normalize, row_normalize

logger = logging.getLogger(__name__)


def build_similarity(
    graph: TrustGraph,
    degrees: Optional[DegreeVector] = None,
    config: Optional[KatzConfig] = None,
) -> SimilarityMatrix:
    """Katz sum, then degree normalization, row normalization and boost, each when configured.

    ``degrees`` is computed from the graph when omitted. The boost step masks the
    degree/row-normalized matrix unless ``config.boost_source`` is ``raw``.
    """
    config = config or KatzConfig()
    graph = graph.with_convention(config.convention)
    adjacency = graph.adjacency

    raw = katz_truncated(adjacency, config.alpha, config.k_max, config=config)
    sigma = raw

    if config.degree_norm != DegreeNorm.NONE:
        mode = DegreeMode(config.degree_norm.value)
        if degrees is None:
            degrees = degree_vector(graph, mode)
        elif degrees.mode != mode:
            raise ConfigurationError(
                f"degree vector mode {degrees.mode.value} does not match degree_norm {config.degree_norm.value}"
            )
        sigma = degree_normalize(sigma, degrees)

    if config.row_norm != RowNorm.NONE:
        sigma = row_normalize(sigma, config.row_norm)

    if config.boost:
        source = raw if config.boost_source == BoostSource.RAW else sigma
        sigma = boost_propagated(adjacency, source, config.row_norm, config.boost_diag)

    result = SimilarityMatrix(matrix=sigma.matrix, config=config, k_max=config.k_max)
    logger.info(
        f"{result.label}: nnz={result.matrix.nnz} off-diagonal density={result.offdiagonal_density:.6g}"
    )
    return result
