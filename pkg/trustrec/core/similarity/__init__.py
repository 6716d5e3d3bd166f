from .boost import boost_propagated
from .config import (
    DEFAULT_ALPHA,
    BoostDiagonal,
    BoostSource,
    DegreeNorm,
    KatzConfig,
    RowNorm,
    SimilarityMatrix,
)
from .katz import katz_closed_form_oracle, katz_truncated, truncation_error_bound
from .normalization import degree_normalize, row_normalize
from .persistence import load_similarity, save_similarity, write_sidecar
from .pipeline import build_similarity

__all__ = [
    "DEFAULT_ALPHA",
    "BoostDiagonal",
    "BoostSource",
    "DegreeNorm",
    "KatzConfig",
    "RowNorm",
    "SimilarityMatrix",
    "boost_propagated",
    "build_similarity",
    "degree_normalize",
    "katz_closed_form_oracle",
    "katz_truncated",
    "load_similarity",
    "row_normalize",
    "save_similarity",
    "truncation_error_bound",
    "write_sidecar",
]
