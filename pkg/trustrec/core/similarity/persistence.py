from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

from ...utils.config_manager import format_key_values, parse_key_values
from ..graph.sparse import load_triplets, save_triplets
from .config import KatzConfig, SimilarityMatrix

logger = logging.getLogger(__name__)

SIDECAR_SUFFIX = ".cfg"


def sidecar_path(path: Union[str, Path]) -> Path:
    path = Path(path)
    return path.with_name(path.name + SIDECAR_SUFFIX)


def write_sidecar(path: Union[str, Path], values: Dict[str, Any]) -> Path:
    """Provenance next to an output file as ``key=value`` lines, keys in insertion order."""
    target = sidecar_path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_key_values(values))
    return target


def read_sidecar(path: Union[str, Path]) -> Dict[str, Any]:
    sidecar = sidecar_path(path)
    if not sidecar.exists():
        logger.warning("No provenance sidecar found for %s", path)
        return {}
    with sidecar.open("r", encoding="utf-8") as fh:
        return parse_key_values(fh)


def save_similarity(similarity: SimilarityMatrix, path: Union[str, Path]) -> Path:
    path = save_triplets(similarity.matrix, path)
    provenance: Dict[str, Any] = similarity.config.to_dict() if similarity.config else {"label": similarity.label}
    provenance.update(
        {
            "label": similarity.label,
            "n_users": similarity.n_users,
            "nnz": int(similarity.matrix.nnz),
            "offdiagonal_density": float(similarity.offdiagonal_density),
        }
    )
    write_sidecar(path, provenance)
    logger.info(f"Similarity {similarity.label} saved to {path}")
    return path


def load_similarity(path: Union[str, Path]) -> SimilarityMatrix:
    matrix = load_triplets(path)
    provenance = read_sidecar(path)

    config: Optional[KatzConfig] = None
    if "kmax" in provenance:
        config = KatzConfig.from_mapping(provenance)
    return SimilarityMatrix(matrix=matrix, config=config, label=str(provenance.get("label", "")))
