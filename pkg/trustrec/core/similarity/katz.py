"""Katz similarity: the truncated power series and a dense closed-form oracle."""
from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np

from ..errors import ConfigurationError, ShapeError, SingularSystemError
from ..graph.sparse import canonical, identity, require_square
from .config import MAX_KMAX, KatzConfig, SimilarityMatrix

logger = logging.getLogger(__name__)

ORACLE_MAX_USERS = 200


def katz_truncated(adjacency, alpha: float, k_max: int, config: Optional[KatzConfig] = None) -> SimilarityMatrix:
    """Return sum_{k=0}^{k_max} (alpha*A)^k by iterated sparse accumulation.

    sigma <- I; P <- I; repeat k_max times: P <- alpha*A*P; sigma <- sigma + P.
    """
    n = require_square(adjacency, "adjacency")
    if k_max < 0:
        raise ConfigurationError(f"k_max must be non-negative, got {k_max}")
    if not alpha > 0:
        raise ConfigurationError(f"alpha must be positive, got {alpha}")

    scaled = canonical(adjacency) * float(alpha)
    sigma = identity(n)
    term = identity(n)
    for step in range(1, k_max + 1):
        term = canonical(scaled @ term)
        sigma = sigma + term
        logger.debug(f"Katz step {step}: term nnz={term.nnz}")
    sigma = canonical(sigma)

    if config is None and 1 <= k_max <= MAX_KMAX:
        config = KatzConfig(alpha=alpha, k_max=k_max)
    label = config.label if config is not None else f"katz(alpha={alpha:g}, k_max={k_max})"
    return SimilarityMatrix(matrix=sigma, config=config, label=label, k_max=k_max)


def katz_closed_form_oracle(adjacency, alpha: float, spectral_radius: Optional[float] = None) -> np.ndarray:
    """Dense (I - alpha*A)^-1 for small test graphs.

    The series only converges for alpha < 1/lambda_A; ``spectral_radius`` is
    taken from the dense eigenvalues when not given.
    """
    dense = np.asarray(adjacency.toarray() if hasattr(adjacency, "toarray") else adjacency, dtype=np.float64)
    if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
        raise ShapeError(f"adjacency must be square, got {dense.shape}")
    n = dense.shape[0]
    if n > ORACLE_MAX_USERS:
        raise ConfigurationError(f"closed-form oracle is limited to {ORACLE_MAX_USERS} users, got {n}")
    if spectral_radius is None:
        spectral_radius = float(np.max(np.abs(np.linalg.eigvals(dense)))) if n else 0.0
    KatzConfig(alpha=alpha).validate_against_spectrum(spectral_radius)

    system = np.eye(n) - alpha * dense
    try:
        result = np.linalg.solve(system, np.eye(n))
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"I - alpha*A is singular for alpha={alpha}; alpha must stay below 1/lambda_A") from exc
    if not np.all(np.isfinite(result)):
        raise SingularSystemError(f"I - alpha*A is numerically singular for alpha={alpha}")
    return result


def truncation_error_bound(alpha: float, spectral_radius: float, k_max: int) -> float:
    """Geometric tail (alpha*lambda)^(k_max+1) / (1 - alpha*lambda) left out by truncation."""
    ratio = alpha * spectral_radius
    if ratio >= 1.0:
        return math.inf
    return ratio ** (k_max + 1) / (1.0 - ratio)
