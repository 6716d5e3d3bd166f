from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigurationError
from .sparse import canonical, identity, require_square

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectralEstimate:
    value: float
    iterations: int
    converged: bool

    def __float__(self) -> float:
        return self.value


def spectral_radius(adjacency, tol: float = 1e-6, max_iter: int = 1000, seed: int = 42) -> SpectralEstimate:
    """Estimate the dominant eigenvalue of a non-negative square matrix.

    Power iteration runs on ``A + I`` from a strictly positive start vector drawn
    with ``seed``; the Rayleigh quotient of the shifted matrix minus one is the
    estimate. The shift keeps the dominant eigenvalue unique on cyclic
    (permutation-like) graphs, where plain power iteration oscillates.
    Iteration stops once two successive estimates differ by less than ``tol``.
    """
    if tol <= 0:
        raise ConfigurationError(f"tol must be positive, got {tol}")
    n = require_square(adjacency, "adjacency")
    if n == 0:
        return SpectralEstimate(0.0, 0, True)

    shifted = canonical(adjacency) + identity(n)
    rng = np.random.default_rng(seed)
    x = 1.0 + rng.random(n)
    x /= np.linalg.norm(x)

    previous = math.nan
    estimate = math.nan
    for iteration in range(1, max_iter + 1):
        y = shifted @ x
        estimate = float(x @ y)
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            return SpectralEstimate(0.0, iteration, True)
        x = y / norm
        if abs(estimate - previous) < tol:
            logger.debug(f"Power iteration converged after {iteration} iterations: {estimate - 1.0:.6f}")
            return SpectralEstimate(estimate - 1.0, iteration, True)
        previous = estimate

    logger.warning(
        f"Power iteration did not converge within {max_iter} iterations; last estimate {estimate - 1.0:.6f}"
    )
    return SpectralEstimate(estimate - 1.0, max_iter, False)
