from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Mapping, Optional, Tuple

import numpy as np
import scipy.sparse as sp

from ..errors import ConfigurationError
from ..graph.sparse import density, offdiagonal_density
from ..graph.trust_graph import Convention

DEFAULT_ALPHA = 0.008
MAX_KMAX = 4


class DegreeNorm(str, Enum):
    NONE = "none"
    IN = "in"
    COMBINED = "combined"


class RowNorm(str, Enum):
    NONE = "none"
    L1 = "l1"
    L2 = "l2"
    MAX = "max"


class BoostDiagonal(str, Enum):
    KEEP = "keep"
    DROP = "drop"


class BoostSource(str, Enum):
    """Which sigma the boost step masks: the degree-normalized one or the raw Katz sum."""

    NORMALIZED = "normalized"
    RAW = "raw"


_DEGREE_CODES = {DegreeNorm.NONE: "N", DegreeNorm.IN: "I", DegreeNorm.COMBINED: "C"}
_ROW_CODES = {RowNorm.NONE: "N", RowNorm.L1: "L1", RowNorm.L2: "L2", RowNorm.MAX: "M"}


@dataclass(frozen=True)
class KatzConfig:
    alpha: float = DEFAULT_ALPHA
    k_max: int = 2
    degree_norm: DegreeNorm = DegreeNorm.NONE
    row_norm: RowNorm = RowNorm.NONE
    boost: bool = False
    convention: Convention = Convention.AS_PAPER
    boost_diag: BoostDiagonal = BoostDiagonal.DROP
    boost_source: BoostSource = BoostSource.NORMALIZED

    def __post_init__(self):
        # Coerce plain strings coming from flags and YAML.
        object.__setattr__(self, "degree_norm", DegreeNorm(self.degree_norm))
        object.__setattr__(self, "row_norm", RowNorm(self.row_norm))
        object.__setattr__(self, "convention", Convention(self.convention))
        object.__setattr__(self, "boost_diag", BoostDiagonal(self.boost_diag))
        object.__setattr__(self, "boost_source", BoostSource(self.boost_source))
        object.__setattr__(self, "boost", bool(self.boost))

        if not self.alpha > 0:
            raise ConfigurationError(f"alpha must be positive, got {self.alpha}")
        if not 1 <= int(self.k_max) <= MAX_KMAX:
            raise ConfigurationError(f"k_max must be in [1, {MAX_KMAX}], got {self.k_max}")
        if self.boost and self.k_max != 2:
            raise ConfigurationError("boost requires k_max = 2 (propagated similarities are the two-hop terms)")
        if self.boost and self.row_norm == RowNorm.NONE:
            raise ConfigurationError("boost requires a row norm (l1, l2 or max) to rescale propagated similarities")

    @property
    def label(self) -> str:
        """Canonical name, e.g. KS_PCMB = propagated, combined degree, max row norm, boosted."""
        propagation = "N" if self.k_max == 1 else ("P" if self.k_max == 2 else f"P{self.k_max}")
        name = (
            f"KS_{propagation}{_DEGREE_CODES[self.degree_norm]}"
            f"{_ROW_CODES[self.row_norm]}{'B' if self.boost else 'N'}"
        )
        if self.convention == Convention.TRANSPOSED:
            name += "-T"
        if self.boost and self.boost_diag == BoostDiagonal.KEEP:
            name += "-keepdiag"
        if self.boost and self.boost_source == BoostSource.RAW:
            name += "-rawboost"
        if self.alpha != DEFAULT_ALPHA:
            name += f"-a{self.alpha:g}"
        return name

    def validate_against_spectrum(self, spectral_radius: float) -> None:
        """Closed-form Katz only converges for alpha < 1 / lambda_A."""
        if spectral_radius > 0 and self.alpha * spectral_radius >= 1.0:
            raise ConfigurationError(
                f"alpha={self.alpha} violates alpha < 1/lambda_A = {1.0 / spectral_radius:.6g}"
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "alpha": float(self.alpha),
            "kmax": int(self.k_max),
            "degree_norm": self.degree_norm.value,
            "row_norm": self.row_norm.value,
            "boost": bool(self.boost),
            "boost_diag": self.boost_diag.value,
            "boost_source": self.boost_source.value,
            "convention": self.convention.value,
        }

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> "KatzConfig":
        """Build from flag-style keys (``kmax``, ``degree_norm``, ...); unknown keys are ignored."""
        kwargs: Dict[str, Any] = {}
        for key, target in (
            ("alpha", "alpha"),
            ("kmax", "k_max"),
            ("k_max", "k_max"),
            ("degree_norm", "degree_norm"),
            ("row_norm", "row_norm"),
            ("boost", "boost"),
            ("boost_diag", "boost_diag"),
            ("boost_source", "boost_source"),
            ("convention", "convention"),
        ):
            if values.get(key) is not None:
                kwargs[target] = values[key]
        if "alpha" in kwargs:
            kwargs["alpha"] = float(kwargs["alpha"])
        if "k_max" in kwargs:
            kwargs["k_max"] = int(kwargs["k_max"])
        return cls(**kwargs)


@dataclass(frozen=True)
class SimilarityMatrix:
    """User x user similarity; asymmetric in general, all values non-negative."""

    matrix: sp.csr_matrix
    config: Optional[KatzConfig] = None
    label: str = field(default="")
    k_max: Optional[int] = None

    def __post_init__(self):
        if not self.label:
            object.__setattr__(self, "label", self.config.label if self.config else "similarity")
        if self.k_max is None and self.config is not None:
            object.__setattr__(self, "k_max", self.config.k_max)

    @property
    def n_users(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def density(self) -> float:
        return density(self.matrix)

    @property
    def offdiagonal_density(self) -> float:
        return offdiagonal_density(self.matrix)

    def row(self, user: int) -> Tuple[np.ndarray, np.ndarray]:
        """Stored (columns, values) of row ``user``, columns ascending."""
        if not 0 <= user < self.matrix.shape[0]:
            raise IndexError(f"user {user} outside [0, {self.matrix.shape[0]})")
        start, stop = self.matrix.indptr[user], self.matrix.indptr[user + 1]
        return self.matrix.indices[start:stop].astype(np.int64), self.matrix.data[start:stop]

    def replace(self, matrix: sp.csr_matrix) -> "SimilarityMatrix":
        return SimilarityMatrix(matrix=matrix, config=self.config, label=self.label, k_max=self.k_max)
