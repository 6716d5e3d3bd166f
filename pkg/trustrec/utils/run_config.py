"""RunConfig resolution: packaged defaults < user config file < explicit flags."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from ..core.errors import ConfigurationError
from ..core.recommender.baselines import JaccardSets
from ..core.similarity.config import KatzConfig
from .config_manager import ConfigManager

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[1] / "config" / "default.yml"


@dataclass(frozen=True)
class RunConfig:
    katz: KatzConfig = field(default_factory=KatzConfig)
    trust_path: Optional[Path] = None
    ratings_path: Optional[Path] = None
    out_dir: Path = Path("output")
    k_neighbors: int = 60
    top_n: int = 10
    cold_threshold: int = 10
    delimiter: Optional[str] = None
    seed: int = 42
    threads: int = 1
    eigen_tol: float = 1e-6
    eigen_max_iter: int = 1000
    min_rating: Optional[float] = None
    jaccard_sets: JaccardSets = JaccardSets.OUT

    def __post_init__(self):
        object.__setattr__(self, "jaccard_sets", JaccardSets(self.jaccard_sets))
        if self.k_neighbors < 1:
            raise ConfigurationError(f"neighbors must be at least 1, got {self.k_neighbors}")
        if self.top_n < 1:
            raise ConfigurationError(f"topn must be at least 1, got {self.top_n}")
        if self.cold_threshold < 1:
            raise ConfigurationError(f"cold-threshold must be at least 1, got {self.cold_threshold}")
        if self.threads < 1:
            raise ConfigurationError(f"threads must be at least 1, got {self.threads}")
        if self.delimiter is not None and len(self.delimiter) != 1:
            raise ConfigurationError(f"delimiter must be a single character, got {self.delimiter!r}")

    @property
    def dataset_bundle(self) -> Path:
        return self.out_dir / "dataset.joblib"

    def to_dict(self) -> Dict[str, Any]:
        values: Dict[str, Any] = {
            "trust": str(self.trust_path) if self.trust_path else None,
            "ratings": str(self.ratings_path) if self.ratings_path else None,
            "out": str(self.out_dir),
        }
        values.update(self.katz.to_dict())
        values.update(
            {
                "neighbors": self.k_neighbors,
                "topn": self.top_n,
                "cold_threshold": self.cold_threshold,
                "delimiter": self.delimiter,
                "seed": self.seed,
                "tol": self.eigen_tol,
                "max_iter": self.eigen_max_iter,
                "min_rating": self.min_rating,
                "jaccard_sets": self.jaccard_sets.value,
            }
        )
        return values


def _unescape(delimiter: Optional[str]) -> Optional[str]:
    if delimiter in (None, ""):
        return None
    return {"\\t": "\t", "tab": "\t", "space": " "}.get(delimiter, delimiter)


def _boost_applies(values: Mapping[str, Any]) -> bool:
    return int(values.get("kmax") or 2) == 2 and str(values.get("row_norm") or "max") != "none"


def resolve_run_config(
    overrides: Mapping[str, Any],
    config_file: Optional[Path] = None,
    defaults_path: Path = DEFAULT_CONFIG_PATH,
) -> RunConfig:
    """Merge packaged defaults, an optional config file and non-None flag values.

    An explicit ``boost`` always wins; the packaged default is dropped for
    configurations it cannot apply to (k_max other than 2, or no row norm).
    """
    values = ConfigManager(defaults_path).flat()
    explicit: Dict[str, Any] = {}
    if config_file is not None:
        config_file = Path(config_file)
        if not config_file.exists():
            raise FileNotFoundError(f"Config file not found at {config_file}")
        explicit.update(ConfigManager(config_file).flat())
    explicit.update({key: value for key, value in overrides.items() if value is not None})
    values.update(explicit)
    if "boost" not in explicit and not _boost_applies(values):
        # the packaged boost default only covers the k_max = 2, row-normalized configurations
        values["boost"] = False

    katz = KatzConfig.from_mapping(values)
    trust = values.get("trust")
    ratings = values.get("ratings")
    min_rating = values.get("min_rating")
    return RunConfig(
        katz=katz,
        trust_path=Path(trust) if trust else None,
        ratings_path=Path(ratings) if ratings else None,
        out_dir=Path(values.get("out") or "output"),
        k_neighbors=int(values["neighbors"]),
        top_n=int(values["topn"]),
        cold_threshold=int(values["cold_threshold"]),
        delimiter=_unescape(values.get("delimiter")),
        seed=int(values["seed"]),
        threads=int(values["threads"]),
        eigen_tol=float(values["tol"]),
        eigen_max_iter=int(values["max_iter"]),
        min_rating=float(min_rating) if min_rating is not None else None,
        jaccard_sets=values.get("jaccard_sets") or JaccardSets.OUT,
    )
