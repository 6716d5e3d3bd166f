from __future__ import annotations

from typing import Dict, Iterable, List, Union

from ..errors import ConfigurationError
from ..graph.trust_graph import Convention
from ..similarity.config import (
    DEFAULT_ALPHA,
    BoostDiagonal,
    BoostSource,
    DegreeNorm,
    KatzConfig,
    RowNorm,
)

SWEEP_KMAX = (1, 2)
HEADLINE_ROWS = (
    dict(k_max=2, degree_norm=DegreeNorm.COMBINED, row_norm=RowNorm.MAX, boost=True),
    dict(k_max=2, degree_norm=DegreeNorm.COMBINED, row_norm=RowNorm.MAX, boost=False),
    dict(k_max=2, degree_norm=DegreeNorm.COMBINED, row_norm=RowNorm.L1, boost=True),
    dict(k_max=2, degree_norm=DegreeNorm.NONE, row_norm=RowNorm.L2, boost=True),
    dict(k_max=1, degree_norm=DegreeNorm.COMBINED, row_norm=RowNorm.MAX, boost=False),
    dict(k_max=1, degree_norm=DegreeNorm.IN, row_norm=RowNorm.NONE, boost=False),
    dict(k_max=2, degree_norm=DegreeNorm.NONE, row_norm=RowNorm.NONE, boost=False),
)


def dedupe_configs(configs: Iterable[KatzConfig]) -> List[KatzConfig]:
    unique: Dict[str, KatzConfig] = {}
    for config in configs:
        unique.setdefault(config.label, config)
    return list(unique.values())


def sweep_configs(
    alpha: float = DEFAULT_ALPHA,
    convention: Union[Convention, str] = Convention.AS_PAPER,
    boost_diag: Union[BoostDiagonal, str] = BoostDiagonal.DROP,
    boost_source: Union[BoostSource, str] = BoostSource.NORMALIZED,
) -> List[KatzConfig]:
    """Every valid k_max x degree norm x row norm x boost combination.

    Boost needs k_max = 2 and a row norm, which leaves 24 plain and 9 boosted
    configurations.
    """
    configs: List[KatzConfig] = []
    for k_max in SWEEP_KMAX:
        for degree_norm in DegreeNorm:
            for row_norm in RowNorm:
                for boost in (False, True):
                    try:
                        configs.append(
                            KatzConfig(
                                alpha=alpha,
                                k_max=k_max,
                                degree_norm=degree_norm,
                                row_norm=row_norm,
                                boost=boost,
                                convention=convention,
                                boost_diag=boost_diag,
                                boost_source=boost_source,
                            )
                        )
                    except ConfigurationError:
                        continue
    return dedupe_configs(configs)


def headline_configs(**overrides) -> List[KatzConfig]:
    """The seven headline Katz configurations, best first.

    ``overrides`` may set alpha, convention, boost_diag or boost_source.
    """
    return [KatzConfig(**row, **overrides) for row in HEADLINE_ROWS]
