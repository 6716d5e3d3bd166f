from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import pandas as pd

from ..similarity.config import DegreeNorm, KatzConfig, RowNorm
from .metrics import MetricsReport

FLOAT_FORMAT = "%.6f"

_DEGREE_NAMES = {DegreeNorm.NONE: "No degree", DegreeNorm.IN: "In degree", DegreeNorm.COMBINED: "Combined"}
_ROW_NAMES = {RowNorm.NONE: "N/A", RowNorm.L1: "L1", RowNorm.L2: "L2", RowNorm.MAX: "Max"}


def _write(frame: pd.DataFrame, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def metrics_frame(reports: Sequence[MetricsReport]) -> pd.DataFrame:
    columns = ["config", "k", "ndcg", "precision", "recall", "users", "empty_lists"]
    if not reports:
        return pd.DataFrame(columns=columns)
    return pd.concat([report.to_frame() for report in reports], ignore_index=True)[columns]


def curve_frame(reports: Sequence[MetricsReport]) -> pd.DataFrame:
    columns = ["config", "k", "recall", "precision"]
    if not reports:
        return pd.DataFrame(columns=columns)
    return pd.concat([report.curve_frame() for report in reports], ignore_index=True)[columns]


def write_metrics_csv(reports: Sequence[MetricsReport], path: Union[str, Path]) -> Path:
    return _write(metrics_frame(reports), path)


def write_curve_csv(reports: Sequence[MetricsReport], path: Union[str, Path]) -> Path:
    return _write(curve_frame(reports), path)


def format_results_table(
    reports: Sequence[MetricsReport],
    configs: Optional[Dict[str, KatzConfig]] = None,
    k: int = 10,
) -> str:
    """Algorithm / k_max / degree norm / row norm / boost / nDCG / R / P at cutoff ``k``."""
    configs = configs or {}
    rows: List[Dict[str, str]] = []
    for report in reports:
        ndcg, precision, recall = report.at(k)
        config = configs.get(report.label)
        rows.append(
            {
                "Algorithm": report.label,
                "k_max": str(config.k_max) if config else "",
                "Degree norm.": _DEGREE_NAMES[config.degree_norm] if config else "",
                "Row norm.": _ROW_NAMES[config.row_norm] if config else "",
                "Boost": ("Yes" if config.boost else "No") if config else "",
                "nDCG": f"{ndcg:.4f}",
                "R": f"{recall:.4f}",
                "P": f"{precision:.4f}",
            }
        )
    if not rows:
        return "(no results)"
    return pd.DataFrame(rows).to_string(index=False)
