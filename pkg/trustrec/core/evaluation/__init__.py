from .experiment import (
    ExperimentEntry,
    baseline_entries,
    check_no_leakage,
    evaluate_recommender,
    katz_entry,
    run_experiment,
)
from .metrics import (
    DEFAULT_KS,
    MetricsReport,
    evaluate_user,
    hits_at_k,
    ndcg_at_k,
    precision_at_k,
    recall_at_k,
)
from .reports import curve_frame, format_results_table, metrics_frame, write_curve_csv, write_metrics_csv
from .split import DEFAULT_COLD_THRESHOLD, ColdStartSplit, cold_start_split
from .sweep import dedupe_configs, headline_configs, sweep_configs

__all__ = [
    "DEFAULT_COLD_THRESHOLD",
    "DEFAULT_KS",
    "ColdStartSplit",
    "ExperimentEntry",
    "MetricsReport",
    "baseline_entries",
    "check_no_leakage",
    "cold_start_split",
    "curve_frame",
    "dedupe_configs",
    "evaluate_recommender",
    "evaluate_user",
    "format_results_table",
    "headline_configs",
    "hits_at_k",
    "katz_entry",
    "metrics_frame",
    "ndcg_at_k",
    "precision_at_k",
    "recall_at_k",
    "run_experiment",
    "sweep_configs",
    "write_curve_csv",
    "write_metrics_csv",
]
