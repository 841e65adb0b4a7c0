"""Hierarchical confusion matrix for evaluating hierarchical classifiers."""
from .confusion import (
    HierarchicalConfusion,
    aggregate,
    best_true_path,
    confuse_record,
    confuse_spl,
    confuse_spl_tree,
)
from .dataset import (
    EvaluationRun,
    evaluate_model,
    infer_kind,
    parse_prediction_file,
    parse_taxonomy_file,
    parse_truth_file,
)
from .metrics import MetricReport, Undefined, flat_metrics, format_percent, hierarchical_prf, is_defined
from .taxonomy import (
    LabelDepth,
    PathCount,
    ProblemKind,
    Structure,
    Taxonomy,
    build_taxonomy,
    common_path,
    path_leaf,
)

__version__ = "0.1.0"

__all__ = [
    "EvaluationRun",
    "HierarchicalConfusion",
    "LabelDepth",
    "MetricReport",
    "PathCount",
    "ProblemKind",
    "Structure",
    "Taxonomy",
    "Undefined",
    "aggregate",
    "best_true_path",
    "build_taxonomy",
    "common_path",
    "confuse_record",
    "confuse_spl",
    "confuse_spl_tree",
    "evaluate_model",
    "flat_metrics",
    "format_percent",
    "hierarchical_prf",
    "infer_kind",
    "is_defined",
    "parse_prediction_file",
    "parse_taxonomy_file",
    "parse_truth_file",
    "path_leaf",
]
