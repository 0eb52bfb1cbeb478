"""Ranking with ties from noisy repeated measurements."""

from .core import (
    IQI,
    ComparisonMatrix,
    Dataset,
    IntervalSummary,
    MeasurementSet,
    Outcome,
    QuantileLimits,
    Report,
    Violation,
    build_comparison_matrix,
    check_strict_partial_order,
    compare_intervals,
    interval_of,
    median_relation,
    quantile_value,
)
from .dfg import (
    ClassSplit,
    Color,
    ColoredDfg,
    VariantSequence,
    build_colored_dfg,
    emit_dot,
    split_from_ranking,
    split_top_k_median,
)
from .graphs import (
    build_component_dag,
    build_directed_graph,
    build_incomparability_graph,
    compute_depths,
    connected_components,
    sparsify,
    transitive_reduction,
)
from .rankers import (
    ArrangedList,
    OrderClass,
    PartialRanking,
    classify_order,
    enumerate_partial_rankings,
    methodology1,
    methodology2,
    methodology3,
    rank,
    validate_partial_ranking,
)
from .reliability import QuantileSweep, ReliabilityReport, quantile_sweep, reliability_report

__version__ = "0.1.0"

__all__ = [
    "ArrangedList",
    "ClassSplit",
    "Color",
    "ColoredDfg",
    "ComparisonMatrix",
    "Dataset",
    "IQI",
    "IntervalSummary",
    "MeasurementSet",
    "OrderClass",
    "Outcome",
    "PartialRanking",
    "QuantileLimits",
    "QuantileSweep",
    "ReliabilityReport",
    "Report",
    "VariantSequence",
    "Violation",
    "build_colored_dfg",
    "build_comparison_matrix",
    "build_component_dag",
    "build_directed_graph",
    "build_incomparability_graph",
    "check_strict_partial_order",
    "classify_order",
    "compare_intervals",
    "compute_depths",
    "connected_components",
    "emit_dot",
    "enumerate_partial_rankings",
    "interval_of",
    "median_relation",
    "methodology1",
    "methodology2",
    "methodology3",
    "quantile_sweep",
    "quantile_value",
    "rank",
    "reliability_report",
    "sparsify",
    "split_from_ranking",
    "split_top_k_median",
    "transitive_reduction",
    "validate_partial_ranking",
]

