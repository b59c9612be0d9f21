"""Calibrate rules that focus testing on defect-prone parts using inspection and product metrics."""

from .code_metrics import (
    LocCounts,
    MethodSpan,
    PartMetrics,
    StructuralParseError,
    count_loc,
    cyclomatic,
    extract_methods,
    extract_part_metrics,
)
from .evaluator import (
    DuplicateEvaluationError,
    Scores,
    TrendClass,
    TrendClassification,
    apply_results,
    classify,
    defect_coverage,
    effectiveness,
    evaluate_run,
    precision_recall,
    trend,
    update_significance,
)
from .model import (
    Category,
    Combinator,
    DefectRecord,
    Direction,
    EvaluationResult,
    FindingKind,
    InspectionValue,
    MetricSpec,
    Part,
    PartKind,
    PercentOfMax,
    Phase,
    Prioritization,
    QaRun,
    SelectionRule,
    Severity,
    SeverityScope,
    Source,
    TopN,
    validate_run,
)
from .monitor import MonitorConfig, MonitorResult, monitor_inspection
from .prioritizer import rank_parts, prioritize
from .rules import RuleSetConfig, compute_threshold, describe_rule, generate_rule_set, metric_value
from .serialize import LoadError, load_run
from .store import RunStore

__version__ = "0.1.0"
