"""Shared domain types: parts, defect records, QA runs, selection rules and results.

Everything here is an immutable value. Functions that "update" something
(e.g. significance) return a new instance via :func:`dataclasses.replace`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Mapping, Optional, Union


class PartKind(str, Enum):
    CLASS = "class"
    MODULE = "module"


class Phase(str, Enum):
    INSPECTION = "inspection"
    TEST = "test"


class Severity(str, Enum):
    HIGH = "high"
    MEDIUM = "medium"
    LOW = "low"
    UNCLASSIFIED = "unclassified"


class FindingKind(str, Enum):
    DEFECT = "defect"
    COMMENT = "comment"


class Source(str, Enum):
    INSPECTION = "inspection"
    PRODUCT = "product"


class InspectionValue(str, Enum):
    CONTENT = "content"
    DENSITY = "density"


class SeverityScope(str, Enum):
    ALL = "all"
    HIGH = "high"
    MEDIUM = "medium"
    LOW = "low"

    def matches(self, severity: Severity) -> bool:
        # unclassified findings only count towards the "all" scope
        return self is SeverityScope.ALL or self.value == severity.value


class Direction(str, Enum):
    LARGE = "large"
    SMALL = "small"


class Combinator(str, Enum):
    NONE = "none"
    CONJUNCTION = "conjunction"
    UNION = "union"


class Category(str, Enum):
    CAT1 = "cat1"
    CAT2 = "cat2"
    CAT3 = "cat3"
    CAT4 = "cat4"
    NOT_ASSESSABLE = "not_assessable"

    @property
    def effective(self) -> Optional[bool]:
        if self is Category.NOT_ASSESSABLE:
            return None
        return self in (Category.CAT1, Category.CAT2)

    @property
    def rank(self) -> int:
        """1..4 for assessable categories, 5 otherwise (smaller is better)."""
        if self is Category.NOT_ASSESSABLE:
            return 5
        return int(self.value[-1])


PRODUCT_METRICS = ("class_length", "method_length", "mccabe", "waste_per_line")
CUSTOM_PREFIX = "custom:"


@dataclass(frozen=True)
class Part:
    id: str
    name: str = ""
    kind: PartKind = PartKind.CLASS
    loc: int = 0
    mean_method_length: float = 0.0
    mccabe: int = 0
    waste_per_line: Optional[float] = None
    custom_metrics: Mapping[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class DefectRecord:
    id: str
    part_id: str
    phase: Phase
    severity: Severity = Severity.UNCLASSIFIED
    finding_kind: FindingKind = FindingKind.DEFECT
    description: str = ""


@dataclass(frozen=True)
class QaRun:
    id: str
    timestamp: datetime
    parts: tuple[Part, ...]
    defects: tuple[DefectRecord, ...] = ()
    inspection_coverage: Mapping[str, float] = field(default_factory=dict)
    reading_rate: Optional[float] = None
    context_notes: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        object.__setattr__(self, "defects", tuple(self.defects))

    @property
    def part_ids(self) -> list[str]:
        return [p.id for p in self.parts]

    def part(self, part_id: str) -> Part:
        for p in self.parts:
            if p.id == part_id:
                return p
        raise KeyError(part_id)

    def coverage(self, part_id: str) -> float:
        return float(self.inspection_coverage.get(part_id, 1.0))

    def test_defect_counts(self) -> dict[str, int]:
        """Number of test defects per part id (parts without any map to 0)."""
        counts = {p.id: 0 for p in self.parts}
        for d in self.defects:
            if d.phase is Phase.TEST and d.part_id in counts:
                counts[d.part_id] += 1
        return counts

    def defect_prone(self) -> frozenset[str]:
        return frozenset(pid for pid, n in self.test_defect_counts().items() if n > 0)


@dataclass(frozen=True)
class MetricSpec:
    source: Source
    inspection_value: Optional[InspectionValue] = None
    severity_scope: Optional[SeverityScope] = None
    scaled: bool = False
    exclude_comments: bool = False
    product_metric: Optional[str] = None

    def __post_init__(self) -> None:
        if self.source is Source.INSPECTION:
            if self.inspection_value is None:
                raise ValueError("inspection metric needs inspection_value")
            if self.severity_scope is None:
                object.__setattr__(self, "severity_scope", SeverityScope.ALL)
            if self.product_metric is not None:
                raise ValueError("inspection metric cannot name a product_metric")
        else:
            if self.inspection_value is not None or self.severity_scope is not None:
                raise ValueError("product metric cannot carry inspection fields")
            if self.scaled or self.exclude_comments:
                raise ValueError("scaled/exclude_comments only apply to inspection metrics")
            pm = self.product_metric
            if pm is None:
                raise ValueError("product metric needs product_metric")
            if pm not in PRODUCT_METRICS and not (pm.startswith(CUSTOM_PREFIX) and len(pm) > len(CUSTOM_PREFIX)):
                raise ValueError(f"unknown product metric {pm!r}")

    @classmethod
    def inspection(
        cls,
        value: Union[InspectionValue, str] = InspectionValue.CONTENT,
        scope: Union[SeverityScope, str] = SeverityScope.ALL,
        *,
        scaled: bool = False,
        exclude_comments: bool = False,
    ) -> "MetricSpec":
        return cls(
            Source.INSPECTION,
            inspection_value=InspectionValue(value),
            severity_scope=SeverityScope(scope),
            scaled=scaled,
            exclude_comments=exclude_comments,
        )

    @classmethod
    def product(cls, metric: str) -> "MetricSpec":
        return cls(Source.PRODUCT, product_metric=metric)

    @property
    def integer_valued(self) -> bool:
        if self.source is Source.INSPECTION:
            return self.inspection_value is InspectionValue.CONTENT and not self.scaled
        return self.product_metric in ("class_length", "mccabe")

    @property
    def token(self) -> str:
        """Short stable token used inside rule ids."""
        if self.source is Source.INSPECTION:
            base = "dc" if self.inspection_value is InspectionValue.CONTENT else "dd"
            tok = f"{base}.{self.severity_scope.value}"
            if self.scaled:
                tok += ".scaled"
            if self.exclude_comments:
                tok += ".nocomments"
            return tok
        return self.product_metric


@dataclass(frozen=True)
class PercentOfMax:
    p: float

    def __post_init__(self) -> None:
        if not 0 < self.p <= 1:
            raise ValueError(f"percent must lie in (0, 1], got {self.p}")

    @property
    def token(self) -> str:
        return f"p{self.p:g}"


@dataclass(frozen=True)
class TopN:
    n: int

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"top-N needs a positive integer, got {self.n!r}")

    @property
    def token(self) -> str:
        return f"top{self.n}"


Condition = Union[PercentOfMax, TopN]


@dataclass(frozen=True)
class SelectionRule:
    rule_id: str
    assumption_id: str
    primary_metric: MetricSpec
    primary_direction: Direction
    condition: Condition
    secondary_metric: Optional[MetricSpec] = None
    secondary_direction: Optional[Direction] = None
    combinator: Combinator = Combinator.NONE
    significance: int = 0
    history: tuple[tuple[str, Category], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "history", tuple((r, Category(c)) for r, c in self.history))
        has_second = self.secondary_metric is not None
        if (self.combinator is Combinator.NONE) == has_second:
            raise ValueError(f"{self.rule_id}: combinator=none iff no secondary metric")
        if has_second and self.secondary_direction is None:
            raise ValueError(f"{self.rule_id}: secondary metric needs a direction")
        if self.combinator is Combinator.CONJUNCTION and not isinstance(self.condition, PercentOfMax):
            raise ValueError(f"{self.rule_id}: conjunction requires a percent-of-max condition")
        if self.combinator is Combinator.UNION and not isinstance(self.condition, TopN):
            raise ValueError(f"{self.rule_id}: union requires a top-N condition")
        effective = sum(1 for _, c in self.history if c.effective)
        if self.significance != effective:
            raise ValueError(
                f"{self.rule_id}: significance {self.significance} != effective history entries {effective}"
            )

    def metrics(self) -> list[tuple[MetricSpec, Direction]]:
        out = [(self.primary_metric, self.primary_direction)]
        if self.secondary_metric is not None:
            out.append((self.secondary_metric, self.secondary_direction))
        return out


@dataclass(frozen=True)
class Prioritization:
    rule_id: str
    run_id: str
    selected: frozenset[str]
    thresholds_used: tuple[tuple[str, float], ...] = ()
    undefined: tuple[tuple[str, str], ...] = ()
    """(part_id, reason) for parts whose metric could not be computed."""


@dataclass(frozen=True)
class EvaluationResult:
    rule_id: str
    run_id: str
    category: Category
    selected: frozenset[str] = frozenset()
    precision: Optional[float] = None
    recall: Optional[float] = None
    f1: Optional[float] = None
    defect_coverage: Optional[float] = None
    selection_ratio: float = 0.0
    vacuous: bool = False
    significance: int = 0
    error: Optional[str] = None

    @property
    def effective(self) -> Optional[bool]:
        return self.category.effective


def validate_run(run: QaRun) -> list[str]:
    """Check the structural invariants of a run.

    Returns a list of human-readable violations; an empty list means the run
    is well-formed. Nothing is raised.
    """
    problems: list[str] = []
    seen: set[str] = set()
    for p in run.parts:
        if p.id in seen:
            problems.append(f"part {p.id}: duplicate id")
        seen.add(p.id)
        if p.loc < 0:
            problems.append(f"part {p.id}: loc must be >= 0")
        if p.mean_method_length < 0:
            problems.append(f"part {p.id}: mean_method_length must be >= 0")
        if p.mccabe < 0:
            problems.append(f"part {p.id}: mccabe must be >= 0")
        if p.waste_per_line is not None and p.waste_per_line < 0:
            problems.append(f"part {p.id}: waste_per_line must be >= 0")

    defect_ids: set[str] = set()
    for d in run.defects:
        if d.id in defect_ids:
            problems.append(f"defect {d.id}: duplicate id")
        defect_ids.add(d.id)
        if d.part_id not in seen:
            problems.append(f"defect {d.id}: unknown part_id {d.part_id}")
        if d.phase is Phase.TEST and d.finding_kind is not FindingKind.DEFECT:
            problems.append(f"defect {d.id}: test findings must have finding_kind defect")

    for pid in sorted(run.inspection_coverage):
        v = run.inspection_coverage[pid]
        if pid not in seen:
            problems.append(f"coverage for {pid}: unknown part_id")
        if not 0 < v <= 1:
            problems.append(f"coverage for {pid} outside (0,1]")

    if run.reading_rate is not None and run.reading_rate < 0:
        problems.append("reading_rate must be >= 0")
    return problems
