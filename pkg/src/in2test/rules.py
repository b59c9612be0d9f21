"""Metric evaluation, percent-of-max thresholds and systematic rule generation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .model import (
    CUSTOM_PREFIX,
    Combinator,
    Direction,
    FindingKind,
    InspectionValue,
    MetricSpec,
    Part,
    PercentOfMax,
    Phase,
    QaRun,
    SelectionRule,
    SeverityScope,
    Source,
    TopN,
)


class MetricError(ValueError):
    """A metric cannot be computed for a part."""


class UndefinedMetricError(MetricError):
    pass


class MissingMetricError(MetricError):
    pass


# Families of the percent-of-max rule space.
PERCENT_FAMILIES = (
    "inspection",
    "class_length",
    "method_length",
    "mccabe",
    "inspection_x_class_length",
    "inspection_x_method_length",
    "inspection_x_mccabe",
)
# Ranked (top-N) assumptions over modules: four inspection variants, two size,
# two waste, two unions.
TOPN_FAMILY = "top_n"
ALL_FAMILIES = PERCENT_FAMILIES + (TOPN_FAMILY,)

_SCOPES = (SeverityScope.ALL, SeverityScope.HIGH, SeverityScope.MEDIUM, SeverityScope.LOW)
_VALUES = (InspectionValue.CONTENT, InspectionValue.DENSITY)
_DIRS = (Direction.LARGE, Direction.SMALL)


@dataclass(frozen=True)
class RuleSetConfig:
    percent: float = 0.8
    top_n_list: tuple[int, ...] = (3, 5, 8, 10)
    include_families: frozenset[str] = field(default_factory=lambda: frozenset(PERCENT_FAMILIES))

    def __post_init__(self) -> None:
        if not 0 < self.percent <= 1:
            raise ValueError(f"percent must lie in (0, 1], got {self.percent}")
        tl = tuple(self.top_n_list)
        if any(isinstance(n, bool) or not isinstance(n, int) or n < 1 for n in tl):
            raise ValueError("top_n_list entries must be positive integers")
        if any(a >= b for a, b in zip(tl, tl[1:])):
            raise ValueError("top_n_list must be strictly increasing")
        object.__setattr__(self, "top_n_list", tl)
        fams = frozenset(self.include_families)
        unknown = fams - set(ALL_FAMILIES)
        if unknown:
            raise ValueError(f"unknown rule families: {sorted(unknown)}")
        object.__setattr__(self, "include_families", fams)


def _inspection_count(spec: MetricSpec, part: Part, run: QaRun) -> float:
    count = 0
    for d in run.defects:
        if d.part_id != part.id or d.phase is not Phase.INSPECTION:
            continue
        if not spec.severity_scope.matches(d.severity):
            continue
        if d.finding_kind is FindingKind.COMMENT and spec.exclude_comments:
            continue
        count += 1
    if spec.scaled:
        return count / run.coverage(part.id)
    return count


def metric_value(spec: MetricSpec, part: Part, run: QaRun) -> float:
    """Value of ``spec`` for one part of a run.

    Raises UndefinedMetricError for density on a zero-length part and
    MissingMetricError when a product metric was never supplied.
    """
    if spec.source is Source.INSPECTION:
        count = _inspection_count(spec, part, run)
        if spec.inspection_value is InspectionValue.CONTENT:
            return count
        if part.loc <= 0:
            raise UndefinedMetricError(f"part {part.id}: defect density undefined for loc=0")
        return count / part.loc
    pm = spec.product_metric
    if pm == "class_length":
        return part.loc
    if pm == "method_length":
        return part.mean_method_length
    if pm == "mccabe":
        return part.mccabe
    if pm == "waste_per_line":
        if part.waste_per_line is None:
            raise MissingMetricError(f"part {part.id}: waste_per_line not provided")
        return part.waste_per_line
    name = pm[len(CUSTOM_PREFIX):]
    if name not in part.custom_metrics:
        raise MissingMetricError(f"part {part.id}: custom metric {name!r} not provided")
    return part.custom_metrics[name]


def compute_threshold(
    values: Sequence[float], direction: Direction, p: float, integer_valued: bool = False
) -> float:
    """Percent-of-max cut.

    ``large``: t = p * max, floored for integer metrics; select value > t.
    ``small``: t = (1 - p) * max, ceiled for integer metrics; select value < t.
    """
    if len(values) == 0:
        raise ValueError("cannot derive a threshold from no values")
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    top = max(values)
    if Direction(direction) is Direction.LARGE:
        t = p * top
        # absorb binary noise such as 0.29 * 100 == 28.999999999999996
        return float(math.floor(round(t, 9))) if integer_valued else t
    t = (1 - p) * top
    return float(math.ceil(round(t, 9))) if integer_valued else t


def passes(value: float, threshold: float, direction: Direction) -> bool:
    if Direction(direction) is Direction.LARGE:
        return value > threshold
    return value < threshold


# -- rule space ---------------------------------------------------------------

_ROMAN = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII", "XIII", "XIV")


def _make_id(assumption: str, parts: Iterable[tuple[MetricSpec, Direction]], condition) -> str:
    body = "+".join(f"{m.token}:{d.value}" for m, d in parts)
    return f"{assumption}/{body}@{condition.token}"


def _rule(assumption, m1, d1, condition, m2=None, d2=None, combinator=Combinator.NONE) -> SelectionRule:
    pairs = [(m1, d1)] + ([(m2, d2)] if m2 is not None else [])
    return SelectionRule(
        rule_id=_make_id(assumption, pairs, condition),
        assumption_id=assumption,
        primary_metric=m1,
        primary_direction=d1,
        condition=condition,
        secondary_metric=m2,
        secondary_direction=d2,
        combinator=combinator,
    )


def _percent_family(family: str, cond: PercentOfMax) -> list[SelectionRule]:
    rules = []
    if family == "inspection":
        for d in _DIRS:
            a = "A.I" if d is Direction.LARGE else "A.II"
            for v in _VALUES:
                for s in _SCOPES:
                    rules.append(_rule(a, MetricSpec.inspection(v, s), d, cond))
        return rules
    single = {"class_length": "A.III", "method_length": "A.IV"}
    if family in single:
        for d in _DIRS:
            rules.append(_rule(single[family], MetricSpec.product(family), d, cond))
        return rules
    if family == "mccabe":
        for d in _DIRS:
            a = "A.V" if d is Direction.LARGE else "A.VI"
            rules.append(_rule(a, MetricSpec.product("mccabe"), d, cond))
        return rules
    product = family.split("_x_", 1)[1]
    second = MetricSpec.product(product)
    for d1 in _DIRS:
        for d2 in _DIRS:
            if product == "class_length":
                a = "A.VII" if d1 is Direction.LARGE else "A.VIII"
            elif product == "method_length":
                a = "A.IX" if d1 is Direction.LARGE else "A.X"
            else:
                a = "A." + _ROMAN[10 + 2 * (d1 is Direction.SMALL) + (d2 is Direction.SMALL)]
            for v in _VALUES:
                for s in _SCOPES:
                    rules.append(
                        _rule(a, MetricSpec.inspection(v, s), d1, cond, second, d2, Combinator.CONJUNCTION)
                    )
    return rules


_TOPN_ASSUMPTIONS: tuple[tuple[str, MetricSpec, Direction], ...] = (
    ("A1", MetricSpec.inspection(), Direction.LARGE),
    ("A2", MetricSpec.inspection(scaled=True), Direction.LARGE),
    ("A3", MetricSpec.inspection(exclude_comments=True), Direction.LARGE),
    ("A4", MetricSpec.inspection(scaled=True, exclude_comments=True), Direction.LARGE),
    ("A5", MetricSpec.product("class_length"), Direction.SMALL),
    ("A6", MetricSpec.product("class_length"), Direction.LARGE),
    ("A7", MetricSpec.product("waste_per_line"), Direction.SMALL),
    ("A8", MetricSpec.product("waste_per_line"), Direction.LARGE),
)
_TOPN_UNIONS = (("A9", "A1", "A6"), ("A10", "A2", "A6"))


def _topn_family(top_n_list: Sequence[int]) -> list[SelectionRule]:
    by_id = {a: (m, d) for a, m, d in _TOPN_ASSUMPTIONS}
    rules = []
    for n in top_n_list:
        cond = TopN(n)
        for a, m, d in _TOPN_ASSUMPTIONS:
            rules.append(_rule(a, m, d, cond))
        for a, left, right in _TOPN_UNIONS:
            (m1, d1), (m2, d2) = by_id[left], by_id[right]
            rules.append(_rule(a, m1, d1, cond, m2, d2, Combinator.UNION))
    return rules


def generate_rule_set(config: RuleSetConfig | None = None) -> list[SelectionRule]:
    """Systematically enumerate selection rules.

    The default configuration yields the 118 percent-of-max rules
    (16 + 2 + 2 + 2 + 32 + 32 + 32). Adding the ``top_n`` family appends ten
    ranked assumptions per entry of ``top_n_list``.
    """
    config = config or RuleSetConfig()
    cond = PercentOfMax(config.percent)
    rules: list[SelectionRule] = []
    for fam in PERCENT_FAMILIES:
        if fam in config.include_families:
            rules.extend(_percent_family(fam, cond))
    if TOPN_FAMILY in config.include_families:
        rules.extend(_topn_family(config.top_n_list))
    ids = [r.rule_id for r in rules]
    assert len(ids) == len(set(ids)), "duplicate rule ids"
    return rules


def family_of(rule: SelectionRule) -> str:
    if isinstance(rule.condition, TopN):
        return TOPN_FAMILY
    m1 = rule.primary_metric
    if rule.secondary_metric is None:
        return "inspection" if m1.source is Source.INSPECTION else m1.product_metric
    return f"inspection_x_{rule.secondary_metric.product_metric}"


# -- descriptions ---------------------------------------------------------------

_SEVERITY_WORDS = {
    SeverityScope.ALL: "all",
    SeverityScope.HIGH: "high-severity",
    SeverityScope.MEDIUM: "medium-severity",
    SeverityScope.LOW: "low-severity",
}


def _dir_word(metric: MetricSpec, direction: Direction) -> str:
    if metric.product_metric == "mccabe":
        return "high" if direction is Direction.LARGE else "low"
    return direction.value


def _inspection_phrase(m: MetricSpec) -> str:
    value = "content" if m.inspection_value is InspectionValue.CONTENT else "density"
    extra = ""
    if m.scaled:
        extra += " scaled to full inspection coverage"
    if m.exclude_comments:
        extra += " excluding inspection comments"
    return f"defect {value}{extra}"


_PRODUCT_SHORT = {"class_length": "size", "method_length": "method length", "mccabe": "complexity",
                  "waste_per_line": "waste per line"}
_PRODUCT_LONG = {"class_length": "class length", "method_length": "method length",
                 "mccabe": "McCabe complexity", "waste_per_line": "waste per line"}


def _product_name(pm: str, table: dict) -> str:
    if pm.startswith(CUSTOM_PREFIX):
        return pm[len(CUSTOM_PREFIX):]
    return table[pm]


def _ranking_phrase(m: MetricSpec, d: Direction) -> str:
    if m.source is Source.INSPECTION:
        scope = _SEVERITY_WORDS[m.severity_scope]
        text = f"{scope} inspection defect data"
        if m.scaled:
            text += " scaled to full inspection coverage"
        if m.exclude_comments:
            text += " without inspection comments"
        if m.inspection_value is InspectionValue.DENSITY:
            text = "defect density of " + text
        return text if d is Direction.LARGE else f"fewest defects in {text}"
    return f"{_dir_word(m, d)} {_product_name(m.product_metric, _PRODUCT_LONG)}"


def describe_rule(rule: SelectionRule) -> str:
    """Human-readable instruction sentence for a rule."""
    m1, d1 = rule.primary_metric, rule.primary_direction
    if isinstance(rule.condition, TopN):
        n = rule.condition.n
        if rule.combinator is Combinator.UNION:
            return (
                f"Focus testing on the code classes in the top-{n} by either "
                f"{_ranking_phrase(m1, d1)} or {_ranking_phrase(rule.secondary_metric, rule.secondary_direction)}."
            )
        if m1.source is Source.INSPECTION and d1 is Direction.LARGE:
            return f"Focus testing on the top-{n} defect-prone code classes based on {_ranking_phrase(m1, d1)}."
        return f"Focus testing on the top-{n} code classes ranked by {_ranking_phrase(m1, d1)}."

    if rule.secondary_metric is None:
        if m1.source is Source.INSPECTION:
            scope = _SEVERITY_WORDS[m1.severity_scope]
            return (
                f"Focus testing on those code classes with {d1.value} {_inspection_phrase(m1)} "
                f"considering {scope} inspection defects."
            )
        pm = m1.product_metric
        if pm == "class_length":
            return f"Focus testing on {d1.value} code classes."
        return f"Focus testing on code classes with {_dir_word(m1, d1)} {_product_name(pm, _PRODUCT_SHORT)}."

    m2, d2 = rule.secondary_metric, rule.secondary_direction
    scope = m1.severity_scope.value + " severity" if m1.severity_scope is not SeverityScope.ALL else "all"
    w2 = _dir_word(m2, d2)
    return (
        f"Focus testing on code classes with {d1.value} {_inspection_phrase(m1)} and "
        f"{w2} {_product_name(m2.product_metric, _PRODUCT_SHORT)} considering {scope} inspection defects "
        f"and {w2} {_product_name(m2.product_metric, _PRODUCT_LONG)}."
    )
