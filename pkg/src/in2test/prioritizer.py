"""Apply selection rules to a QA run."""

from __future__ import annotations

from dataclasses import dataclass

from .model import Combinator, Direction, MetricSpec, PercentOfMax, Prioritization, QaRun, SelectionRule
from .rules import MetricError, compute_threshold, metric_value, passes


class RuleNotApplicableError(ValueError):
    """The rule's metric is undefined for every part of the run."""


@dataclass(frozen=True)
class Ranking:
    order: tuple[str, ...]
    values: dict[str, float]
    undefined: tuple[tuple[str, str], ...] = ()


def metric_label(spec: MetricSpec, direction: Direction) -> str:
    return f"{spec.token}:{Direction(direction).value}"


def _values(spec: MetricSpec, run: QaRun) -> tuple[dict[str, float], list[tuple[str, str]]]:
    values: dict[str, float] = {}
    undefined: list[tuple[str, str]] = []
    for part in run.parts:
        try:
            values[part.id] = metric_value(spec, part, run)
        except MetricError as exc:
            undefined.append((part.id, str(exc)))
    return values, undefined


def rank_parts(spec: MetricSpec, direction: Direction, run: QaRun) -> Ranking:
    """Order parts by metric value, best first; ties go to the smaller id.

    Parts whose metric is undefined are appended at the end (sorted by id)
    and listed in ``Ranking.undefined``.
    """
    values, undefined = _values(spec, run)
    sign = -1 if Direction(direction) is Direction.LARGE else 1
    order = sorted(values, key=lambda pid: (sign * values[pid], pid))
    tail = sorted(pid for pid, _ in undefined)
    return Ranking(tuple(order) + tuple(tail), values, tuple(sorted(undefined)))


def prioritize(rule: SelectionRule, run: QaRun) -> Prioritization:
    pairs = rule.metrics()
    undefined: dict[str, str] = {}
    per_metric: list[tuple[Ranking, MetricSpec, Direction]] = []
    for spec, direction in pairs:
        ranking = rank_parts(spec, direction, run)
        for pid, reason in ranking.undefined:
            undefined.setdefault(pid, reason)
        if not ranking.values and run.parts:
            raise RuleNotApplicableError(f"{rule.rule_id}: metric {spec.token} undefined for every part")
        per_metric.append((ranking, spec, direction))

    thresholds: list[tuple[str, float]] = []
    if isinstance(rule.condition, PercentOfMax):
        selected: set[str] | None = None
        for ranking, spec, direction in per_metric:
            if not ranking.values:
                chosen: set[str] = set()
            else:
                t = compute_threshold(
                    list(ranking.values.values()), direction, rule.condition.p, spec.integer_valued
                )
                thresholds.append((metric_label(spec, direction), t))
                chosen = {pid for pid, v in ranking.values.items() if passes(v, t, direction)}
            selected = chosen if selected is None else selected & chosen
    else:
        n = rule.condition.n
        tops = [set(ranking.order[: min(n, len(ranking.values))]) for ranking, _, _ in per_metric]
        if rule.combinator is Combinator.UNION:
            selected = set().union(*tops)
        else:
            selected = tops[0]
    # a conjunction never selects a part that failed either metric
    selected = {pid for pid in selected if pid not in undefined}
    return Prioritization(
        rule_id=rule.rule_id,
        run_id=run.id,
        selected=frozenset(selected),
        thresholds_used=tuple(thresholds),
        undefined=tuple(sorted(undefined.items())),
    )
