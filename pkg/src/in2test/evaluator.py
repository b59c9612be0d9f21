"""Score prioritizations against test defects and track rules across runs."""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Optional, Sequence

from .model import Category, EvaluationResult, QaRun, SelectionRule, validate_run
from .prioritizer import RuleNotApplicableError, prioritize
from .rules import MetricError


class DuplicateEvaluationError(ValueError):
    pass


class InvalidRunError(ValueError):
    def __init__(self, violations: list[str]) -> None:
        super().__init__("; ".join(violations))
        self.violations = violations


class TrendClassification(str, Enum):
    ACCEPTABLE = "acceptable"
    POTENTIAL = "potential"
    NON_ACCEPTABLE = "non_acceptable"
    NOT_ASSESSABLE = "not_assessable"


_TREND_RANK = {c: i for i, c in enumerate(TrendClassification)}


@dataclass(frozen=True)
class Scores:
    precision: float
    recall: float
    f1: float
    vacuous: bool = False


@dataclass(frozen=True)
class TrendClass:
    rule_id: str
    classification: TrendClassification
    significance: int
    category_sequence: tuple[Category, ...]


def classify(selected: Iterable[str], run: QaRun) -> Category:
    """Quality category of a selection given where test defects were found."""
    sel = frozenset(selected)
    prone = run.defect_prone()
    if not prone:
        return Category.NOT_ASSESSABLE
    hit = sel & prone
    if hit == prone:
        return Category.CAT1 if sel == prone else Category.CAT2
    if hit:
        return Category.CAT3
    return Category.CAT4


def effectiveness(category: Category) -> Optional[bool]:
    return Category(category).effective


def precision_recall(selected: Iterable[str], run: QaRun) -> Optional[Scores]:
    """Precision/recall/F1 of a selection; None when no part had test defects.

    An empty selection has vacuous precision 1.0 and is flagged.
    """
    sel = frozenset(selected)
    prone = run.defect_prone()
    if not prone:
        return None
    hit = len(sel & prone)
    vacuous = not sel
    precision = 1.0 if vacuous else hit / len(sel)
    recall = hit / len(prone)
    f1 = 0.0 if precision + recall == 0 else 2 * precision * recall / (precision + recall)
    return Scores(precision, recall, f1, vacuous)


def defect_coverage(selected: Iterable[str], run: QaRun) -> Optional[float]:
    """Share of all test defects located in the selected parts."""
    counts = run.test_defect_counts()
    total = sum(counts.values())
    if total == 0:
        return None
    return sum(counts.get(pid, 0) for pid in set(selected)) / total


def update_significance(rule: SelectionRule, result: EvaluationResult) -> SelectionRule:
    if result.rule_id != rule.rule_id:
        raise ValueError(f"result for {result.rule_id} applied to rule {rule.rule_id}")
    if any(run_id == result.run_id for run_id, _ in rule.history):
        raise DuplicateEvaluationError(f"{rule.rule_id} already evaluated on run {result.run_id}")
    bump = 1 if result.category.effective else 0
    return replace(
        rule,
        significance=rule.significance + bump,
        history=rule.history + ((result.run_id, result.category),),
    )


def _trend_key(tc: TrendClass):
    best_first = tuple(sorted(c.rank for c in tc.category_sequence))
    return (_TREND_RANK[tc.classification], -tc.significance, best_first, tc.rule_id)


def trend(rules: Sequence[SelectionRule]) -> list[TrendClass]:
    """Classify rules by their effectiveness over all runs seen so far."""
    out = []
    for rule in rules:
        cats = tuple(c for _, c in rule.history)
        verdicts = [c.effective for c in cats if c.effective is not None]
        if not verdicts:
            cls = TrendClassification.NOT_ASSESSABLE
        elif all(verdicts):
            cls = TrendClassification.ACCEPTABLE
        elif not any(verdicts):
            cls = TrendClassification.NON_ACCEPTABLE
        else:
            cls = TrendClassification.POTENTIAL
        out.append(TrendClass(rule.rule_id, cls, rule.significance, cats))
    return sorted(out, key=_trend_key)


def evaluate_rule(rule: SelectionRule, run: QaRun) -> EvaluationResult:
    """Prioritize, classify and score one rule on one run.

    ``significance`` in the result is the rule's value after this run.
    """
    n_parts = len(run.parts)
    try:
        prio = prioritize(rule, run)
    except (MetricError, RuleNotApplicableError) as exc:
        return EvaluationResult(
            rule.rule_id, run.id, Category.NOT_ASSESSABLE, significance=rule.significance, error=str(exc)
        )
    category = classify(prio.selected, run)
    scores = precision_recall(prio.selected, run)
    return EvaluationResult(
        rule_id=rule.rule_id,
        run_id=run.id,
        category=category,
        selected=prio.selected,
        precision=scores.precision if scores else None,
        recall=scores.recall if scores else None,
        f1=scores.f1 if scores else None,
        defect_coverage=defect_coverage(prio.selected, run),
        selection_ratio=len(prio.selected) / n_parts if n_parts else 0.0,
        vacuous=bool(scores and scores.vacuous),
        significance=rule.significance + (1 if category.effective else 0),
    )


def evaluate_run(rule_set: Sequence[SelectionRule], run: QaRun) -> list[EvaluationResult]:
    """Evaluate every rule on ``run``; per-rule failures are recorded, not raised."""
    violations = validate_run(run)
    if violations:
        raise InvalidRunError(violations)
    results = []
    for rule in sorted(rule_set, key=lambda r: r.rule_id):
        result = evaluate_rule(rule, run)
        try:
            update_significance(rule, result)
        except DuplicateEvaluationError as exc:
            result = replace(result, error=str(exc), significance=rule.significance)
        results.append(result)
    return results


def apply_results(rule_set: Sequence[SelectionRule], results: Iterable[EvaluationResult]) -> list[SelectionRule]:
    """Fold evaluation results into rule histories.

    Results for a run already present in a rule's history are ignored.
    """
    by_id = {r.rule_id: r for r in rule_set}
    for res in results:
        rule = by_id.get(res.rule_id)
        if rule is None or any(run_id == res.run_id for run_id, _ in rule.history):
            continue
        by_id[res.rule_id] = update_significance(rule, res)
    return [by_id[r.rule_id] for r in rule_set]
