"""Tabular and Markdown reports for evaluations, trends and top-N coverage."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path
from typing import Mapping, Optional, Sequence

from .evaluator import TrendClass
from .model import EvaluationResult, SelectionRule, TopN
from .monitor import MonitorResult
from .rules import describe_rule
from .serialize import csv_text, dump_json, result_to_dict

EVALUATION_COLUMNS = (
    "rule_id", "description", "category", "precision", "recall", "f1",
    "defect_coverage", "selection_ratio", "significance", "selected", "vacuous", "error",
)
TREND_COLUMNS = ("rule_id", "classification", "significance", "categories")


def _fmt(x: Optional[float]) -> str:
    if x is None:
        return ""
    return f"{x:.4f}"


def trend_to_dict(t: TrendClass) -> dict:
    return {
        "rule_id": t.rule_id,
        "classification": t.classification.value,
        "significance": t.significance,
        "categories": [c.value for c in t.category_sequence],
    }


def evaluation_rows(results: Sequence[EvaluationResult], rules: Mapping[str, SelectionRule]) -> list[list[str]]:
    rows = []
    for r in results:
        rule = rules.get(r.rule_id)
        rows.append([
            r.rule_id,
            describe_rule(rule) if rule else "",
            r.category.value,
            _fmt(r.precision),
            _fmt(r.recall),
            _fmt(r.f1),
            _fmt(r.defect_coverage),
            _fmt(r.selection_ratio),
            str(r.significance),
            ";".join(sorted(r.selected)),
            "yes" if r.vacuous else "",
            r.error or "",
        ])
    return rows


def trend_rows(trend: Sequence[TrendClass]) -> list[list[str]]:
    return [
        [t.rule_id, t.classification.value, str(t.significance), ";".join(c.value for c in t.category_sequence)]
        for t in trend
    ]


def topn_coverage(
    results: Sequence[EvaluationResult], rules: Mapping[str, SelectionRule]
) -> tuple[list[int], list[tuple[str, list[Optional[float]]]]]:
    """Cumulative defect coverage per assumption and N, from top-N rules.

    Returns (sorted N values, [(assumption_id, coverage per N)]).
    """
    table: dict[str, dict[int, Optional[float]]] = defaultdict(dict)
    ns: set[int] = set()
    for r in results:
        rule = rules.get(r.rule_id)
        if rule is None or not isinstance(rule.condition, TopN):
            continue
        table[rule.assumption_id][rule.condition.n] = r.defect_coverage
        ns.add(rule.condition.n)
    order = sorted(ns)

    def key(a: str):
        digits = a.lstrip("A.")
        return (0, int(digits)) if digits.isdigit() else (1, a)

    rows = [(a, [table[a].get(n) for n in order]) for a in sorted(table, key=key)]
    return order, rows


def _md_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    def esc(s: str) -> str:
        return str(s).replace("|", "\\|")

    lines = ["| " + " | ".join(esc(h) for h in header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(esc(c) for c in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def render_markdown(
    run_id: str,
    results: Sequence[EvaluationResult],
    rules: Mapping[str, SelectionRule],
    trend: Sequence[TrendClass] = (),
    monitor: Optional[MonitorResult] = None,
) -> str:
    out = [f"# Selection-rule evaluation for run {run_id}\n"]

    out.append("## Inspection monitoring\n")
    if monitor is None:
        out.append("No monitoring result stored for this run.\n")
    else:
        if monitor.warnings:
            out += [f"- WARNING: {w}" for w in monitor.warnings]
        else:
            out.append("- no warnings")
        out += [f"- note: {n}" for n in monitor.notes]
        out.append("")

    counts: dict[str, int] = defaultdict(int)
    for r in results:
        counts[r.category.value] += 1
    out.append("## Category summary\n")
    out.append(_md_table(["category", "rules"], [[c, str(counts[c])] for c in sorted(counts)]))

    effective = [r for r in results if r.effective]
    out.append("## Effective rules\n")
    if effective:
        out.append(_md_table(
            ["rule_id", "category", "selected", "description"],
            [[r.rule_id, r.category.value, ", ".join(sorted(r.selected)),
              describe_rule(rules[r.rule_id]) if r.rule_id in rules else ""] for r in effective],
        ))
    else:
        out.append("None.\n")

    out.append("## All evaluations\n")
    out.append(_md_table(EVALUATION_COLUMNS, evaluation_rows(results, rules)))

    ns, cov = topn_coverage(results, rules)
    if cov:
        out.append("## Defect coverage by top-N\n")
        out.append(_md_table(["assumption"] + [f"top-{n}" for n in ns],
                             [[a] + [_fmt(v) for v in vals] for a, vals in cov]))

    if trend:
        out.append("## Trend\n")
        out.append(_md_table(TREND_COLUMNS, trend_rows(trend)))
    return "\n".join(out)


def emit_reports(
    results: Sequence[EvaluationResult],
    trend: Sequence[TrendClass],
    fmt: str,
    out_dir: Path,
    rules: Sequence[SelectionRule],
    run_id: str,
    monitor: Optional[MonitorResult] = None,
) -> list[Path]:
    """Write the report files for ``fmt`` (csv, json or md) and return their paths."""
    from .store import atomic_write

    out_dir = Path(out_dir)
    by_id = {r.rule_id: r for r in rules}
    written: list[Path] = []

    def put(name: str, text: str) -> None:
        path = out_dir / name
        atomic_write(path, text)
        written.append(path)

    if fmt == "csv":
        put("evaluation.csv", csv_text(EVALUATION_COLUMNS, evaluation_rows(results, by_id)))
        put("trend.csv", csv_text(TREND_COLUMNS, trend_rows(trend)))
        ns, cov = topn_coverage(results, by_id)
        if cov:
            put("topn_coverage.csv", csv_text(
                ["assumption"] + [f"top_{n}" for n in ns], [[a] + [_fmt(v) for v in vals] for a, vals in cov]
            ))
    elif fmt == "json":
        ns, cov = topn_coverage(results, by_id)
        payload = {
            "run_id": run_id,
            "evaluations": [
                {**result_to_dict(r), "description": describe_rule(by_id[r.rule_id]) if r.rule_id in by_id else ""}
                for r in results
            ],
            "trend": [trend_to_dict(t) for t in trend],
            "topn_coverage": {"n": ns, "rows": [{"assumption": a, "coverage": vals} for a, vals in cov]},
            "monitor": None if monitor is None else {"warnings": monitor.warnings, "notes": monitor.notes},
        }
        put("report.json", dump_json(payload))
    elif fmt in ("md", "markdown"):
        put("report.md", render_markdown(run_id, results, by_id, trend, monitor))
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    return written
