"""CSV/JSON ingestion and serialization of runs, rule sets and evaluations."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from datetime import datetime
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence, Union

from .model import (
    Category,
    Combinator,
    DefectRecord,
    Direction,
    EvaluationResult,
    FindingKind,
    MetricSpec,
    Part,
    PartKind,
    PercentOfMax,
    Phase,
    QaRun,
    SelectionRule,
    Severity,
    Source,
    TopN,
    validate_run,
)

PathLike = Union[str, Path]

PARTS_COLUMNS = ("part_id", "name", "kind", "loc", "mean_method_length", "mccabe", "waste_per_line")
DEFECTS_COLUMNS = ("defect_id", "part_id", "phase", "severity", "finding_kind", "description")
RULES_FORMAT = "in2test.rules/1"
EVALUATION_FORMAT = "in2test.evaluation/1"


class LoadError(ValueError):
    def __init__(self, message: str, file: str = "", row: Optional[int] = None, column: Optional[str] = None):
        where = file
        if row is not None:
            where += f" row {row}"
        if column:
            where += f" column {column}"
        super().__init__(f"{where}: {message}" if where else message)
        self.file, self.row, self.column = file, row, column


def format_number(x: Optional[float]) -> str:
    if x is None:
        return ""
    if isinstance(x, float) and x.is_integer():
        return str(int(x))
    return repr(x)


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def _read_csv(path: PathLike, required: Sequence[str]) -> tuple[list[str], list[dict[str, str]]]:
    name = Path(path).name
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames
        if not header:
            raise LoadError("missing header row", name)
        missing = [c for c in required if c not in header]
        if missing:
            raise LoadError(f"missing columns {missing}", name, 1)
        return list(header), list(reader)


def _enum(cls, token: str, file: str, row: int, column: str):
    try:
        return cls(token.strip())
    except ValueError:
        allowed = ", ".join(m.value for m in cls)
        raise LoadError(f"unknown value {token!r} (expected one of: {allowed})", file, row, column) from None


def _number(token: str, file: str, row: int, column: str, *, integer: bool = False, optional: bool = False):
    token = token.strip() if token is not None else ""
    if token == "":
        if optional:
            return None
        raise LoadError("missing value", file, row, column)
    try:
        if integer:
            return int(token)
        return float(token)
    except ValueError:
        raise LoadError(f"not a number: {token!r}", file, row, column) from None


# -- runs -----------------------------------------------------------------------


def parts_to_csv(parts: Sequence[Part]) -> str:
    custom = sorted({k for p in parts for k in p.custom_metrics})
    header = list(PARTS_COLUMNS) + custom
    rows = []
    for p in parts:
        rows.append(
            [p.id, p.name, p.kind.value, p.loc, format_number(float(p.mean_method_length)), p.mccabe,
             format_number(p.waste_per_line)]
            + [format_number(p.custom_metrics.get(k)) for k in custom]
        )
    return csv_text(header, rows)


def defects_to_csv(defects: Sequence[DefectRecord]) -> str:
    rows = [[d.id, d.part_id, d.phase.value, d.severity.value, d.finding_kind.value, d.description] for d in defects]
    return csv_text(DEFECTS_COLUMNS, rows)


def run_meta(run: QaRun) -> dict:
    return {
        "id": run.id,
        "timestamp": run.timestamp.isoformat(),
        "context_notes": run.context_notes,
        "inspection_coverage": {k: run.inspection_coverage[k] for k in sorted(run.inspection_coverage)},
        "reading_rate": run.reading_rate,
    }


def load_parts(path: PathLike) -> list[Part]:
    name = Path(path).name
    header, rows = _read_csv(path, PARTS_COLUMNS[:-1])
    custom = [c for c in header if c not in PARTS_COLUMNS]
    parts, seen = [], set()
    for i, r in enumerate(rows, start=2):
        pid = (r["part_id"] or "").strip()
        if not pid:
            raise LoadError("empty part_id", name, i, "part_id")
        if pid in seen:
            raise LoadError(f"duplicate part_id {pid}", name, i, "part_id")
        seen.add(pid)
        metrics = {}
        for c in custom:
            v = _number(r.get(c) or "", name, i, c, optional=True)
            if v is not None:
                metrics[c] = v
        parts.append(
            Part(
                id=pid,
                name=r["name"] or "",
                kind=_enum(PartKind, r["kind"] or "", name, i, "kind"),
                loc=_number(r["loc"], name, i, "loc", integer=True),
                mean_method_length=_number(r["mean_method_length"], name, i, "mean_method_length"),
                mccabe=_number(r["mccabe"], name, i, "mccabe", integer=True),
                waste_per_line=_number(r.get("waste_per_line") or "", name, i, "waste_per_line", optional=True),
                custom_metrics=metrics,
            )
        )
    return parts


def load_defects(path: PathLike, part_ids: Optional[set[str]] = None) -> list[DefectRecord]:
    name = Path(path).name
    _, rows = _read_csv(path, DEFECTS_COLUMNS[:-1])
    defects, seen = [], set()
    for i, r in enumerate(rows, start=2):
        did = (r["defect_id"] or "").strip()
        if not did:
            raise LoadError("empty defect_id", name, i, "defect_id")
        if did in seen:
            raise LoadError(f"duplicate defect_id {did}", name, i, "defect_id")
        seen.add(did)
        pid = (r["part_id"] or "").strip()
        if part_ids is not None and pid not in part_ids:
            raise LoadError(f"unknown part_id {pid}", name, i, "part_id")
        defects.append(
            DefectRecord(
                id=did,
                part_id=pid,
                phase=_enum(Phase, r["phase"] or "", name, i, "phase"),
                severity=_enum(Severity, r["severity"] or "", name, i, "severity"),
                finding_kind=_enum(FindingKind, r["finding_kind"] or "", name, i, "finding_kind"),
                description=r.get("description") or "",
            )
        )
    return defects


def load_run(parts_csv: PathLike, defects_csv: PathLike, run_json: PathLike) -> QaRun:
    """Load and validate a run from its three interchange files."""
    parts = load_parts(parts_csv)
    defects = load_defects(defects_csv, {p.id for p in parts})
    name = Path(run_json).name
    try:
        meta = json.loads(Path(run_json).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise LoadError(f"invalid JSON: {exc}", name) from None
    for key in ("id", "timestamp"):
        if key not in meta:
            raise LoadError(f"missing key {key!r}", name)
    try:
        ts = datetime.fromisoformat(meta["timestamp"])
    except (TypeError, ValueError):
        raise LoadError(f"bad timestamp {meta['timestamp']!r}", name) from None
    rate = meta.get("reading_rate")
    run = QaRun(
        id=str(meta["id"]),
        timestamp=ts,
        parts=tuple(parts),
        defects=tuple(defects),
        inspection_coverage={str(k): float(v) for k, v in (meta.get("inspection_coverage") or {}).items()},
        reading_rate=None if rate is None else float(rate),
        context_notes=meta.get("context_notes") or "",
    )
    problems = validate_run(run)
    if problems:
        raise LoadError("; ".join(problems), name)
    return run


def run_files(run: QaRun) -> dict[str, str]:
    """Serialized interchange files of a run, keyed by file name."""
    return {
        "parts.csv": parts_to_csv(run.parts),
        "defects.csv": defects_to_csv(run.defects),
        "run.json": dump_json(run_meta(run)),
    }


# -- rules ----------------------------------------------------------------------


def metric_to_dict(m: MetricSpec) -> dict:
    if m.source is Source.INSPECTION:
        return {
            "source": "inspection",
            "inspection_value": m.inspection_value.value,
            "severity_scope": m.severity_scope.value,
            "scaled": m.scaled,
            "exclude_comments": m.exclude_comments,
        }
    return {"source": "product", "product_metric": m.product_metric}


def metric_from_dict(d: dict) -> MetricSpec:
    if d["source"] == "inspection":
        return MetricSpec.inspection(
            d["inspection_value"], d.get("severity_scope", "all"),
            scaled=bool(d.get("scaled", False)), exclude_comments=bool(d.get("exclude_comments", False)),
        )
    if d["source"] == "product":
        return MetricSpec.product(d["product_metric"])
    raise ValueError(f"unknown metric source {d['source']!r}")


def rule_to_dict(rule: SelectionRule, description: Optional[str] = None) -> dict:
    cond = rule.condition
    out = {
        "rule_id": rule.rule_id,
        "assumption_id": rule.assumption_id,
        "primary_metric": metric_to_dict(rule.primary_metric),
        "primary_direction": rule.primary_direction.value,
        "secondary_metric": metric_to_dict(rule.secondary_metric) if rule.secondary_metric else None,
        "secondary_direction": rule.secondary_direction.value if rule.secondary_direction else None,
        "combinator": rule.combinator.value,
        "condition": {"type": "percent_of_max", "p": cond.p} if isinstance(cond, PercentOfMax)
        else {"type": "top_n", "n": cond.n},
        "significance": rule.significance,
        "history": [[run_id, cat.value] for run_id, cat in rule.history],
    }
    if description is not None:
        out["description"] = description
    return out


def rule_from_dict(d: dict) -> SelectionRule:
    c = d["condition"]
    if c["type"] == "percent_of_max":
        cond = PercentOfMax(float(c["p"]))
    elif c["type"] == "top_n":
        cond = TopN(int(c["n"]))
    else:
        raise ValueError(f"unknown condition type {c['type']!r}")
    sec = d.get("secondary_metric")
    return SelectionRule(
        rule_id=d["rule_id"],
        assumption_id=d["assumption_id"],
        primary_metric=metric_from_dict(d["primary_metric"]),
        primary_direction=Direction(d["primary_direction"]),
        condition=cond,
        secondary_metric=metric_from_dict(sec) if sec else None,
        secondary_direction=Direction(d["secondary_direction"]) if d.get("secondary_direction") else None,
        combinator=Combinator(d.get("combinator", "none")),
        significance=int(d.get("significance", 0)),
        history=tuple((r, Category(cat)) for r, cat in d.get("history", [])),
    )


def rules_to_json(rules: Sequence[SelectionRule], config: Optional[dict] = None) -> str:
    from .rules import describe_rule

    payload = {
        "format": RULES_FORMAT,
        "config": config or {},
        "rules": [rule_to_dict(r, describe_rule(r)) for r in rules],
    }
    return dump_json(payload)


def rules_from_json(text: str, name: str = "rules.json") -> list[SelectionRule]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LoadError(f"invalid JSON: {exc}", name) from None
    if not isinstance(payload, dict) or payload.get("format") != RULES_FORMAT:
        raise LoadError(f"not a rule set (expected format {RULES_FORMAT})", name)
    rules = []
    for i, d in enumerate(payload["rules"]):
        try:
            rules.append(rule_from_dict(d))
        except (KeyError, ValueError, TypeError) as exc:
            raise LoadError(f"bad rule: {exc}", name, i) from None
    ids = [r.rule_id for r in rules]
    if len(ids) != len(set(ids)):
        raise LoadError("duplicate rule ids", name)
    return rules


def ruleset_digest(rules: Sequence[SelectionRule]) -> str:
    """Content address of a rule set, independent of accumulated history."""
    body = [rule_to_dict(r) for r in sorted(rules, key=lambda r: r.rule_id)]
    for d in body:
        d.pop("significance")
        d.pop("history")
    raw = json.dumps(body, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(raw).hexdigest()[:16]


# -- evaluations ----------------------------------------------------------------


def result_to_dict(r: EvaluationResult) -> dict:
    return {
        "rule_id": r.rule_id,
        "run_id": r.run_id,
        "category": r.category.value,
        "effective": r.effective,
        "selected": sorted(r.selected),
        "precision": r.precision,
        "recall": r.recall,
        "f1": r.f1,
        "defect_coverage": r.defect_coverage,
        "selection_ratio": r.selection_ratio,
        "vacuous": r.vacuous,
        "significance": r.significance,
        "error": r.error,
    }


def result_from_dict(d: dict) -> EvaluationResult:
    return EvaluationResult(
        rule_id=d["rule_id"],
        run_id=d["run_id"],
        category=Category(d["category"]),
        selected=frozenset(d.get("selected", [])),
        precision=d.get("precision"),
        recall=d.get("recall"),
        f1=d.get("f1"),
        defect_coverage=d.get("defect_coverage"),
        selection_ratio=d.get("selection_ratio", 0.0),
        vacuous=bool(d.get("vacuous", False)),
        significance=int(d.get("significance", 0)),
        error=d.get("error"),
    )


def evaluations_to_json(results: Sequence[EvaluationResult], ruleset: str, run_id: str) -> str:
    return dump_json(
        {
            "format": EVALUATION_FORMAT,
            "ruleset": ruleset,
            "run_id": run_id,
            "results": [result_to_dict(r) for r in results],
        }
    )


def evaluations_from_json(text: str) -> list[EvaluationResult]:
    payload = json.loads(text)
    return [result_from_dict(d) for d in payload["results"]]
