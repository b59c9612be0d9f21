"""Flat-file run store.

Layout below the root::

    index.json
    runs/<run_id>/{parts.csv,defects.csv,run.json}
    rulesets/<digest>.json
    evaluations/<digest>/<run_id>.json
    trends/<digest>.json
    monitor/<run_id>.json
    reports/<run_id>/...

Every write goes to a temporary file in the target directory followed by an
atomic rename. Nothing wall-clock dependent is written, so identical inputs
give byte-identical stores.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

from .evaluator import TrendClass, apply_results
from .model import EvaluationResult, QaRun, SelectionRule
from .monitor import MonitorResult
from .serialize import (
    LoadError,
    dump_json,
    evaluations_from_json,
    evaluations_to_json,
    load_run,
    rules_from_json,
    rules_to_json,
    run_files,
    ruleset_digest,
)

_SAFE_ID = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")


def atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _check_id(kind: str, value: str) -> str:
    if not _SAFE_ID.match(value):
        raise LoadError(f"{kind} id {value!r} is not usable as a file name")
    return value


class RunStore:
    def __init__(self, root: os.PathLike | str) -> None:
        self.root = Path(root)

    # -- index --
    @property
    def index_path(self) -> Path:
        return self.root / "index.json"

    def index(self) -> dict:
        if not self.index_path.exists():
            return {"runs": {}, "rulesets": {}, "evaluations": {}, "trends": {}}
        return json.loads(self.index_path.read_text(encoding="utf-8"))

    def _update_index(self, section: str, key: str, value) -> None:
        idx = self.index()
        idx.setdefault(section, {})[key] = value
        atomic_write(self.index_path, dump_json(idx))

    # -- runs --
    def put_run(self, run: QaRun) -> Path:
        d = self.root / "runs" / _check_id("run", run.id)
        for name, text in run_files(run).items():
            atomic_write(d / name, text)
        self._update_index("runs", run.id, run.timestamp.isoformat())
        return d

    def get_run(self, run_id: str) -> QaRun:
        d = self.root / "runs" / _check_id("run", run_id)
        if not d.is_dir():
            raise FileNotFoundError(f"run {run_id!r} not found in store {self.root}")
        return load_run(d / "parts.csv", d / "defects.csv", d / "run.json")

    def run_ids(self) -> list[str]:
        """Stored run ids in chronological order (timestamp, then id)."""
        runs = self.index().get("runs", {})
        return [rid for rid, _ in sorted(runs.items(), key=lambda kv: (kv[1], kv[0]))]

    # -- rule sets --
    def put_ruleset(self, rules: Sequence[SelectionRule]) -> str:
        digest = ruleset_digest(rules)
        clean = [replace(r, significance=0, history=()) for r in rules]
        atomic_write(self.root / "rulesets" / f"{digest}.json", rules_to_json(clean))
        self._update_index("rulesets", digest, len(rules))
        return digest

    def get_ruleset(self, digest: str) -> list[SelectionRule]:
        path = self.root / "rulesets" / f"{_check_id('rule set', digest)}.json"
        return rules_from_json(path.read_text(encoding="utf-8"), path.name)

    # -- evaluations --
    def put_evaluation(self, digest: str, run_id: str, results: Sequence[EvaluationResult]) -> Path:
        path = self.root / "evaluations" / digest / f"{_check_id('run', run_id)}.json"
        atomic_write(path, evaluations_to_json(results, digest, run_id))
        idx = self.index()
        runs = set(idx.get("evaluations", {}).get(digest, []))
        runs.add(run_id)
        self._update_index("evaluations", digest, sorted(runs))
        return path

    def get_evaluation(self, digest: str, run_id: str) -> list[EvaluationResult]:
        path = self.root / "evaluations" / digest / f"{_check_id('run', run_id)}.json"
        if not path.exists():
            raise FileNotFoundError(f"no evaluation of rule set {digest} on run {run_id}")
        return evaluations_from_json(path.read_text(encoding="utf-8"))

    def evaluated_runs(self, digest: str) -> list[str]:
        done = set(self.index().get("evaluations", {}).get(digest, []))
        return [rid for rid in self.run_ids() if rid in done]

    def rulesets_for_run(self, run_id: str) -> list[str]:
        evals = self.index().get("evaluations", {})
        return sorted(d for d, runs in evals.items() if run_id in runs)

    def rules_with_history(self, rules: Sequence[SelectionRule], before: Optional[str] = None) -> list[SelectionRule]:
        """Fold stored evaluations of this rule set, oldest run first.

        With ``before``, only runs that precede that run chronologically count.
        """
        digest = ruleset_digest(rules)
        order = self.run_ids()
        cutoff = order.index(before) if before in order else len(order)
        out = list(rules)
        for rid in self.evaluated_runs(digest):
            if order.index(rid) >= cutoff:
                break
            out = apply_results(out, self.get_evaluation(digest, rid))
        return out

    # -- trends / monitor --
    def put_trend(self, digest: str, trend: Sequence[TrendClass]) -> Path:
        from .reports import trend_to_dict

        path = self.root / "trends" / f"{digest}.json"
        atomic_write(path, dump_json({"ruleset": digest, "runs": self.evaluated_runs(digest),
                                      "trend": [trend_to_dict(t) for t in trend]}))
        self._update_index("trends", digest, len(trend))
        return path

    def put_monitor(self, run_id: str, result: MonitorResult) -> Path:
        path = self.root / "monitor" / f"{_check_id('run', run_id)}.json"
        atomic_write(path, dump_json({"run_id": run_id, "warnings": result.warnings, "notes": result.notes}))
        return path

    def get_monitor(self, run_id: str) -> Optional[MonitorResult]:
        path = self.root / "monitor" / f"{_check_id('run', run_id)}.json"
        if not path.exists():
            return None
        d = json.loads(path.read_text(encoding="utf-8"))
        return MonitorResult(list(d["warnings"]), list(d["notes"]))

    def report_dir(self, run_id: str) -> Path:
        return self.root / "reports" / _check_id("run", run_id)
