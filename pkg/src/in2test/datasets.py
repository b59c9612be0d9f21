"""Small bundled data sets.

``example_runs`` encodes the eight code classes observed over two QA runs of a
Java tool (inspection defects, test defects, class length, mean method length
and McCabe complexity per class). Severities were not published, so every
finding is ``unclassified``; timestamps are placeholders that only fix the
run order.
"""

from __future__ import annotations

from datetime import datetime
from importlib import resources
from pathlib import Path

from .model import DefectRecord, Part, PartKind, Phase, QaRun, Severity

# part: (inspection defects, test defects, class length, mean method length, mccabe)
EXAMPLE_CLASSES = {
    "qa-run-1": {
        "I": (26, 3, 469, 4, 2),
        "II": (6, 0, 37, 9, 5),
        "III": (27, 4, 275, 7, 2),
        "IV": (8, 0, 243, 177, 44),
    },
    "qa-run-2": {
        "V": (14, 0, 231, 3, 2),
        "VI": (40, 0, 1364, 14, 4),
        "VII": (39, 6, 701, 8, 3),
        "VIII": (7, 0, 115, 7, 2),
    },
}
_TIMESTAMPS = {"qa-run-1": datetime(2010, 1, 1), "qa-run-2": datetime(2010, 7, 1)}


def example_run(run_id: str) -> QaRun:
    rows = EXAMPLE_CLASSES[run_id]
    parts, defects = [], []
    for pid, (n_insp, n_test, loc, mml, cc) in rows.items():
        parts.append(Part(pid, f"class {pid}", PartKind.CLASS, loc, float(mml), cc))
        for k in range(n_insp):
            defects.append(DefectRecord(f"{pid}-i{k + 1:02d}", pid, Phase.INSPECTION, Severity.UNCLASSIFIED))
        for k in range(n_test):
            defects.append(DefectRecord(f"{pid}-t{k + 1:02d}", pid, Phase.TEST, Severity.UNCLASSIFIED))
    return QaRun(run_id, _TIMESTAMPS[run_id], tuple(parts), tuple(defects))


def example_runs() -> list[QaRun]:
    return [example_run(r) for r in EXAMPLE_CLASSES]


def data_dir(run_id: str) -> Path:
    """Directory holding parts.csv, defects.csv and run.json for a bundled run."""
    return Path(str(resources.files("in2test") / "data" / run_id))
