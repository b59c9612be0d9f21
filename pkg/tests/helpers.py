"""Builders for small synthetic runs used across the test modules."""

from datetime import datetime

from in2test.model import DefectRecord, FindingKind, Part, Phase, QaRun, Severity


def make_run(inspection, test=None, loc=None, run_id="r", coverage=None, **part_fields):
    """Build a run from {part_id: inspection defect count} (+ test counts, loc)."""
    test = test or {}
    loc = loc or {}
    parts = []
    defects = []
    for pid in inspection:
        extra = {k: v[pid] for k, v in part_fields.items() if pid in v}
        parts.append(Part(pid, pid, loc=loc.get(pid, 100), **extra))
        for k in range(inspection[pid]):
            defects.append(DefectRecord(f"{pid}-i{k}", pid, Phase.INSPECTION))
        for k in range(test.get(pid, 0)):
            defects.append(DefectRecord(f"{pid}-t{k}", pid, Phase.TEST))
    return QaRun(run_id, datetime(2020, 1, 1), tuple(parts), tuple(defects), coverage or {})


def inspection_defect(did, pid, severity=Severity.UNCLASSIFIED, kind=FindingKind.DEFECT):
    return DefectRecord(did, pid, Phase.INSPECTION, severity, kind)
