"""Plausibility checks on inspection results before they drive prioritization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .model import FindingKind, Phase, QaRun

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

Range = tuple[float, float]


@dataclass(frozen=True)
class MonitorConfig:
    """Reference ranges: reading rate in lines/hour, defect density in defects/KLoC."""

    reading_rate_range: Optional[Range] = None
    defect_density_range: Optional[Range] = None
    source: str = ""

    def __post_init__(self) -> None:
        for name in ("reading_rate_range", "defect_density_range"):
            rng = getattr(self, name)
            if rng is None:
                continue
            lo, hi = (float(x) for x in rng)
            if lo < 0 or hi < 0 or lo > hi:
                raise ValueError(f"{name} must satisfy 0 <= lo <= hi, got ({lo}, {hi})")
            object.__setattr__(self, name, (lo, hi))


@dataclass(frozen=True)
class MonitorResult:
    warnings: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def inspection_density_per_kloc(run: QaRun) -> Optional[float]:
    """Inspection defects per 1000 inspected lines (coverage-adjusted).

    Inspector comments are not defects and are left out.
    """
    inspected = sum(p.loc * run.coverage(p.id) for p in run.parts)
    if inspected <= 0:
        return None
    n = sum(
        1 for d in run.defects if d.phase is Phase.INSPECTION and d.finding_kind is FindingKind.DEFECT
    )
    return 1000.0 * n / inspected


def monitor_inspection(run: QaRun, config: Optional[MonitorConfig] = None) -> MonitorResult:
    """Compare reading rate and inspection defect density with reference ranges.

    Advisory only; ``warnings`` is empty when every available check passes.
    Missing reference data or missing run data is reported in ``notes``.
    """
    warnings: list[str] = []
    notes: list[str] = []
    if config is None:
        config = MonitorConfig()

    rr = config.reading_rate_range
    if rr is None:
        notes.append("no reading-rate reference range configured; reading rate not checked")
    elif run.reading_rate is None:
        notes.append(f"run {run.id} records no reading rate; reading rate not checked")
    else:
        lo, hi = rr
        if run.reading_rate > hi:
            warnings.append(f"reading rate {run.reading_rate:g} above reference {hi:g} (inspection may be shallow)")
        elif run.reading_rate < lo:
            warnings.append(f"reading rate {run.reading_rate:g} below reference {lo:g} (informational)")

    dr = config.defect_density_range
    density = inspection_density_per_kloc(run)
    if dr is None:
        notes.append("no defect-density reference range configured; inspection defect density not checked")
    elif density is None:
        notes.append(f"run {run.id} has no inspected lines; inspection defect density not checked")
    else:
        lo, hi = dr
        if density < lo:
            warnings.append(
                f"inspection defect density below reference: {density:.4g} per KLoC < {lo:g}"
            )
        elif density > hi:
            warnings.append(
                f"inspection defect density above reference: {density:.4g} per KLoC > {hi:g}"
            )
    if config.source and (rr is not None or dr is not None):
        notes.append(f"reference source: {config.source}")
    return MonitorResult(warnings, notes)


def load_monitor_config(path) -> MonitorConfig:
    """Read reference ranges from a TOML or JSON file.

    Keys: ``reading_rate_range = [lo, hi]``, ``defect_density_range = [lo, hi]``
    and an optional free-text ``source``.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        data = json.loads(text)
    else:
        data = tomllib.loads(text)
    known = {"reading_rate_range", "defect_density_range", "source"}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"{path.name}: unknown keys {sorted(unknown)}")

    def rng(key: str):
        v = data.get(key)
        if v is None:
            return None
        if not isinstance(v, (list, tuple)) or len(v) != 2:
            raise ValueError(f"{path.name}: {key} must be a [lo, hi] pair")
        return (float(v[0]), float(v[1]))

    return MonitorConfig(rng("reading_rate_range"), rng("defect_density_range"), str(data.get("source", "")))
