from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, TextIO, Tuple

CSV_HEADER = ("sweep_param", "value", "engine", "metric", "tier", "result", "ci95")
ERROR_SENTINEL = "error"
OVERALL = "overall"

# metrics with a network-wide row after the per-tier rows
_HAS_OVERALL = {"coverage", "rate", "ase"}


def format_number(x: float) -> str:
    """Full precision (17 significant digits) so identical runs give identical bytes."""
    return format(float(x), ".17g")


@dataclass(frozen=True)
class SweepRow:
    sweep_param: str
    value: float
    engine: str
    metric: str
    tier: str
    result: Optional[float]  # None marks an engine failure
    ci95: Optional[float] = None  # None for analytical engines

    def cells(self) -> Tuple[str, ...]:
        return (
            self.sweep_param,
            format_number(self.value),
            self.engine,
            self.metric,
            self.tier,
            ERROR_SENTINEL if self.result is None else format_number(self.result),
            "" if self.ci95 is None else format_number(self.ci95),
        )


@dataclass
class SweepResult:
    """Rows in (sweep point, engine, metric, tier) order, plus the failures met on the way."""
    sweep_param: str
    rows: List[SweepRow] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def select(self, engine: Optional[str] = None, metric: Optional[str] = None,
               tier: Optional[str] = None) -> List[SweepRow]:
        return [
            r for r in self.rows
            if (engine is None or r.engine == engine)
            and (metric is None or r.metric == metric)
            and (tier is None or r.tier == tier)
        ]

    def series(self, engine: str, metric: str, tier: str) -> List[Optional[float]]:
        """Results along the sweep for one curve."""
        return [r.result for r in self.select(engine, metric, tier)]


def row_tiers(metric: str, labels: Sequence[str]) -> List[str]:
    return list(labels) + ([OVERALL] if metric in _HAS_OVERALL else [])


def write_sweep_csv(result: SweepResult, out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in result.rows:
        writer.writerow(row.cells())


def sweep_csv_text(result: SweepResult) -> str:
    buf = io.StringIO()
    write_sweep_csv(result, buf)
    return buf.getvalue()


def read_sweep_csv(source: TextIO | str) -> List[SweepRow]:
    """Parse CSV written by :func:`write_sweep_csv` back into rows."""
    handle = io.StringIO(source) if isinstance(source, str) else source
    reader = csv.reader(handle)
    header = next(reader, None)
    if tuple(header or ()) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header!r}")
    rows = []
    for cells in reader:
        param, value, engine, metric, tier, res, ci = cells
        rows.append(SweepRow(
            sweep_param=param,
            value=float(value),
            engine=engine,
            metric=metric,
            tier=tier,
            result=None if res == ERROR_SENTINEL else float(res),
            ci95=None if ci == "" else float(ci),
        ))
    return rows


@dataclass(frozen=True)
class EngineGap:
    value: float
    metric: str
    tier: str
    analysis: float
    sim: float
    ci95: Optional[float]

    @property
    def gap(self) -> float:
        return abs(self.analysis - self.sim)

    @property
    def signed(self) -> float:
        return self.analysis - self.sim


def engine_gaps(result: SweepResult | Iterable[SweepRow]) -> List[EngineGap]:
    """Analysis-minus-simulation differences wherever both engines produced a value."""
    rows = result.rows if isinstance(result, SweepResult) else list(result)
    analysis: Dict[Tuple[float, str, str], float] = {
        (r.value, r.metric, r.tier): r.result for r in rows if r.engine == "analysis" and r.result is not None
    }
    gaps = []
    for r in rows:
        if r.engine != "sim" or r.result is None or math.isnan(r.result):
            continue
        key = (r.value, r.metric, r.tier)
        if key in analysis:
            gaps.append(EngineGap(r.value, r.metric, r.tier, analysis[key], r.result, r.ci95))
    return gaps
