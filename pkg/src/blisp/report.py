"""Run metrics, aggregation over repeats, and CSV emission/parsing.

CSV output is UTF-8 with a header row, ``.`` decimal separator, and the
literal string ``inf`` for unbounded energy values. Floats are written
with ``repr`` so that parsing an emitted file reproduces the original
values exactly.
"""

from __future__ import annotations

import csv
import io
import statistics
from dataclasses import dataclass
from typing import Mapping, Sequence

from .link_model import UNBOUNDED, EnergyPerByte, RadioModel, energy_per_byte, rx_bytes

__all__ = [
    "RunMetrics",
    "FieldStat",
    "TableRow",
    "CURVE_COLUMNS",
    "TABLE_COLUMNS",
    "aggregate",
    "table_rows",
    "curve_points",
    "emit_curve",
    "parse_curve",
    "emit_run_table",
    "parse_run_table",
]

CURVE_COLUMNS = ("distance_m", "radio_id", "rx_fraction", "energy_per_byte_uJ")
TABLE_COLUMNS = ("scenario", "setup", "metric", "mean", "stddev", "unbounded_count")


@dataclass(frozen=True)
class RunMetrics:
    """Aggregated outcome of a single run."""

    unique_messages: int
    unique_bytes: int
    raw_messages_per_radio: Mapping[str, int]
    energy_uJ_per_radio: Mapping[str, float]
    energy_per_unique_byte: EnergyPerByte
    goodput_Bps: float


@dataclass(frozen=True)
class FieldStat:
    """Mean and sample stddev of one metric over repeats.

    ``stddev`` is None for a single sample; ``mean`` is None when every
    sample was unbounded (serialized as ``inf``). ``unbounded_count``
    says how many samples were excluded from the mean.
    """

    mean: float | None
    stddev: float | None
    unbounded_count: int = 0


@dataclass(frozen=True)
class TableRow:
    scenario: str
    setup: str
    metric: str
    mean: float | None
    stddev: float | None
    unbounded_count: int


def _stat(values: Sequence[float], unbounded_count: int = 0) -> FieldStat:
    if not values:
        return FieldStat(mean=None, stddev=None, unbounded_count=unbounded_count)
    mean = statistics.fmean(values)
    stddev = statistics.stdev(values) if len(values) > 1 else None
    return FieldStat(mean=mean, stddev=stddev, unbounded_count=unbounded_count)


def aggregate(runs: Sequence[RunMetrics]) -> dict[str, FieldStat]:
    """Mean and sample standard deviation of every metric over repeats.

    Unbounded energy-per-byte values are excluded from the mean and
    reported through ``unbounded_count`` instead of poisoning it.
    """
    if not runs:
        raise ValueError("aggregate needs at least one run")
    radio_ids = list(runs[0].raw_messages_per_radio)
    for r in runs[1:]:
        if list(r.raw_messages_per_radio) != radio_ids:
            raise ValueError("runs disagree on radio ids")

    stats: dict[str, FieldStat] = {
        "unique_messages": _stat([r.unique_messages for r in runs]),
        "unique_bytes": _stat([r.unique_bytes for r in runs]),
        "goodput_Bps": _stat([r.goodput_Bps for r in runs]),
    }
    finite = [r.energy_per_unique_byte.value for r in runs
              if not r.energy_per_unique_byte.is_unbounded]
    stats["energy_per_unique_byte_uJ"] = _stat(
        finite, unbounded_count=len(runs) - len(finite))
    for rid in radio_ids:
        stats[f"raw_messages_{rid}"] = _stat(
            [r.raw_messages_per_radio[rid] for r in runs])
        stats[f"energy_uJ_{rid}"] = _stat(
            [r.energy_uJ_per_radio[rid] for r in runs])
    return stats


def table_rows(scenario: str, setup: str,
               stats: Mapping[str, FieldStat]) -> list[TableRow]:
    """Flatten one aggregate into run-table rows, sorted by metric."""
    return [TableRow(scenario, setup, metric, s.mean, s.stddev, s.unbounded_count)
            for metric, s in sorted(stats.items())]


def _energy_str(e: EnergyPerByte) -> str:
    return "inf" if e.is_unbounded else repr(e.value)


def _mean_str(mean: float | None) -> str:
    return "inf" if mean is None else repr(mean)


def emit_curve(models: Sequence[RadioModel], d_grid: Sequence[float]) -> str:
    """Cost-over-distance curves for the given radios as CSV text.

    One row per (distance, model), distances outermost, models in input
    order.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CURVE_COLUMNS)
    for d in d_grid:
        for m in models:
            writer.writerow([repr(float(d)), m.id, repr(rx_bytes(m, d)),
                             _energy_str(energy_per_byte(m, d))])
    return buf.getvalue()


def parse_curve(text: str) -> list[tuple[float, str, float, EnergyPerByte]]:
    """Inverse of :func:`emit_curve`."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CURVE_COLUMNS:
        raise ValueError(f"unexpected curve header {header}")
    rows = []
    for rec in reader:
        d, rid, rx, e = rec
        cost = UNBOUNDED if e == "inf" else EnergyPerByte(float(e))
        rows.append((float(d), rid, float(rx), cost))
    return rows


def curve_points(models: Sequence[RadioModel], d_grid: Sequence[float],
                 ) -> list[tuple[float, str, float, EnergyPerByte]]:
    """The rows :func:`emit_curve` serializes, as Python values."""
    return [(float(d), m.id, rx_bytes(m, d), energy_per_byte(m, d))
            for d in d_grid for m in models]


def emit_run_table(rows: Sequence[TableRow]) -> str:
    """Aggregate table as CSV text; empty stddev means undefined (n=1)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for row in rows:
        writer.writerow([
            row.scenario, row.setup, row.metric,
            _mean_str(row.mean),
            "" if row.stddev is None else repr(row.stddev),
            str(row.unbounded_count),
        ])
    return buf.getvalue()


def parse_run_table(text: str) -> list[TableRow]:
    """Inverse of :func:`emit_run_table`."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != TABLE_COLUMNS:
        raise ValueError(f"unexpected table header {header}")
    rows = []
    for rec in reader:
        scenario, setup, metric, mean, stddev, unbounded = rec
        rows.append(TableRow(
            scenario, setup, metric,
            None if mean == "inf" else float(mean),
            None if stddev == "" else float(stddev),
            int(unbounded),
        ))
    return rows
