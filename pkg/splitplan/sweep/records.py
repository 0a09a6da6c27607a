"""
Measurement records and their CSV form.

Real benchmark harnesses write the same columns, so the analyzer cannot
tell synthetic sweeps from measured ones.
"""

import csv
import logging
from dataclasses import astuple, dataclass
from pathlib import Path
from typing import IO, Iterable, Union

logger = logging.getLogger(__name__)

CSV_HEADER = (
    "model",
    "platform",
    "cpu_stress",
    "mem_stress",
    "net_rate_mbps",
    "cut_after",
    "run_index",
    "latency_s",
)


@dataclass(frozen=True)
class MeasurementRecord:
    """One observed (or simulated) inference latency."""

    model: str
    platform: str
    cpu_stress: float
    mem_stress: float
    net_rate: float
    cut_after: int
    run_index: int
    latency_s: float

    def to_row(self) -> list:
        # repr keeps every float bit so CSVs round-trip exactly
        return [repr(value) if isinstance(value, float) else value for value in astuple(self)]


def write_records(records: Iterable[MeasurementRecord], stream: IO[str]) -> int:
    """
    Stream records as CSV with a header line.

    Returns:
        int: Number of records written
    """
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    count = 0
    for record in records:
        writer.writerow(record.to_row())
        count += 1
    return count


def write_records_file(records: Iterable[MeasurementRecord], path: Union[str, Path]) -> int:
    """Write records to ``path``, creating parent directories."""
    out_path = Path(path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with out_path.open("w", encoding="utf-8", newline="") as handle:
        count = write_records(records, handle)
    logger.info(f"Wrote {count} records to {out_path}")
    return count
