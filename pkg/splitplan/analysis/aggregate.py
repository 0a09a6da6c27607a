"""
Grouping raw latency measurements into one value per (condition, cut).

Measurements are read in chunks; for the mean only per-group sums, counts
and extremes are kept between chunks, so memory grows with the number of
groups rather than the number of rows.
"""

import logging
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Literal, NamedTuple, Optional, Tuple, Union

import numpy as np
import pandas as pd

from ..exceptions import AnalysisError
from ..sweep import CSV_HEADER, MeasurementRecord

logger = logging.getLogger(__name__)

Statistic = Literal["mean", "median"]

KEY_COLUMNS = ["model", "platform", "cpu_stress", "mem_stress", "net_rate"]
GROUP_COLUMNS = KEY_COLUMNS + ["cut_after"]
RECORD_COLUMNS = KEY_COLUMNS + ["cut_after", "run_index", "latency_s"]
NUMERIC_COLUMNS = ["cpu_stress", "mem_stress", "net_rate", "cut_after", "run_index", "latency_s"]
DEFAULT_CHUNK_SIZE = 200_000


class ConditionKey(NamedTuple):
    """One combination of operational conditions for one model on one platform."""

    model: str
    platform: str
    cpu_stress: float
    mem_stress: float
    net_rate: float

    def label(self) -> str:
        return (
            f"{self.model}/{self.platform} cpu={self.cpu_stress:.0%} "
            f"mem={self.mem_stress:.0%} net={self.net_rate:g}Mb/s"
        )


def _check_chunk(chunk: pd.DataFrame) -> pd.DataFrame:
    missing = [c for c in RECORD_COLUMNS if c not in chunk.columns]
    if missing:
        raise AnalysisError(f"Measurement data lacks columns {missing}")
    for column in NUMERIC_COLUMNS:
        if not pd.api.types.is_numeric_dtype(chunk[column]):
            coerced = pd.to_numeric(chunk[column], errors="coerce")
            if coerced.isna().any():
                raise AnalysisError(f"Measurement data has missing or non-numeric {column} values")
            chunk = chunk.assign(**{column: coerced})
    latencies = chunk["latency_s"]
    if latencies.isna().any() or (latencies <= 0).any():
        raise AnalysisError("Measurement data contains missing or non-positive latencies")
    return chunk


def _partial_stats(chunk: pd.DataFrame) -> pd.DataFrame:
    return chunk.groupby(GROUP_COLUMNS, sort=False)["latency_s"].agg(["sum", "count", "min", "max"])


class LatencyTable:
    """
    Aggregated latency per (model, platform, condition, cut).

    The wrapped frame has the columns of ``GROUP_COLUMNS`` plus
    ``latency_s`` (the chosen statistic) and ``runs``, sorted by group.
    """

    def __init__(self, frame: pd.DataFrame, statistic: Statistic = "mean"):
        if frame.empty:
            raise AnalysisError("No measurements to analyse")
        self._frame = frame.sort_values(GROUP_COLUMNS, kind="mergesort").reset_index(drop=True)
        self._statistic = statistic

    @classmethod
    def from_chunks(
        cls, chunks: Iterable[pd.DataFrame], statistic: Statistic = "mean"
    ) -> "LatencyTable":
        """Aggregate raw measurement frames with ``RECORD_COLUMNS``."""
        if statistic not in ("mean", "median"):
            raise AnalysisError(f"Unknown statistic '{statistic}'; use mean or median")

        rows = 0
        if statistic == "median":
            kept = [_check_chunk(c)[GROUP_COLUMNS + ["latency_s"]] for c in chunks]
            rows = sum(len(c) for c in kept)
            if not rows:
                raise AnalysisError("No measurements to analyse")
            grouped = pd.concat(kept).groupby(GROUP_COLUMNS)["latency_s"]
            frame = pd.DataFrame({"latency_s": grouped.median(), "runs": grouped.count()})
        else:
            partials = []
            for chunk in chunks:
                rows += len(chunk)
                if len(chunk):
                    partials.append(_partial_stats(_check_chunk(chunk)))
            if not partials:
                raise AnalysisError("No measurements to analyse")
            stats = pd.concat(partials).groupby(level=GROUP_COLUMNS).agg(
                {"sum": "sum", "count": "sum", "min": "min", "max": "max"}
            )
            # constant groups report their value exactly
            mean = np.where(stats["min"] == stats["max"], stats["min"], stats["sum"] / stats["count"])
            frame = pd.DataFrame({"latency_s": mean, "runs": stats["count"]}, index=stats.index)

        frame = frame.reset_index()
        logger.info(f"Aggregated {rows} measurements into {len(frame)} groups ({statistic})")
        return cls(frame, statistic)

    @classmethod
    def from_records(
        cls,
        records: Iterable[MeasurementRecord],
        statistic: Statistic = "mean",
        chunk_size: int = DEFAULT_CHUNK_SIZE,
    ) -> "LatencyTable":
        """Aggregate in-memory or streamed MeasurementRecords."""

        def chunks() -> Iterator[pd.DataFrame]:
            batch: List[Tuple] = []
            for record in records:
                batch.append(
                    (
                        record.model,
                        record.platform,
                        record.cpu_stress,
                        record.mem_stress,
                        record.net_rate,
                        record.cut_after,
                        record.run_index,
                        record.latency_s,
                    )
                )
                if len(batch) >= chunk_size:
                    yield pd.DataFrame(batch, columns=RECORD_COLUMNS)
                    batch = []
            if batch:
                yield pd.DataFrame(batch, columns=RECORD_COLUMNS)

        return cls.from_chunks(chunks(), statistic)

    @classmethod
    def from_csv(
        cls,
        path: Union[str, Path],
        statistic: Statistic = "mean",
        chunk_size: int = DEFAULT_CHUNK_SIZE,
    ) -> "LatencyTable":
        """
        Aggregate a measurement CSV written by ``sweep`` or an external harness.

        Raises:
            FileNotFoundError: If the path does not exist
            AnalysisError: If the file is empty or malformed
        """
        csv_path = Path(path)
        if not csv_path.exists():
            raise FileNotFoundError(f"Measurement file not found: {csv_path}")

        try:
            reader = pd.read_csv(
                csv_path,
                chunksize=chunk_size,
                float_precision="round_trip",
                dtype={"model": str, "platform": str},
            )
        except pd.errors.EmptyDataError as e:
            raise AnalysisError(f"{csv_path} is empty") from e
        except (pd.errors.ParserError, UnicodeDecodeError) as e:
            raise AnalysisError(f"{csv_path} is not a readable CSV: {e}") from e

        def chunks() -> Iterator[pd.DataFrame]:
            try:
                for chunk in reader:
                    missing = [c for c in CSV_HEADER if c not in chunk.columns]
                    if missing:
                        raise AnalysisError(f"{csv_path} lacks columns {missing}")
                    yield chunk.rename(columns={"net_rate_mbps": "net_rate"})
            except (pd.errors.ParserError, UnicodeDecodeError) as e:
                raise AnalysisError(f"{csv_path} is not a readable CSV: {e}") from e

        logger.debug(f"Reading measurements from {csv_path}")
        with reader:
            return cls.from_chunks(chunks(), statistic)

    @property
    def frame(self) -> pd.DataFrame:
        return self._frame

    @property
    def statistic(self) -> Statistic:
        return self._statistic

    def keys(self) -> List[ConditionKey]:
        unique = self._frame[KEY_COLUMNS].drop_duplicates()
        return [_to_key(row) for row in unique.itertuples(index=False)]

    def groups(self) -> Iterator[Tuple[ConditionKey, Dict[int, float]]]:
        """Yield each condition key with its cut -> latency map, in key order."""
        for key, sub in self._frame.groupby(KEY_COLUMNS, sort=True):
            yield _to_key(key), _cut_map(sub)

    def latencies(self, key: ConditionKey) -> Dict[int, float]:
        """
        Cut -> latency for one condition key.

        Raises:
            AnalysisError: If the key has no measurements
        """
        frame = self._frame
        mask = (
            (frame["model"] == key.model)
            & (frame["platform"] == key.platform)
            & np.isclose(frame["cpu_stress"], key.cpu_stress, rtol=0, atol=1e-9)
            & np.isclose(frame["mem_stress"], key.mem_stress, rtol=0, atol=1e-9)
            & np.isclose(frame["net_rate"], key.net_rate, rtol=0, atol=1e-9)
        )
        sub = frame[mask]
        if sub.empty:
            raise AnalysisError(f"No measurements for {key.label()}")
        return _cut_map(sub)

    def models(self) -> List[Tuple[str, str]]:
        """Distinct (model, platform) pairs, sorted."""
        pairs = self._frame[["model", "platform"]].drop_duplicates()
        return sorted((str(m), str(p)) for m, p in pairs.itertuples(index=False))

    def subset(self, model: str, platform: str) -> Optional["LatencyTable"]:
        sub = self._frame[(self._frame["model"] == model) & (self._frame["platform"] == platform)]
        if sub.empty:
            return None
        return LatencyTable(sub, self._statistic)

    def __len__(self) -> int:
        return len(self._frame)


def _to_key(values) -> ConditionKey:
    model, platform, cpu, mem, net = values
    return ConditionKey(str(model), str(platform), float(cpu), float(mem), float(net))


def _cut_map(sub: pd.DataFrame) -> Dict[int, float]:
    return {int(c): float(v) for c, v in zip(sub["cut_after"], sub["latency_s"])}
