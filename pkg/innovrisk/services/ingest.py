"""
Daily gauge CSV ingestion and the log(1 + QD) transform.

A gauge file has a header row and (at least) a date column and a discharge
column. Unparseable or empty values become missing markers; calendar days
absent from the file are gaps as well. Both split the transformed record
into contiguous segments.
"""

import logging
import math
import re
from collections.abc import Sequence
from datetime import date, datetime, timedelta
from pathlib import Path

import numpy as np
import pandas as pd
from dateutil import parser as date_parser

from innovrisk.exceptions import (
    DataError,
    DuplicateDateError,
    MissingColumnError,
    NegativeValueError,
)
from innovrisk.models.series import Series
from innovrisk.schemas.report import DailyRecord

logger = logging.getLogger(__name__)

ONE_DAY = timedelta(days=1)
ISO_DATE = re.compile(r"\d{4}-\d{2}-\d{2}")


def parse_date(text: str, date_format: str | None = None) -> date | None:
    """
    Parse a calendar date.

    An explicit format is authoritative. Otherwise ISO-8601 is tried first, then
    dateutil, reading dotted dates such as 31.12.2024 day first. Text that starts
    like an ISO date must be one, optionally followed by a time part.
    """
    text = text.strip()
    if not text:
        return None
    if date_format:
        try:
            return datetime.strptime(text, date_format).date()
        except ValueError:
            return None
    try:
        return date.fromisoformat(text)
    except ValueError:
        pass
    if ISO_DATE.match(text):
        if len(text) > 10 and text[10] in "T ":
            try:
                return datetime.fromisoformat(text).date()
            except ValueError:
                return None
        return None
    try:
        return date_parser.parse(text, dayfirst="." in text).date()
    except (ValueError, OverflowError):
        return None


def parse_daily_csv(
    path: Path | str,
    date_column: str = "date",
    value_column: str = "value",
    date_format: str | None = None,
) -> list[DailyRecord]:
    """Read a gauge file into DailyRecords sorted by date."""
    path = Path(path)
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError as exc:
        raise DataError(f"{path} is empty") from exc
    except FileNotFoundError as exc:
        raise DataError(f"{path} does not exist") from exc

    frame.columns = [str(c).strip() for c in frame.columns]
    missing = [c for c in (date_column, value_column) if c not in frame.columns]
    if missing:
        raise MissingColumnError(missing, list(frame.columns))
    if frame.empty:
        raise DataError(f"{path} has a header but no rows")

    values = pd.to_numeric(frame[value_column].str.strip(), errors="coerce")
    records: list[DailyRecord] = []
    seen: set[date] = set()
    unparsed = 0
    for row, (raw_date, value) in enumerate(zip(frame[date_column], values, strict=True), start=2):
        day = parse_date(raw_date, date_format)
        if day is None:
            raise DataError(f"Unparseable date '{raw_date}'", detail=f"{path.name} line {row}")
        if day in seen:
            raise DuplicateDateError(day)
        seen.add(day)
        if value is None or not math.isfinite(value):
            unparsed += 1
            records.append(DailyRecord(date=day, value=None))
        else:
            records.append(DailyRecord(date=day, value=float(value)))

    if unparsed:
        logger.warning("%s: %d value(s) missing or unparseable", path.name, unparsed)
    records.sort(key=lambda r: r.date)
    logger.info(
        "Parsed %d daily records from %s (%s .. %s)",
        len(records),
        path.name,
        records[0].date,
        records[-1].date,
    )
    return records


def read_series_csv(path: Path | str, column: str = "value", label: str | None = None) -> Series:
    """
    A plain numeric series from one CSV column.

    A file with a single column is read from that column whatever its name.
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path)
    except pd.errors.EmptyDataError as exc:
        raise DataError(f"{path} is empty") from exc
    except FileNotFoundError as exc:
        raise DataError(f"{path} does not exist") from exc
    frame.columns = [str(c).strip() for c in frame.columns]
    if column not in frame.columns:
        if len(frame.columns) != 1:
            raise MissingColumnError([column], list(frame.columns))
        column = frame.columns[0]
    values = pd.to_numeric(frame[column], errors="coerce").to_numpy(dtype=float)
    if values.size == 0:
        raise DataError(f"{path} has a header but no rows")
    return Series(values, label=label or path.stem)


def missing_count(records: Sequence[DailyRecord]) -> int:
    return sum(1 for r in records if r.is_missing)


def transform_log1p(records: Sequence[DailyRecord], label: str | None = None) -> list[Series]:
    """
    ln(1 + QD) split into maximal runs of consecutive days with a value.

    Each run becomes a dated Series; a missing value or a skipped calendar day
    ends the current run.
    """
    segments: list[Series] = []
    days: list[date] = []
    vals: list[float] = []

    def close() -> None:
        if vals:
            segments.append(
                Series(np.log1p(np.asarray(vals)), label=label, dates=tuple(days))
            )
            days.clear()
            vals.clear()

    previous: date | None = None
    for record in records:
        if record.value is not None and record.value < 0:
            raise NegativeValueError(record.date, record.value)
        if previous is not None and record.date - previous != ONE_DAY:
            close()
        previous = record.date
        if record.value is None:
            close()
            continue
        days.append(record.date)
        vals.append(record.value)
    close()
    return segments
