"""Flat-file ingestion for tweet corpora and the confirmed-cases table."""

from __future__ import annotations

import csv
import datetime as dt
import json
import logging
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

from tweetlens.emotion import EmotionProfile
from tweetlens.errors import DataError, IngestError

logger = logging.getLogger(__name__)

POLARITIES = ("Positive", "Neutral", "Negative")
DEFAULT_DATE_BOUNDS = (dt.date(2019, 12, 1), dt.date(2020, 12, 31))

TWEET_FIELDS = ("id", "text", "date")
CASE_FIELDS = ("date", "country", "confirmed", "deaths", "recovered")


@dataclass(frozen=True)
class TweetRecord:
    id: str
    text: str
    date: dt.date
    raw_location: Optional[str] = None
    country: Optional[str] = None
    polarity: Optional[str] = None
    compound: Optional[float] = None
    emotion: Optional[EmotionProfile] = None
    geo_ambiguous: bool = False

    def to_json(self) -> dict:
        obj = {
            "id": self.id,
            "text": self.text,
            "date": self.date.isoformat(),
            "user_location": self.raw_location,
        }
        if self.country is not None:
            obj["country"] = self.country
            obj["geo_ambiguous"] = self.geo_ambiguous
        if self.polarity is not None:
            obj["polarity"] = self.polarity
        if self.compound is not None:
            obj["compound"] = self.compound
        if self.emotion is not None:
            obj["emotion"] = self.emotion.to_json()
        return obj


@dataclass(frozen=True)
class CaseRecord:
    date: dt.date
    country: str
    confirmed: int
    deaths: int
    recovered: int


@dataclass
class IngestReport:
    kept: int = 0
    dropped_duplicates: int = 0
    skipped: list = field(default_factory=list)  # (line, reason)

    @property
    def dropped(self) -> int:
        return self.dropped_duplicates + len(self.skipped)


class ClampWarning(UserWarning):
    """Cumulative series decreased; negative increments were clamped to 0."""


def parse_date(value: str, allow_us: bool = False) -> dt.date:
    """Parse ISO ``YYYY-MM-DD`` (a trailing time part is ignored).

    With ``allow_us`` the ``M/D/YY`` form used by the public cases
    dumps is accepted as a fallback.
    """
    s = str(value).strip()
    if len(s) >= 10 and (len(s) == 10 or s[10] in "T "):
        try:
            return dt.date.fromisoformat(s[:10])
        except ValueError:
            pass
    if allow_us:
        for fmt in ("%m/%d/%y", "%m/%d/%Y"):
            try:
                return dt.datetime.strptime(s, fmt).date()
            except ValueError:
                continue
    raise ValueError(f"unparseable date {value!r}")


def _record_from_obj(obj: dict, bounds) -> TweetRecord:
    if not isinstance(obj, dict):
        raise ValueError("row is not an object")
    missing = [k for k in TWEET_FIELDS if obj.get(k) in (None, "")]
    if missing:
        raise ValueError(f"missing field(s) {', '.join(missing)}")
    rid = str(obj["id"]).strip()
    text = str(obj["text"])
    if not rid:
        raise ValueError("empty id")
    if not text.strip():
        raise ValueError("empty text")
    date = parse_date(obj["date"])
    if bounds is not None and not (bounds[0] <= date <= bounds[1]):
        raise ValueError(f"date {date} outside [{bounds[0]}, {bounds[1]}]")
    loc = obj.get("user_location", obj.get("raw_location"))
    loc = None if loc in (None, "") else str(loc)
    polarity = obj.get("polarity") or None
    if polarity is not None and polarity not in POLARITIES:
        raise ValueError(f"unknown polarity {polarity!r}")
    compound = obj.get("compound")
    emotion = obj.get("emotion")
    return TweetRecord(
        id=rid,
        text=text,
        date=date,
        raw_location=loc,
        country=obj.get("country") or None,
        polarity=polarity,
        compound=None if compound in (None, "") else float(compound),
        emotion=EmotionProfile.from_json(emotion) if emotion else None,
        geo_ambiguous=bool(obj.get("geo_ambiguous", False)),
    )


def _iter_rows(path: Path, fmt: str) -> Iterator[tuple[int, object]]:
    """Yield (line number, parsed row or exception) pairs."""
    with open(path, encoding="utf-8", newline="") as fh:
        if fmt == "jsonl":
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    yield lineno, json.loads(line)
                except json.JSONDecodeError as exc:
                    yield lineno, exc
        elif fmt == "csv":
            reader = csv.DictReader(fh)
            missing = [c for c in TWEET_FIELDS if c not in (reader.fieldnames or [])]
            if missing:
                raise IngestError(f"missing column(s): {', '.join(missing)}", path)
            for row in reader:
                yield reader.line_num, row
        else:
            raise DataError(f"unknown format {fmt!r}")


def detect_format(path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in (".jsonl", ".json", ".ndjson"):
        return "jsonl"
    if suffix == ".csv":
        return "csv"
    raise DataError(f"cannot infer format of {path}; pass jsonl or csv")


def ingest_tweets(
    path,
    fmt: Optional[str] = None,
    strict: bool = False,
    date_bounds=DEFAULT_DATE_BOUNDS,
) -> tuple[list[TweetRecord], IngestReport]:
    """Read a tweet corpus, dropping duplicate ids (first occurrence wins).

    Malformed rows are skipped and listed in the report, or abort the
    whole ingest with ``strict=True``.
    """
    path = Path(path)
    fmt = fmt or detect_format(path)
    if not path.is_file():
        raise IngestError("no such file", path)
    report = IngestReport()
    seen: set[str] = set()
    records: list[TweetRecord] = []
    for lineno, row in _iter_rows(path, fmt):
        try:
            if isinstance(row, Exception):
                raise ValueError(f"malformed JSON ({row.msg})")
            rec = _record_from_obj(row, date_bounds)
        except ValueError as exc:
            if strict:
                raise IngestError(str(exc), path, lineno) from None
            logger.warning("%s:%d: skipped: %s", path, lineno, exc)
            report.skipped.append((lineno, str(exc)))
            continue
        if rec.id in seen:
            report.dropped_duplicates += 1
            continue
        seen.add(rec.id)
        records.append(rec)
    report.kept = len(records)
    return records, report


def write_tweets(records: Iterable[TweetRecord], path) -> None:
    """Persist records as JSONL; ``ingest_tweets`` reads the file back unchanged."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_json(), ensure_ascii=False, sort_keys=False))
            fh.write("\n")


def ingest_cases(path) -> tuple[list[CaseRecord], list[tuple[int, str]]]:
    """Load the cumulative cases table sorted by (country, date).

    Returns the table and the list of rejected ``(line, reason)`` rows.
    """
    path = Path(path)
    if not path.is_file():
        raise IngestError("no such file", path)
    rows: list[CaseRecord] = []
    rejected: list[tuple[int, str]] = []
    seen: dict[tuple[dt.date, str], int] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = [h.strip().lower() for h in (reader.fieldnames or [])]
        missing = [c for c in CASE_FIELDS if c not in header]
        if missing:
            raise IngestError(f"missing column(s): {', '.join(missing)}", path)
        reader.fieldnames = header
        for row in reader:
            lineno = reader.line_num
            try:
                date = parse_date(row["date"], allow_us=True)
                country = row["country"].strip()
                if not country:
                    raise ValueError("empty country")
                counts = {}
                for col in ("confirmed", "deaths", "recovered"):
                    raw = row[col].strip()
                    counts[col] = int(float(raw)) if raw else 0
                    if counts[col] < 0:
                        raise ValueError(f"negative {col} ({counts[col]})")
            except (ValueError, AttributeError) as exc:
                rejected.append((lineno, str(exc)))
                logger.warning("%s:%d: rejected: %s", path, lineno, exc)
                continue
            key = (date, country)
            if key in seen:
                raise IngestError(
                    f"duplicate (date, country) pair ({date.isoformat()}, {country!r}); "
                    f"first seen on line {seen[key]}",
                    path,
                    lineno,
                )
            seen[key] = lineno
            rows.append(CaseRecord(date, country, **counts))
    rows.sort(key=lambda r: (r.country, r.date))
    return rows, rejected


def daily_new(series: Sequence[int]) -> list[int]:
    """First differences of a cumulative series, negatives clamped to 0.

    >>> daily_new([5, 7, 7, 10])
    [5, 2, 0, 3]
    """
    if len(series) == 0:
        raise DataError("empty series")
    out = [int(series[0])]
    clamped = 0
    for prev, cur in zip(series, series[1:]):
        diff = int(cur) - int(prev)
        if diff < 0:
            clamped += 1
            diff = 0
        out.append(diff)
    if clamped:
        warnings.warn(
            f"{clamped} negative increment(s) clamped to 0", ClampWarning, stacklevel=2
        )
    return out
