"""Plot-ready aggregations of labeled corpora and the cases table.

Every aggregation is built from plain ``Counter`` partials keyed by
(period, country) so partial results from disjoint shards can be merged
with ``merge_counts`` before finalizing.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from tweetlens.corpus import CaseRecord, TweetRecord, daily_new
from tweetlens.errors import DataError

WORLD = "ALL"
SENTIMENT_LABELS = {
    "all": ("Positive", "Neutral", "Negative"),
    "pos_neg_only": ("Positive", "Negative"),
}
EMOTION_LABELS = ("fear", "trust", "other")
CASE_LABELS = ("confirmed", "deaths", "recovered")
REPORT_FIELDS = ("period", "country", "label", "count", "percentage")


@dataclass(frozen=True)
class SeriesPoint:
    period: str  # YYYY-MM-DD or YYYY-MM
    country: Optional[str]
    counts: Mapping[str, int]
    percentages: Mapping[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class CountrySummary:
    country: str
    n_tweets: int
    pos_share: float
    neg_share: float
    normalized_pos: float
    normalized_neg: float
    value: float  # normalized share of the requested polarity


def period_key(date, granularity: str) -> str:
    if granularity == "day":
        return date.isoformat()
    if granularity == "month":
        return f"{date.year:04d}-{date.month:02d}"
    raise ValueError(f"granularity must be day or month, not {granularity!r}")


def _select(records: Iterable[TweetRecord], country: Optional[str]):
    if country is None:
        return records
    return (r for r in records if r.country == country)


# -- partial counters ---------------------------------------------------------

def count_sentiment(records, granularity="month", country=None) -> dict:
    """(period, country) -> Counter of polarities."""
    out: dict = defaultdict(Counter)
    key_country = country or WORLD
    for rec in _select(records, country):
        if rec.polarity is None:
            raise DataError(f"record {rec.id!r} has no polarity; run label first")
        out[(period_key(rec.date, granularity), key_country)][rec.polarity] += 1
    return dict(out)


def count_emotion(records, granularity="month", country=None) -> dict:
    out: dict = defaultdict(Counter)
    key_country = country or WORLD
    for rec in _select(records, country):
        if rec.emotion is None:
            raise DataError(f"record {rec.id!r} has no emotion profile; run emotions first")
        pre = rec.emotion.predominant
        out[(period_key(rec.date, granularity), key_country)][
            pre if pre in ("fear", "trust") else "other"
        ] += 1
    return dict(out)


def merge_counts(*partials: Mapping) -> dict:
    merged: dict = defaultdict(Counter)
    for part in partials:
        for key, counter in part.items():
            merged[key].update(counter)
    return dict(merged)


def finalize(partial: Mapping, labels: Sequence[str]) -> list[SeriesPoint]:
    """Turn merged counters into sorted points; periods with no counts are omitted."""
    points = []
    for (period, country) in sorted(partial):
        counter = partial[(period, country)]
        counts = {lab: int(counter.get(lab, 0)) for lab in labels}
        denom = sum(counts.values())
        if denom == 0:
            continue
        pct = {lab: 100.0 * c / denom for lab, c in counts.items()}
        points.append(SeriesPoint(period, country, counts, pct))
    return points


# -- public aggregations ------------------------------------------------------

def aggregate_sentiment(records, granularity="month", country=None,
                        denominator="all") -> list[SeriesPoint]:
    if denominator not in SENTIMENT_LABELS:
        raise ValueError(f"denominator must be one of {sorted(SENTIMENT_LABELS)}")
    return finalize(count_sentiment(records, granularity, country),
                    SENTIMENT_LABELS[denominator])


def aggregate_emotion(records, granularity="month", country=None) -> list[SeriesPoint]:
    """Share of tweets per period whose predominant emotion is fear / trust.

    The remaining tweets are reported under ``other`` so the three labels
    always account for the whole period.
    """
    return finalize(count_emotion(records, granularity, country), EMOTION_LABELS)


def rebin_to_month(day_points: Sequence[SeriesPoint]) -> list[SeriesPoint]:
    """Sum day-level counts into months and recompute the percentages."""
    partial: dict = defaultdict(Counter)
    labels: list[str] = []
    for p in day_points:
        partial[(p.period[:7], p.country)].update(p.counts)
        labels.extend(lab for lab in p.counts if lab not in labels)
    return finalize(partial, labels)


def country_counts_normalized(records, polarity="Positive",
                              normalization="share") -> list[CountrySummary]:
    """Per-country share of each polarity among that country's labeled tweets.

    ``normalization="minmax"`` additionally rescales the shares across
    countries to [0, 1].
    """
    if polarity not in ("Positive", "Negative", "Neutral"):
        raise ValueError(f"unknown polarity {polarity!r}")
    per: dict[str, Counter] = defaultdict(Counter)
    for rec in records:
        if rec.country is None or rec.polarity is None:
            continue
        per[rec.country][rec.polarity] += 1
    rows = []
    for country in sorted(per):
        c = per[country]
        n = sum(c.values())
        rows.append((country, n, c["Positive"] / n, c["Negative"] / n, c[polarity] / n))

    def minmax(values):
        lo, hi = min(values), max(values)
        return [(v - lo) / (hi - lo) if hi > lo else 0.0 for v in values]

    if normalization == "share":
        npos = [r[2] for r in rows]
        nneg = [r[3] for r in rows]
        val = [r[4] for r in rows]
    elif normalization == "minmax":
        if not rows:
            return []
        npos = minmax([r[2] for r in rows])
        nneg = minmax([r[3] for r in rows])
        val = minmax([r[4] for r in rows])
    else:
        raise ValueError(f"normalization must be share or minmax, not {normalization!r}")
    return [
        CountrySummary(r[0], r[1], r[2], r[3], npos[i], nneg[i], val[i])
        for i, r in enumerate(rows)
    ]


EXTREME_METRICS = ("pos_share", "neg_share", "fear_score", "trust_score")


def country_extremes(records, metric="pos_share", k=10, min_tweets=30):
    """Top-``k`` countries by ``metric`` as (country, value, n_tweets) tuples.

    Share metrics use the labeled tweets of each country; fear/trust use
    the mean per-tweet normalized emotion score. Ties sort alphabetically.
    """
    if metric not in EXTREME_METRICS:
        raise ValueError(f"metric must be one of {EXTREME_METRICS}")
    totals: Counter = Counter()
    sums: dict[str, float] = defaultdict(float)
    for rec in records:
        if rec.country is None:
            continue
        if metric in ("pos_share", "neg_share"):
            if rec.polarity is None:
                continue
            target = "Positive" if metric == "pos_share" else "Negative"
            sums[rec.country] += rec.polarity == target
        else:
            if rec.emotion is None:
                continue
            sums[rec.country] += rec.emotion.score.get(metric.split("_")[0], 0.0)
        totals[rec.country] += 1
    ranked = [
        (c, sums[c] / n, n) for c, n in totals.items() if n >= min_tweets
    ]
    ranked.sort(key=lambda t: (-t[1], t[0]))
    return ranked[:k]


def cases_series(table: Sequence[CaseRecord], country=None, granularity="day",
                 mode="cumulative") -> list[SeriesPoint]:
    """Confirmed/deaths/recovered per period for one country or the world.

    Cumulative mode reports the level at the last date of each period;
    daily_new mode sums per-day increments (differenced per country)
    over the period. The world series sums over countries.
    """
    if mode not in ("cumulative", "daily_new"):
        raise ValueError(f"mode must be cumulative or daily_new, not {mode!r}")
    by_country: dict[str, list[CaseRecord]] = defaultdict(list)
    for rec in table:
        by_country[rec.country].append(rec)
    if country is not None:
        if country not in by_country:
            raise DataError(f"country {country!r} not in cases table")
        by_country = {country: by_country[country]}

    # per-date totals across the selected countries
    per_date: dict = defaultdict(Counter)
    for rows in by_country.values():
        rows = sorted(rows, key=lambda r: r.date)
        cols = {lab: [getattr(r, lab) for r in rows] for lab in CASE_LABELS}
        if mode == "daily_new":
            cols = {lab: daily_new(v) for lab, v in cols.items()}
        for i, r in enumerate(rows):
            for lab in CASE_LABELS:
                per_date[r.date][lab] += cols[lab][i]

    key_country = country or WORLD
    periods: dict[str, Counter] = {}
    for date in sorted(per_date):
        key = period_key(date, granularity)
        if mode == "cumulative":
            periods[key] = Counter(per_date[date])  # last date in period wins
        else:
            periods.setdefault(key, Counter()).update(per_date[date])
    return [
        SeriesPoint(p, key_country, {lab: int(periods[p][lab]) for lab in CASE_LABELS})
        for p in sorted(periods)
    ]


# -- export -------------------------------------------------------------------

def _fmt_pct(v):
    return "" if v is None else f"{v:.6f}"


def series_rows(points: Iterable[SeriesPoint]) -> list[dict]:
    rows = []
    for p in points:
        for label, count in p.counts.items():
            pct = p.percentages.get(label)
            rows.append({
                "period": p.period,
                "country": p.country or WORLD,
                "label": label,
                "count": count,
                "percentage": None if pct is None else round(pct, 6),
            })
    return rows


def render_table(rows: Sequence[Mapping], fields: Sequence[str], fmt="csv") -> str:
    """Deterministic CSV (LF line endings) or JSON text for ``rows``."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            out = []
            for f in fields:
                v = row.get(f)
                if v is None:
                    out.append("")
                elif isinstance(v, float):
                    out.append(_fmt_pct(v) if math.isfinite(v) else str(v))
                else:
                    out.append(v)
            writer.writerow(out)
        return buf.getvalue()
    if fmt == "json":
        objs = [{f: row.get(f) for f in fields} for row in rows]
        return json.dumps(objs, indent=1, ensure_ascii=False) + "\n"
    raise ValueError(f"format must be csv or json, not {fmt!r}")


def export_report(points: Iterable[SeriesPoint], path, fmt="csv") -> Path:
    """Write series points as ``period,country,label,count,percentage`` rows."""
    path = Path(path)
    text = render_table(series_rows(points), REPORT_FIELDS, fmt)
    try:
        path.write_text(text, encoding="utf-8", newline="")
    except OSError as exc:
        raise DataError(f"cannot write {path}: {exc}") from exc
    return path


def export_table(rows: Sequence[Mapping], fields: Sequence[str], path, fmt="csv") -> Path:
    path = Path(path)
    try:
        path.write_text(render_table(rows, fields, fmt), encoding="utf-8", newline="")
    except OSError as exc:
        raise DataError(f"cannot write {path}: {exc}") from exc
    return path
