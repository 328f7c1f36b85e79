"""Assemble the plot-ready report directory from a processed corpus."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Sequence

from tweetlens import analytics as an

DEFAULT_COUNTRIES = ("United States", "India", "Brazil")
COUNTRY_FIELDS = ("country", "n_tweets", "pos_share", "neg_share",
                  "normalized_pos", "normalized_neg")
EXTREME_FIELDS = ("metric", "rank", "country", "value", "n_tweets")


def _world_and_countries(fn, records, countries, **kw):
    points = list(fn(records, country=None, **kw))
    present = {r.country for r in records}
    for c in countries:
        if c in present:
            points.extend(fn(records, country=c, **kw))
    return points


def write_report(records, out_dir, cases=None, countries: Sequence[str] = DEFAULT_COUNTRIES,
                 fmt: str = "csv", denominator: str = "all", min_tweets: int = 30,
                 k: int = 10, normalization: str = "share") -> dict[str, str]:
    """Write every table for ``records`` (and ``cases`` if given).

    Returns {file name: sha256 hex} and also stores it as ``manifest.json``.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ext = "csv" if fmt == "csv" else "json"
    written: list[Path] = []
    labeled = all(r.polarity is not None for r in records)
    scored = all(r.emotion is not None for r in records)

    def series(name, points):
        written.append(an.export_report(points, out / f"{name}.{ext}", fmt))

    for gran in ("month", "day"):
        if labeled:
            series(f"sentiment_{gran}", _world_and_countries(
                an.aggregate_sentiment, records, countries,
                granularity=gran, denominator=denominator))
        if scored:
            series(f"emotion_{gran}", _world_and_countries(
                an.aggregate_emotion, records, countries, granularity=gran))

    if labeled:
        rows = [
            {"country": s.country, "n_tweets": s.n_tweets, "pos_share": s.pos_share,
             "neg_share": s.neg_share, "normalized_pos": s.normalized_pos,
             "normalized_neg": s.normalized_neg}
            for s in an.country_counts_normalized(records, normalization=normalization)
        ]
        written.append(an.export_table(rows, COUNTRY_FIELDS, out / f"country_sentiment.{ext}", fmt))

    metrics = [m for m in an.EXTREME_METRICS
               if (labeled if m.endswith("share") else scored)]
    if metrics:
        rows = []
        for metric in metrics:
            for rank, (country, value, n) in enumerate(
                    an.country_extremes(records, metric, k=k, min_tweets=min_tweets), start=1):
                rows.append({"metric": metric, "rank": rank, "country": country,
                             "value": value, "n_tweets": n})
        written.append(an.export_table(rows, EXTREME_FIELDS, out / f"extremes.{ext}", fmt))

    if cases:
        case_countries = sorted({c.country for c in cases})
        for mode, gran in (("cumulative", "day"), ("daily_new", "day"), ("daily_new", "month")):
            points = an.cases_series(cases, None, gran, mode)
            for c in case_countries:
                points.extend(an.cases_series(cases, c, gran, mode))
            series(f"cases_{mode}_{gran}", points)

    manifest = {p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in written}
    (out / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n",
                                       encoding="utf-8")
    return manifest


def file_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
