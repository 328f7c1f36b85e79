"""Resolve free-text profile locations to countries with a world-cities gazetteer."""

from __future__ import annotations

import csv
import logging
import re
import unicodedata
from collections import Counter, defaultdict
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Optional

from tweetlens.errors import DataError, IngestError

logger = logging.getLogger(__name__)

# Highest priority first.
KINDS = ("country", "abbreviation", "subcountry", "city", "geoname")
_PRIORITY = {k: i for i, k in enumerate(KINDS)}
REQUIRED_COLUMNS = ("name", "country", "subcountry", "geonameid")

_WS_RE = re.compile(r"\s+")


def normalize_place(s: str) -> str:
    """Lowercase, drop punctuation, collapse whitespace."""
    s = unicodedata.normalize("NFKC", s).lower()
    s = "".join(c for c in s if not unicodedata.category(c).startswith("P"))
    return _WS_RE.sub(" ", s).strip()


@dataclass(frozen=True)
class Candidate:
    country: str
    kind: str
    geonameid: Optional[str] = None


@dataclass(frozen=True)
class Resolution:
    country: Optional[str]
    kind: Optional[str] = None
    ambiguous: bool = False

    @property
    def resolved(self) -> bool:
        return self.country is not None


UNRESOLVED = Resolution(None)


class PlaceIndex:
    """Normalized place string -> candidate countries."""

    def __init__(self, exact: dict[str, list[Candidate]], n_rows: int = 0):
        self.exact = exact
        self.n_rows = n_rows
        self.countries = frozenset(c.country for cands in exact.values() for c in cands)

    def __len__(self):
        return len(self.exact)

    def lookup(self, segment: str) -> list[Candidate]:
        return self.exact.get(normalize_place(segment), [])


def build_index(path) -> PlaceIndex:
    path = Path(path)
    if not path.is_file():
        raise IngestError("no such file", path)
    exact: dict[str, list[Candidate]] = defaultdict(list)
    seen: set[tuple[str, str, str]] = set()

    def add(key, country, kind, gid=None):
        key = normalize_place(key or "")
        if not key:
            return
        # one entry per (key, country, kind) except cities and ids, whose
        # multiplicity matters for disambiguation
        if kind not in ("city", "geoname"):
            if (key, country, kind) in seen:
                return
            seen.add((key, country, kind))
        exact[key].append(Candidate(country, kind, gid))

    n_rows = 0
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = [h.strip().lower() for h in (reader.fieldnames or [])]
        if not header:
            raise DataError(f"{path}: empty gazetteer")
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        if missing:
            raise IngestError(f"missing column(s): {', '.join(missing)}", path)
        reader.fieldnames = header
        for row in reader:
            country = (row.get("country") or "").strip()
            if not country:
                continue
            n_rows += 1
            gid = (row.get("geonameid") or "").strip() or None
            add(country, country, "country")
            add(row.get("abbreviation"), country, "abbreviation")
            add(row.get("subcountry"), country, "subcountry")
            add(row.get("name"), country, "city", gid)
            add(gid, country, "geoname", gid)
    if n_rows == 0:
        raise DataError(f"{path}: empty gazetteer")
    index = PlaceIndex(dict(exact), n_rows)
    logger.info("gazetteer %s: %d rows, %d keys", path, n_rows, len(index))
    return index


def _pick(cands: list[Candidate]) -> Resolution:
    best = min(_PRIORITY[c.kind] for c in cands)
    top = [c for c in cands if _PRIORITY[c.kind] == best]
    rows = Counter(c.country for c in top)
    if len(rows) == 1:
        return Resolution(top[0].country, top[0].kind)
    # most gazetteer rows for the name, then alphabetical
    country = min(rows, key=lambda k: (-rows[k], k))
    return Resolution(country, top[0].kind, ambiguous=True)


def resolve(raw_location: Optional[str], index: PlaceIndex) -> Resolution:
    """Map a profile location such as "Pune, India" to a country.

    A segment that names a country wins outright (rightmost if several);
    otherwise segments are tried right to left and the first one with any
    match is decided by kind priority
    country > abbreviation > subcountry > city > geoname.
    """
    if not raw_location:
        return UNRESOLVED
    segments = [s for s in raw_location.split(",") if normalize_place(s)]
    matches = [index.lookup(s) for s in reversed(segments)]
    for cands in matches:
        countries = [c for c in cands if c.kind == "country"]
        if countries:
            return _pick(countries)
    for cands in matches:
        if cands:
            return _pick(cands)
    return UNRESOLVED


@dataclass
class ResolutionReport:
    total: int
    resolved: int
    ambiguous: int
    top_unresolved: list

    @property
    def resolved_pct(self) -> float:
        return 100.0 * self.resolved / self.total if self.total else 0.0

    @property
    def ambiguous_pct(self) -> float:
        return 100.0 * self.ambiguous / self.total if self.total else 0.0

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "resolved": self.resolved,
            "ambiguous": self.ambiguous,
            "resolved_pct": self.resolved_pct,
            "ambiguous_pct": self.ambiguous_pct,
            "top_unresolved": [list(p) for p in self.top_unresolved],
        }


def resolve_corpus(records: Iterable, index: PlaceIndex, top_n: int = 10):
    out = []
    resolved = ambiguous = 0
    unresolved: Counter = Counter()
    for rec in records:
        res = resolve(rec.raw_location, index)
        if res.resolved:
            resolved += 1
            ambiguous += res.ambiguous
        elif rec.raw_location:
            unresolved[rec.raw_location.strip()] += 1
        out.append(replace(rec, country=res.country, geo_ambiguous=res.ambiguous))
    top = sorted(unresolved.items(), key=lambda kv: (-kv[1], kv[0]))[:top_n]
    return out, ResolutionReport(len(out), resolved, ambiguous, top)
