import csv
import datetime as dt

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tweetlens.corpus import TweetRecord
from tweetlens.errors import DataError, IngestError
from tweetlens.geo import build_index, normalize_place, resolve, resolve_corpus

from conftest import DATA, PKG_DATA, write_lines

HEADER = "name,country,subcountry,geonameid"
_INDEX = build_index(PKG_DATA / "world_cities.csv")


def load_cases():
    with open(DATA / "geo_cases.csv", encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


class TestBuildIndex:
    def test_mumbai_keys(self, tmp_path):
        idx = build_index(write_lines(tmp_path / "c.csv",
                                      [HEADER, "Mumbai,India,Maharashtra,1275339"]))
        kinds = {key: [c.kind for c in cands] for key, cands in idx.exact.items()}
        assert kinds == {"mumbai": ["city"], "india": ["country"],
                         "maharashtra": ["subcountry"], "1275339": ["geoname"]}
        assert idx.n_rows == 1 and len(idx) == 4

    def test_duplicate_city_names(self, tmp_path):
        idx = build_index(write_lines(tmp_path / "c.csv", [
            HEADER, "Perth,Australia,Western Australia,1", "Perth,United Kingdom,Scotland,2"]))
        assert sorted(c.country for c in idx.exact["perth"]) == ["Australia", "United Kingdom"]

    def test_empty_file(self, tmp_path):
        (tmp_path / "c.csv").write_text("", encoding="utf-8")
        with pytest.raises(DataError):
            build_index(tmp_path / "c.csv")

    def test_header_only(self, tmp_path):
        with pytest.raises(DataError):
            build_index(write_lines(tmp_path / "c.csv", [HEADER]))

    def test_missing_column(self, tmp_path):
        with pytest.raises(IngestError, match="geonameid"):
            build_index(write_lines(tmp_path / "c.csv", ["name,country,subcountry", "a,b,c"]))

    def test_keys_are_normalized(self, place_index):
        for key in place_index.exact:
            assert key == normalize_place(key)


class TestResolve:
    @pytest.mark.parametrize("case", load_cases(), ids=lambda c: c["raw_location"] or "<empty>")
    def test_fixture(self, place_index, case):
        res = resolve(case["raw_location"], place_index)
        assert res.country == (case["expected_country"] or None)
        assert res.ambiguous == (case["expected_ambiguous"] == "1")

    def test_examples(self, place_index):
        assert resolve("Mumbai, India", place_index).country == "India"
        assert not resolve("", place_index).resolved
        assert not resolve(None, place_index).resolved
        r = resolve("Springfield", place_index)
        # three United States rows against one Australian row
        assert (r.country, r.ambiguous) == ("United States", True)

    def test_country_segment_wins(self, place_index):
        # London is a city here, but the named country decides
        assert resolve("Canada, London", place_index).country == "Canada"
        assert resolve("London, Canada", place_index).country == "Canada"

    def test_resolved_countries_exist(self, place_index):
        for case in load_cases():
            c = resolve(case["raw_location"], place_index).country
            assert c is None or c in place_index.countries


_segments = st.sampled_from(["Mumbai", "springfield", "Texas", "USA", "UK", "nowhere",
                             "São Paulo", "Lagos", "1275339", "  ", "Perth", "Hyderabad",
                             "New York", "Bengaluru!!", "kerala"])


@given(st.lists(_segments, min_size=1, max_size=4).map(", ".join))
def test_case_and_punctuation_insensitive(text):
    idx = _INDEX
    base = resolve(text, idx)
    assert resolve(text.upper(), idx) == base
    assert resolve(text.lower() + "!", idx) == base


@given(st.lists(_segments, max_size=3), st.sampled_from(sorted(
    ["India", "Brazil", "Canada", "Nigeria", "United States", "Australia"])),
    st.lists(_segments, max_size=3))
def test_priority_soundness(before, country, after):
    text = ", ".join(before + [country] + after)
    assert resolve(text, _INDEX).country == country



class TestResolveCorpus:
    def _recs(self, locs):
        return [TweetRecord(id=str(i), text="x", date=dt.date(2020, 5, 1), raw_location=loc)
                for i, loc in enumerate(locs)]

    def test_three_of_four(self, place_index):
        out, rep = resolve_corpus(self._recs(["Mumbai, India", "Texas", "UK", "Mars"]),
                                  place_index)
        assert rep.resolved_pct == 75.0
        assert [r.country for r in out] == ["India", "United States", "United Kingdom", None]
        assert rep.top_unresolved == [("Mars", 1)]

    def test_missing_location(self, place_index):
        out, rep = resolve_corpus(self._recs([None]), place_index)
        assert out[0].country is None and rep.resolved == 0 and rep.top_unresolved == []

    def test_idempotent(self, place_index):
        recs = self._recs(["Springfield", "Lagos, Nigeria", "", "earth"])
        once, rep1 = resolve_corpus(recs, place_index)
        twice, rep2 = resolve_corpus(once, place_index)
        assert once == twice and rep1 == rep2
