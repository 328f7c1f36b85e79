import datetime as dt
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tweetlens.corpus import TweetRecord
from tweetlens.emotion import (
    EMOTIONS,
    EmotionLexicon,
    EmotionProfile,
    find_predominant,
    load_emotion_lexicon,
    score_corpus,
    score_emotions,
)
from tweetlens.errors import IngestError

from conftest import write_lines
from oracles import MINI_EMOTIONS as MINI
from oracles import MINI_WORDS
from oracles import brute_force_emotions as brute_force


class TestLoad:
    def test_flag_filtering(self, tmp_path):
        lex = load_emotion_lexicon(write_lines(tmp_path / "e.tsv", [
            "panic\tfear\t1", "panic\tsadness\t0", "happy\tpositive\t1"]))
        assert dict(lex.entries) == {"panic": frozenset({"fear"})}
        assert "happy" not in lex.entries
        assert lex.valence["happy"] == frozenset({"positive"})

    @pytest.mark.parametrize("line", ["panic\tfear", "panic\tfear\t2", "panic\tboredom\t1"])
    def test_bad_rows(self, tmp_path, line):
        with pytest.raises(IngestError, match=":1:"):
            load_emotion_lexicon(write_lines(tmp_path / "e.tsv", [line]))

    def test_bundled(self, emotion_lexicon):
        assert len(emotion_lexicon) > 40
        for assoc in emotion_lexicon.entries.values():
            assert assoc <= set(EMOTIONS)


class TestScore:
    def test_no_lexicon_words(self):
        p = score_emotions("nothing to see", MINI)
        assert p.total == 0 and p.predominant is None
        assert set(p.score.values()) == {0.0}

    def test_single_fear(self):
        p = score_emotions("the VIRUS!", MINI)
        assert p.raw["fear"] == 1 and p.score["fear"] == 1.0 and p.predominant == "fear"

    def test_counts_occurrences(self):
        p = score_emotions("panic panic hope", MINI)
        assert p.raw["fear"] == 2 and p.raw["sadness"] == 2 and p.raw["joy"] == 1
        assert p.predominant == "fear"  # fear/sadness tie, fear first

    def test_ten_sentences(self):
        sentences = [
            "Panic buying everywhere, the virus is here",
            "We have hope, doctor says",
            "angry angry ANGRY",
            "wow just wow",
            "doctor doctor hope panic",
            "the lockdown and zoom",
            "virus virus virus hope",
            "Hope! Hope? hope...",
            "wow, angry doctor",
            "",
        ]
        for s in sentences:
            raw, scores, top = brute_force(s, MINI)
            p = score_emotions(s, MINI)
            assert dict(p.raw) == raw
            assert p.score == pytest.approx(scores)
            assert p.predominant == top

    def test_valence_switch(self, tmp_path):
        lex = load_emotion_lexicon(write_lines(tmp_path / "e.tsv", [
            "panic\tfear\t1", "panic\tnegative\t1"]))
        assert score_emotions("panic", lex).score["fear"] == 1.0
        p = score_emotions("panic", lex, include_valence=True)
        assert p.score["fear"] == 0.5 and p.score["negative"] == 0.5


class TestPredominant:
    def test_examples(self):
        assert find_predominant({"fear": 0.6, "trust": 0.4}) == "fear"
        assert find_predominant({"fear": 0.5, "trust": 0.5}) == "fear"
        assert find_predominant({"trust": 0.5, "anger": 0.5}) == "anger"
        assert find_predominant({e: 0.0 for e in EMOTIONS}) is None

    def test_accepts_profile(self):
        p = EmotionProfile(raw={"joy": 1}, score={"joy": 1.0})
        assert find_predominant(p) == "joy"


_texts = st.lists(st.sampled_from(MINI_WORDS), max_size=15).map(" ".join)


@given(_texts)
def test_scores_sum_to_one(text):
    p = score_emotions(text, MINI)
    if p.total:
        assert sum(p.score.values()) == pytest.approx(1.0, abs=1e-6)


@given(_texts)
def test_duplication_doubles_raw(text):
    a = score_emotions(text, MINI)
    b = score_emotions(text + " " + text, MINI)
    assert {e: 2 * v for e, v in a.raw.items()} == dict(b.raw)
    assert b.score == pytest.approx(a.score)


@given(_texts, st.permutations(EMOTIONS))
def test_relabeling_equivariant(text, perm):
    mapping = dict(zip(EMOTIONS, perm))
    relabeled = EmotionLexicon({w: frozenset(mapping[e] for e in s) for w, s in MINI.entries.items()})
    a = score_emotions(text, MINI)
    b = score_emotions(text, relabeled)
    for e in EMOTIONS:
        assert b.score[mapping[e]] == a.score[e]


def test_random_texts_match_brute_force():
    rng = random.Random(5)
    for _ in range(100):
        text = " ".join(rng.choice(MINI_WORDS) for _ in range(rng.randint(0, 10)))
        raw, scores, top = brute_force(text, MINI)
        p = score_emotions(text, MINI)
        assert dict(p.raw) == raw and p.predominant == top


def test_score_corpus_and_json_roundtrip():
    recs = [TweetRecord(id=str(i), text=t, date=dt.date(2020, 4, 1))
            for i, t in enumerate(["virus", "hope", "zoom"])]
    out, counts = score_corpus(recs, MINI)
    assert counts == {"fear": 1, "anticipation": 1, "none": 1}
    for r in out:
        assert EmotionProfile.from_json(r.emotion.to_json()) == r.emotion
