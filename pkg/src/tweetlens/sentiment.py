"""Rule-based valence scoring and polarity labeling.

The scorer is lexicon driven: each token gets a mean valence from the
lexicon, which is then adjusted by a fixed set of heuristics (degree
boosters, shouting, negation, contrastive "but", punctuation emphasis)
before being squashed into a compound score in [-1, 1].

The heuristic constants are those of the published VADER model so that
scores line up with its reference implementation.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping

from tweetlens.errors import IngestError
from tweetlens.text_prep import tokenize_sentiment

logger = logging.getLogger(__name__)

BOOST_INCR = 0.293
BOOST_DECR = -0.293
CAPS_INCR = 0.733
NEGATION_SCALAR = -0.74
ALPHA = 15.0
BUT_BEFORE = 0.5
BUT_AFTER = 1.5
EXCLAIM_INCR = 0.292
EXCLAIM_CAP = 4
QUESTION_INCR = 0.18
QUESTION_MAX = 0.96
BOOST_DAMPING = {1: 1.0, 2: 0.95, 3: 0.9}

DEFAULT_THRESHOLDS = (0.05, -0.05)

NEGATORS = frozenset("""
aint arent cannot cant couldnt darent didnt doesnt ain't aren't can't couldn't
daren't didn't doesn't dont hadnt hasnt havent isnt mightnt mustnt neither
don't hadn't hasn't haven't isn't mightn't mustn't neednt needn't never none
nope nor not nothing nowhere oughtnt shant shouldnt uhuh wasnt werent oughtn't
shan't shouldn't uh-uh wasn't weren't without wont wouldnt won't wouldn't
rarely seldom despite
""".split())

_INCR_WORDS = """
absolutely amazingly awfully completely considerable considerably decidedly
deeply effing enormous enormously entirely especially exceptional exceptionally
extreme extremely fabulously flipping flippin frackin fracking fricking frickin
frigging friggin fully fuckin fucking fuggin fugging greatly hella highly
hugely incredible incredibly intensely major majorly more most particularly
purely quite really remarkably so substantially thoroughly total totally
tremendous tremendously uber unbelievably unusually utter utterly very
""".split()
_DECR_WORDS = """
almost barely hardly kinda kindof kind-of less little marginal marginally
occasional occasionally partly scarce scarcely slight slightly somewhat sorta
sortof sort-of
""".split() + ["just enough", "kind of", "sort of"]

BOOSTERS = {w: BOOST_INCR for w in _INCR_WORDS}
BOOSTERS.update({w: BOOST_DECR for w in _DECR_WORDS})

SPECIAL_IDIOMS = {
    "the shit": 3.0, "the bomb": 3.0, "bad ass": 1.5, "badass": 1.5,
    "bus stop": 0.0, "yeah right": -2.0, "kiss of death": -1.5,
    "to die for": 3.0, "beating heart": 3.5,
}

_SO_THIS = ("so", "this")


@dataclass(frozen=True)
class SentimentLexicon:
    entries: Mapping[str, float]
    boosters: Mapping[str, float] = field(default_factory=lambda: dict(BOOSTERS))
    negators: frozenset = NEGATORS
    special_idioms: Mapping[str, float] = field(default_factory=lambda: dict(SPECIAL_IDIOMS))

    def __post_init__(self):
        for tok, val in self.entries.items():
            if not -4.0 <= val <= 4.0:
                raise ValueError(f"valence of {tok!r} outside [-4, 4]: {val}")
        for tok, inc in self.boosters.items():
            if inc not in (BOOST_INCR, BOOST_DECR):
                raise ValueError(f"booster {tok!r} has increment {inc}")

    def __len__(self):
        return len(self.entries)

    def negated(self) -> "SentimentLexicon":
        """Copy with every valence (entries and idioms) sign-flipped."""
        return replace(
            self,
            entries={k: -v for k, v in self.entries.items()},
            special_idioms={k: -v for k, v in self.special_idioms.items()},
        )


@dataclass(frozen=True)
class SentimentScore:
    pos: float
    neu: float
    neg: float
    compound: float


def load_lexicon(path) -> SentimentLexicon:
    """Read ``token<TAB>valence[<TAB>...]`` lines; extra columns are ignored."""
    path = Path(path)
    if not path.is_file():
        raise IngestError("no such file", path)
    entries: dict[str, float] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\r\n")
            if not line.strip():
                continue
            cols = line.strip().split("\t")
            if len(cols) < 2:
                raise IngestError("expected token<TAB>valence", path, lineno)
            try:
                val = float(cols[1])
            except ValueError:
                raise IngestError(f"bad valence {cols[1]!r}", path, lineno) from None
            if not (math.isfinite(val) and -4.0 <= val <= 4.0):
                raise IngestError(f"valence {val} outside [-4, 4]", path, lineno)
            entries[cols[0]] = val
    logger.info("loaded %d lexicon entries from %s", len(entries), path)
    return SentimentLexicon(entries)


def default_lexicon_path() -> Path:
    return Path(__file__).parent / "data" / "vader_lexicon.txt"


def _normalize(total: float, alpha: float = ALPHA) -> float:
    norm = total / math.sqrt(total * total + alpha)
    return max(-1.0, min(1.0, norm))


def _punctuation_amplifier(text: str) -> float:
    amp = min(text.count("!"), EXCLAIM_CAP) * EXCLAIM_INCR
    qm = text.count("?")
    if qm > 1:
        amp += qm * QUESTION_INCR if qm <= 3 else QUESTION_MAX
    return amp


class _Scorer:
    """Per-text state for the valence heuristics."""

    def __init__(self, words: list[str], lex: SentimentLexicon):
        self.words = words
        self.lower = [w.lower() for w in words]
        self.lex = lex
        shouted = sum(1 for w in words if w.isupper())
        # emphasis only counts when some, but not all, words are shouted
        self.cap_diff = 0 < len(words) - shouted < len(words)

    def is_negation(self, word: str) -> bool:
        return word in self.lex.negators or "n't" in word

    def booster_scalar(self, i: int, valence: float) -> float:
        word = self.words[i]
        inc = self.lex.boosters.get(self.lower[i], 0.0)
        if inc == 0.0:
            return 0.0
        if valence < 0:
            inc = -inc
        if word.isupper() and self.cap_diff:
            inc += CAPS_INCR if valence > 0 else -CAPS_INCR
        return inc

    def valences(self) -> list[float]:
        out = []
        n = len(self.words)
        for i in range(n):
            lw = self.lower[i]
            if lw in self.lex.boosters or (
                lw == "kind" and i < n - 1 and self.lower[i + 1] == "of"
            ):
                out.append(0.0)
            else:
                out.append(self.token_valence(i))
        return out

    def token_valence(self, i: int) -> float:
        lower, entries = self.lower, self.lex.entries
        lw = lower[i]
        if lw not in entries:
            return 0.0
        base = entries[lw]
        val = base
        # "no" directly before a lexicon word acts as a negator, not as a word
        if lw == "no" and i < len(lower) - 1 and lower[i + 1] in entries:
            val = 0.0
        if (
            (i > 0 and lower[i - 1] == "no")
            or (i > 1 and lower[i - 2] == "no")
            or (i > 2 and lower[i - 3] == "no" and lower[i - 1] in ("or", "nor"))
        ):
            val = base * NEGATION_SCALAR
        if self.words[i].isupper() and self.cap_diff:
            val += CAPS_INCR if val > 0 else -CAPS_INCR

        for dist in (1, 2, 3):
            if i < dist or lower[i - dist] in entries:
                continue
            val += self.booster_scalar(i - dist, val) * BOOST_DAMPING[dist]
            val = self.negation(val, i, dist)
            if dist == 3:
                val = self.idioms(val, i)
        return self.least(val, i)

    def negation(self, val: float, i: int, dist: int) -> float:
        w = self.lower
        if dist == 1:
            if self.is_negation(w[i - 1]):
                val *= NEGATION_SCALAR
        elif dist == 2:
            if w[i - 2] == "never" and w[i - 1] in _SO_THIS:
                val *= 1.25
            elif w[i - 2] == "without" and w[i - 1] == "doubt":
                pass
            elif self.is_negation(w[i - 2]):
                val *= NEGATION_SCALAR
        else:
            # "so"/"this" right before the word boosts regardless of "never"
            if (w[i - 3] == "never" and w[i - 2] in _SO_THIS) or w[i - 1] in _SO_THIS:
                val *= 1.25
            elif w[i - 3] == "without" and "doubt" in (w[i - 2], w[i - 1]):
                pass
            elif self.is_negation(w[i - 3]):
                val *= NEGATION_SCALAR
        return val

    def idioms(self, val: float, i: int) -> float:
        w, idioms, boosters = self.lower, self.lex.special_idioms, self.lex.boosters
        before = [
            f"{w[i - 1]} {w[i]}",
            f"{w[i - 2]} {w[i - 1]} {w[i]}",
            f"{w[i - 2]} {w[i - 1]}",
            f"{w[i - 3]} {w[i - 2]} {w[i - 1]}",
            f"{w[i - 3]} {w[i - 2]}",
        ]
        for seq in before:
            if seq in idioms:
                val = idioms[seq]
                break
        if len(w) - 1 > i:
            seq = f"{w[i]} {w[i + 1]}"
            if seq in idioms:
                val = idioms[seq]
        if len(w) - 1 > i + 1:
            seq = f"{w[i]} {w[i + 1]} {w[i + 2]}"
            if seq in idioms:
                val = idioms[seq]
        # multi-word dampeners such as "kind of"
        for seq in (before[3], before[4], before[2]):
            if seq in boosters:
                val += boosters[seq]
        return val

    def least(self, val: float, i: int) -> float:
        w = self.lower
        if i > 0 and w[i - 1] == "least" and w[i - 1] not in self.lex.entries:
            if i == 1 or w[i - 2] not in ("at", "very"):
                val *= NEGATION_SCALAR
        return val


def but_reweight(lower_words: list[str], valences: list[float]) -> list[float]:
    """Halve valences before the first "but", scale those after by 1.5."""
    if "but" not in lower_words:
        return list(valences)
    bi = lower_words.index("but")
    return [
        v * BUT_BEFORE if k < bi else v * BUT_AFTER if k > bi else v
        for k, v in enumerate(valences)
    ]


def score(text: str, lex: SentimentLexicon) -> SentimentScore:
    """Score ``text``; texts with no tokens are fully neutral."""
    text = text.strip()
    words = [t.surface for t in tokenize_sentiment(text)]
    if not words:
        return SentimentScore(pos=0.0, neu=1.0, neg=0.0, compound=0.0)
    scorer = _Scorer(words, lex)
    valences = but_reweight(scorer.lower, scorer.valences())

    total = sum(valences)
    amp = _punctuation_amplifier(text)
    if total > 0:
        total += amp
    elif total < 0:
        total -= amp
    compound = _normalize(total)

    pos_sum = sum(v + 1.0 for v in valences if v > 0)
    neg_sum = sum(v - 1.0 for v in valences if v < 0)
    neu_count = sum(1 for v in valences if v == 0)
    if pos_sum > abs(neg_sum):
        pos_sum += amp
    elif pos_sum < abs(neg_sum):
        neg_sum -= amp
    denom = pos_sum + abs(neg_sum) + neu_count
    return SentimentScore(
        pos=abs(pos_sum / denom),
        neu=abs(neu_count / denom),
        neg=abs(neg_sum / denom),
        compound=compound,
    )


def classify(compound: float, thresholds=DEFAULT_THRESHOLDS) -> str:
    t_pos, t_neg = thresholds
    if not t_neg < t_pos:
        raise ValueError(f"negative threshold {t_neg} must be below positive {t_pos}")
    if compound >= t_pos:
        return "Positive"
    if compound <= t_neg:
        return "Negative"
    return "Neutral"


def label_corpus(records: Iterable, lex: SentimentLexicon, thresholds=DEFAULT_THRESHOLDS):
    """Return (relabeled records, per-class counts)."""
    out = []
    counts = {"Positive": 0, "Neutral": 0, "Negative": 0}
    for rec in records:
        s = score(rec.text, lex)
        pol = classify(s.compound, thresholds)
        counts[pol] += 1
        out.append(replace(rec, polarity=pol, compound=s.compound))
    return out, counts
