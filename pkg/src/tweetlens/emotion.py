"""Word-emotion association scoring over the eight basic emotions."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping, Optional

from tweetlens.errors import IngestError
from tweetlens.text_prep import tokenize_classifier

logger = logging.getLogger(__name__)

# Fixed order; also the tie-break order for the predominant emotion.
EMOTIONS = ("anger", "fear", "anticipation", "trust", "surprise", "sadness", "joy", "disgust")
VALENCES = ("positive", "negative")


@dataclass(frozen=True)
class EmotionLexicon:
    entries: Mapping[str, frozenset]
    # positive/negative rows, only used when scoring with include_valence=True
    valence: Mapping[str, frozenset] = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class EmotionProfile:
    raw: Mapping[str, int]
    score: Mapping[str, float]
    predominant: Optional[str] = None

    @property
    def total(self) -> int:
        return sum(self.raw.values())

    def to_json(self) -> dict:
        return {
            "raw": dict(self.raw),
            "score": dict(self.score),
            "predominant": self.predominant,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "EmotionProfile":
        return cls(
            raw={k: int(v) for k, v in obj["raw"].items()},
            score={k: float(v) for k, v in obj["score"].items()},
            predominant=obj.get("predominant"),
        )


def load_emotion_lexicon(path) -> EmotionLexicon:
    """Parse ``word<TAB>affect<TAB>flag`` rows, keeping flag=1 associations."""
    path = Path(path)
    if not path.is_file():
        raise IngestError("no such file", path)
    entries: dict[str, set] = {}
    valence: dict[str, set] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            cols = line.rstrip("\r\n").split("\t")
            if len(cols) != 3 or cols[2].strip() not in ("0", "1"):
                raise IngestError("expected word<TAB>affect<TAB>0|1", path, lineno)
            word, affect, flag = cols[0].strip(), cols[1].strip().lower(), cols[2].strip()
            if affect in VALENCES:
                target = valence
            elif affect in EMOTIONS:
                target = entries
            else:
                raise IngestError(f"unknown affect {affect!r}", path, lineno)
            if flag == "1":
                target.setdefault(word, set()).add(affect)
    logger.info("loaded %d emotion words from %s", len(entries), path)
    return EmotionLexicon(
        entries={w: frozenset(s) for w, s in entries.items()},
        valence={w: frozenset(s) for w, s in valence.items()},
    )


def find_predominant(scores, order=EMOTIONS) -> Optional[str]:
    """Emotion with the highest score; earlier in ``order`` wins ties."""
    if isinstance(scores, EmotionProfile):
        scores = scores.score
    best, best_score = None, 0.0
    for emo in order:
        s = scores.get(emo, 0.0)
        if s > best_score:
            best, best_score = emo, s
    return best


def profile_from_counts(raw: Mapping[str, int], labels=EMOTIONS) -> EmotionProfile:
    raw = {e: int(raw.get(e, 0)) for e in labels}
    total = sum(raw.values())
    if total == 0:
        return EmotionProfile(raw=raw, score={e: 0.0 for e in labels})
    score = {e: raw[e] / total for e in labels}
    return EmotionProfile(raw=raw, score=score, predominant=find_predominant(score, labels))


def score_tokens(tokens: Iterable[str], lex: EmotionLexicon,
                 include_valence: bool = False) -> EmotionProfile:
    counts: Counter = Counter()
    for tok in tokens:
        counts.update(lex.entries.get(tok, ()))
        if include_valence:
            counts.update(lex.valence.get(tok, ()))
    labels = EMOTIONS + VALENCES if include_valence else EMOTIONS
    return profile_from_counts(counts, labels)


def score_emotions(text: str, lex: EmotionLexicon, include_valence: bool = False) -> EmotionProfile:
    """Count emotion associations of the text's classifier-mode tokens.

    Each token occurrence adds one to every emotion it is associated
    with; scores are those counts divided by their sum.
    """
    return score_tokens(tokenize_classifier(text), lex, include_valence)


def score_corpus(records, lex: EmotionLexicon, include_valence: bool = False):
    out = []
    predominant: Counter = Counter()
    for rec in records:
        prof = score_emotions(rec.text, lex, include_valence)
        predominant[prof.predominant or "none"] += 1
        out.append(replace(rec, emotion=prof))
    return out, dict(predominant)
