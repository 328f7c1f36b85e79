"""Independent reference computations used by unit and acceptance tests."""

import re

from tweetlens.emotion import EMOTIONS, EmotionLexicon

MINI_EMOTIONS = EmotionLexicon(entries={
    "panic": frozenset({"fear", "sadness"}),
    "hope": frozenset({"anticipation", "joy", "trust"}),
    "doctor": frozenset({"trust"}),
    "virus": frozenset({"fear"}),
    "angry": frozenset({"anger", "disgust"}),
    "wow": frozenset({"surprise"}),
})
MINI_WORDS = sorted(MINI_EMOTIONS.entries) + ["the", "and", "is", "we", "lockdown", "zoom"]


def brute_force_emotions(text, lex):
    """Scan every lowercase word against every emotion by hand.

    Returns (raw counts, normalized scores, predominant emotion or None).
    """
    words = [w for w in re.split(r"[^0-9a-z]+", text.lower()) if w]
    raw = {e: 0 for e in EMOTIONS}
    for w in words:
        for e in EMOTIONS:
            if e in lex.entries.get(w, ()):
                raw[e] += 1
    total = sum(raw.values())
    if total == 0:
        return raw, {e: 0.0 for e in EMOTIONS}, None
    scores = {e: raw[e] / total for e in EMOTIONS}
    top = max(scores.values())
    return raw, scores, next(e for e in EMOTIONS if scores[e] == top)
