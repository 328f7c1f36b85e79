"""Tokenizers.

Two modes are needed downstream:

* ``tokenize_sentiment`` keeps case, emoticons and contractions so the
  valence heuristics can see shouting, "n't" negations and ":)".
* ``tokenize_classifier`` produces the lowercase, punctuation-free word
  stream used for the bag-of-words / sequence vocabularies and for the
  emotion lexicon lookup.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass

URL_TOKEN = "<url>"
USER_TOKEN = "<user>"

_PUNCT = string.punctuation
_URL_RE = re.compile(r"^(?:https?://|www\.)\S+$", re.IGNORECASE)
_MENTION_RE = re.compile(r"^@\w+")
# anything that is not a letter/digit (underscore counts as punctuation)
_NON_WORD_RE = re.compile(r"[\W_]+", re.UNICODE)


@dataclass(frozen=True)
class Token:
    surface: str
    is_allcaps: bool = False
    trailing_punct: str = ""


def _is_allcaps(surface: str) -> bool:
    letters = [c for c in surface if c.isalpha()]
    return len(letters) >= 2 and all(c.isupper() for c in letters)


def _split_punct(chunk: str) -> tuple[str, str]:
    stripped = chunk.strip(_PUNCT)
    # two characters or fewer left: treat the chunk as an emoticon / short
    # form and keep it whole (":)", ":D", "ok!")
    if len(stripped) <= 2:
        return chunk, ""
    end = len(chunk) - len(chunk.lstrip(_PUNCT)) + len(stripped)
    return stripped, chunk[end:]


def tokenize_sentiment(text: str) -> list[Token]:
    tokens = []
    for chunk in text.split():
        surface, trailing = _split_punct(chunk)
        tokens.append(Token(surface, _is_allcaps(surface), trailing))
    return tokens


def tokenize_classifier(text: str) -> list[str]:
    """Lowercase words with punctuation removed.

    URLs and @-mentions become the sentinels ``<url>`` and ``<user>``;
    hyphenated words are split ("covid-19" -> ["covid", "19"]).
    """
    out: list[str] = []
    for chunk in text.split():
        if _URL_RE.match(chunk):
            out.append(URL_TOKEN)
            continue
        if _MENTION_RE.match(chunk):
            out.append(USER_TOKEN)
            continue
        out.extend(w for w in _NON_WORD_RE.split(chunk.lower()) if w)
    return out
