"""Vocabulary and input encodings for the classifiers."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence

import numpy as np

from tweetlens.errors import DataError
from tweetlens.text_prep import tokenize_classifier

PAD = "<pad>"
UNK = "<unk>"
PAD_INDEX = 0
UNK_INDEX = 1


class Vocabulary:
    """Token -> index map; 0 is padding, 1 is the unknown bucket."""

    def __init__(self, tokens: Sequence[str]):
        if list(tokens[:2]) != [PAD, UNK]:
            raise ValueError("vocabulary must start with <pad>, <unk>")
        self.tokens = list(tokens)
        self.index = {t: i for i, t in enumerate(self.tokens)}

    def __len__(self):
        return len(self.tokens)

    def __eq__(self, other):
        return isinstance(other, Vocabulary) and self.tokens == other.tokens

    def __repr__(self):
        return f"Vocabulary(size={len(self)})"

    def lookup(self, token: str) -> int:
        return self.index.get(token, UNK_INDEX)


def build_vocab(texts: Iterable[str], size: int) -> Vocabulary:
    """Keep the ``size - 2`` most frequent tokens (ties alphabetical)."""
    if size < 3:
        raise ValueError("vocabulary size must be at least 3")
    freq: Counter = Counter()
    n_texts = 0
    for text in texts:
        n_texts += 1
        freq.update(tokenize_classifier(text))
    if n_texts == 0 or not freq:
        raise DataError("cannot build a vocabulary from an empty corpus")
    freq.pop(PAD, None)
    freq.pop(UNK, None)
    ranked = sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))[: size - 2]
    return Vocabulary([PAD, UNK] + [tok for tok, _ in ranked])


def vectorize_bow(text: str, vocab: Vocabulary) -> np.ndarray:
    vec = np.zeros(len(vocab), dtype=np.float64)
    for tok in tokenize_classifier(text):
        vec[vocab.lookup(tok)] += 1.0
    return vec


def bow_matrix(texts: Sequence[str], vocab: Vocabulary) -> np.ndarray:
    out = np.zeros((len(texts), len(vocab)), dtype=np.float64)
    for i, text in enumerate(texts):
        for tok in tokenize_classifier(text):
            out[i, vocab.lookup(tok)] += 1.0
    return out


def encode_sequence(text: str, vocab: Vocabulary, maxlen: int) -> np.ndarray:
    """Token indices, left-padded with 0; longer texts keep their last ``maxlen`` tokens."""
    if maxlen < 1:
        raise ValueError("maxlen must be >= 1")
    ids = [vocab.lookup(t) for t in tokenize_classifier(text)][-maxlen:]
    out = np.zeros(maxlen, dtype=np.int64)
    if ids:
        out[maxlen - len(ids):] = ids
    return out


def sequence_matrix(texts: Sequence[str], vocab: Vocabulary, maxlen: int) -> np.ndarray:
    if len(texts) == 0:
        return np.zeros((0, maxlen), dtype=np.int64)
    return np.stack([encode_sequence(t, vocab, maxlen) for t in texts])
