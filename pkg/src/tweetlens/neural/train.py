"""Training and evaluation harness for the two sentiment classifiers."""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from tweetlens.errors import DataError, NumericError
from tweetlens.neural.lstm import SeqLstmModel
from tweetlens.neural.mlp import BowMlpModel
from tweetlens.neural.optim import AdamState, adam_step
from tweetlens.neural.vocab import Vocabulary, bow_matrix, build_vocab, sequence_matrix

logger = logging.getLogger(__name__)

LABELS = ("Negative", "Neutral", "Positive")
LABEL_INDEX = {lab: i for i, lab in enumerate(LABELS)}
MODEL_KINDS = ("mlp", "lstm")


@dataclass
class TrainConfig:
    epochs: int = 10
    batch_size: int = 32
    lr: float = 0.001
    vocab_size: int = 5000
    hidden: tuple = (64,)
    maxlen: int = 40
    embed_dim: int = 32
    units: int = 64
    conv_width: int = 3
    filters: int = 64
    dropout: float = 0.5
    train_frac: float = 0.8
    seed: int = 42

    def to_json(self) -> dict:
        d = asdict(self)
        d["hidden"] = list(self.hidden)
        return d

    @classmethod
    def from_json(cls, obj: dict) -> "TrainConfig":
        known = {k: v for k, v in obj.items() if k in cls.__dataclass_fields__}
        if "hidden" in known:
            h = known["hidden"]
            known["hidden"] = (h,) if isinstance(h, int) else tuple(h)
        return cls(**known)


class Classifier:
    """A trained network plus the vocabulary and settings needed to encode text."""

    def __init__(self, kind: str, net, vocab: Vocabulary, config: TrainConfig):
        if kind not in MODEL_KINDS:
            raise ValueError(f"model kind must be one of {MODEL_KINDS}")
        self.kind = kind
        self.net = net
        self.vocab = vocab
        self.config = config

    def encode(self, texts: Sequence[str]) -> np.ndarray:
        if self.kind == "mlp":
            return bow_matrix(texts, self.vocab)
        return sequence_matrix(texts, self.vocab, self.config.maxlen)

    def predict_proba_encoded(self, X, batch: int = 512) -> np.ndarray:
        if len(X) == 0:
            return np.zeros((0, len(LABELS)))
        return np.concatenate([self.net.forward(X[i:i + batch]) for i in range(0, len(X), batch)])

    def predict_proba(self, texts: Sequence[str]) -> np.ndarray:
        return self.predict_proba_encoded(self.encode(texts))

    def predict(self, texts: Sequence[str]) -> list[str]:
        return [LABELS[i] for i in self.predict_proba(texts).argmax(axis=1)]


@dataclass
class EvalResult:
    accuracy: float
    confusion: np.ndarray  # rows = true label, columns = predicted (LABELS order)
    n: int

    def to_json(self) -> dict:
        return {"accuracy": self.accuracy, "n": self.n, "labels": list(LABELS),
                "confusion": self.confusion.tolist()}


@dataclass
class TrainResult:
    model: Classifier
    history: list = field(default_factory=list)
    train_idx: np.ndarray = None
    val_idx: np.ndarray = None


def encode_labels(labels: Sequence[str]) -> np.ndarray:
    try:
        return np.array([LABEL_INDEX[lab] for lab in labels], dtype=np.int64)
    except KeyError as exc:
        raise DataError(f"unknown label {exc.args[0]!r}; expected one of {LABELS}") from None


def split_indices(n: int, train_frac: float, seed: int):
    """Seeded shuffle split; returns (train indices, validation indices)."""
    if not 0.0 < train_frac <= 1.0:
        raise ValueError("train_frac must be in (0, 1]")
    perm = np.random.default_rng(np.random.SeedSequence([seed, 0])).permutation(n)
    n_train = int(round(train_frac * n))
    return np.sort(perm[:n_train]), np.sort(perm[n_train:])


def confusion_matrix(y_true, y_pred, n_classes: int = len(LABELS)) -> np.ndarray:
    cm = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(cm, (np.asarray(y_true), np.asarray(y_pred)), 1)
    return cm


def _accuracy(clf: Classifier, X, y) -> float:
    if len(y) == 0:
        return float("nan")
    return float((clf.predict_proba_encoded(X).argmax(axis=1) == y).mean())


def build_network(kind: str, vocab_size: int, cfg: TrainConfig, rng=None, params=None):
    if kind == "mlp":
        return BowMlpModel(vocab_size, hidden=cfg.hidden, rng=rng, params=params)
    if kind == "lstm":
        return SeqLstmModel(vocab_size, embed_dim=cfg.embed_dim, units=cfg.units,
                            conv_width=cfg.conv_width, filters=cfg.filters,
                            dropout=cfg.dropout, rng=rng, params=params)
    raise ValueError(f"model kind must be one of {MODEL_KINDS}, not {kind!r}")


def train(kind: str, texts: Sequence[str], labels: Sequence[str],
          config: Optional[TrainConfig] = None, callback=None) -> TrainResult:
    """Fit a classifier with mini-batch Adam on a seeded train/validation split.

    The history holds one dict per epoch with the mean batch loss,
    training accuracy and (when a validation split exists) validation
    accuracy. Results are a pure function of inputs and ``config.seed``.
    """
    cfg = config or TrainConfig()
    if len(texts) != len(labels):
        raise DataError(f"{len(texts)} texts but {len(labels)} labels")
    if len(texts) == 0:
        raise DataError("empty training corpus")
    y_all = encode_labels(labels)
    train_idx, val_idx = split_indices(len(texts), cfg.train_frac, cfg.seed)
    missing = [LABELS[c] for c in range(len(LABELS)) if not np.any(y_all[train_idx] == c)]
    if missing:
        raise DataError(f"class(es) missing from training split: {', '.join(missing)}")

    init_ss, batch_ss = np.random.SeedSequence([cfg.seed, 1]).spawn(2)
    vocab = build_vocab([texts[i] for i in train_idx], cfg.vocab_size)
    net = build_network(kind, len(vocab), cfg, rng=np.random.default_rng(init_ss))
    clf = Classifier(kind, net, vocab, cfg)
    X_all = clf.encode(list(texts))
    X_tr, y_tr = X_all[train_idx], y_all[train_idx]
    X_va, y_va = X_all[val_idx], y_all[val_idx]

    state = AdamState(lr=cfg.lr)
    rng = np.random.default_rng(batch_ss)
    history = []
    for epoch in range(1, cfg.epochs + 1):
        order = rng.permutation(len(train_idx))
        losses = []
        for start in range(0, len(order), cfg.batch_size):
            b = order[start:start + cfg.batch_size]
            loss, grads = net.loss_and_grads(X_tr[b], y_tr[b], rng=rng)
            if not np.isfinite(loss):
                raise NumericError(f"non-finite loss at epoch {epoch}")
            adam_step(net.params, grads, state)
            losses.append(loss)
        entry = {"epoch": epoch, "loss": float(np.mean(losses)),
                 "train_acc": _accuracy(clf, X_tr, y_tr)}
        if len(val_idx):
            entry["val_acc"] = _accuracy(clf, X_va, y_va)
        history.append(entry)
        logger.info("epoch %d: %s", epoch, entry)
        if callback is not None:
            callback(entry)
    return TrainResult(clf, history, train_idx, val_idx)


def evaluate(model: Classifier, texts: Sequence[str], labels: Sequence[str]) -> EvalResult:
    if len(texts) == 0:
        raise DataError("cannot evaluate on an empty dataset")
    y = encode_labels(labels)
    pred = model.predict_proba(list(texts)).argmax(axis=1)
    cm = confusion_matrix(y, pred)
    return EvalResult(accuracy=float(np.trace(cm) / len(y)), confusion=cm, n=len(y))


def majority_baseline(train_labels: Sequence[str], test_labels: Sequence[str]) -> float:
    """Accuracy of always predicting the most frequent training label."""
    counts = {lab: 0 for lab in LABELS}
    for lab in train_labels:
        counts[lab] += 1
    top = max(LABELS, key=lambda lab: (counts[lab], -LABELS.index(lab)))
    if not test_labels:
        return float("nan")
    return sum(lab == top for lab in test_labels) / len(test_labels)
