"""Single-file model checkpoints.

Layout::

    TWEETLENS-CKPT 1\\n
    <header: one line of JSON, keys sorted>\\n
    <tensor payloads, little-endian float64, C order, back to back>

The header records the model kind, training config, vocabulary (tokens in
index order) and, per tensor, its name, shape, byte offset into the
payload section and byte length. Loading reproduces every tensor bit for
bit.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from tweetlens.errors import DataError
from tweetlens.neural.train import Classifier, TrainConfig, build_network
from tweetlens.neural.vocab import Vocabulary

MAGIC = b"TWEETLENS-CKPT"
FORMAT_VERSION = 1
DTYPE = "<f8"


def save_model(model: Classifier, path) -> Path:
    path = Path(path)
    tensors = []
    payload = []
    offset = 0
    for name in sorted(model.net.params):
        arr = np.ascontiguousarray(model.net.params[name], dtype=DTYPE)
        data = arr.tobytes(order="C")
        tensors.append({"name": name, "shape": list(arr.shape), "dtype": DTYPE,
                        "offset": offset, "nbytes": len(data)})
        payload.append(data)
        offset += len(data)
    header = {
        "format_version": FORMAT_VERSION,
        "kind": model.kind,
        "net": model.net.config(),
        "config": model.config.to_json(),
        "vocab": model.vocab.tokens,
        "tensors": tensors,
    }
    with open(path, "wb") as fh:
        fh.write(MAGIC + b" " + str(FORMAT_VERSION).encode() + b"\n")
        fh.write(json.dumps(header, sort_keys=True, ensure_ascii=True).encode("ascii") + b"\n")
        for data in payload:
            fh.write(data)
    return path


def load_model(path) -> Classifier:
    path = Path(path)
    if not path.is_file():
        raise DataError(f"{path}: no such checkpoint")
    with open(path, "rb") as fh:
        first = fh.readline().rstrip(b"\n")
        parts = first.split(b" ")
        if len(parts) != 2 or parts[0] != MAGIC:
            raise DataError(f"{path}: not a tweetlens checkpoint")
        if int(parts[1]) != FORMAT_VERSION:
            raise DataError(f"{path}: unsupported checkpoint version {parts[1].decode()}")
        header = json.loads(fh.readline())
        blob = fh.read()
    params = {}
    for t in header["tensors"]:
        chunk = blob[t["offset"]:t["offset"] + t["nbytes"]]
        if len(chunk) != t["nbytes"]:
            raise DataError(f"{path}: truncated tensor {t['name']}")
        params[t["name"]] = np.frombuffer(chunk, dtype=t["dtype"]).reshape(t["shape"]).copy()
    cfg = TrainConfig.from_json(header["config"])
    vocab = Vocabulary(header["vocab"])
    net = build_network(header["kind"], len(vocab), cfg, params=params)
    return Classifier(header["kind"], net, vocab, cfg)
