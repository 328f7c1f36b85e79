"""Sequence classifier: embedding -> LSTM -> dropout -> Conv1D -> global max-pool -> softmax.

Gate layout in the fused LSTM weights is (input, forget, cell candidate,
output), each block ``units`` wide. Gradients are computed by explicit
backpropagation through time.
"""

from __future__ import annotations

import numpy as np

from tweetlens.neural.functional import cross_entropy, glorot, sigmoid, softmax
from tweetlens.neural.vocab import PAD_INDEX

N_CLASSES = 3


def lstm_layer(X, Wx, Wh, b, h0=None, c0=None):
    """Run the recurrence over ``X`` (N, T, D).

    Returns hidden states (N, T, U) and a cache holding gate activations
    and cell states (``cache["c"]`` has T+1 entries, the first being c0).
    """
    N, T, _ = X.shape
    U = Wh.shape[0]
    h = np.zeros((N, U)) if h0 is None else np.array(h0, dtype=np.float64)
    c = np.zeros((N, U)) if c0 is None else np.array(c0, dtype=np.float64)
    hs = np.empty((N, T, U))
    gates = np.empty((N, T, 4 * U))
    cs = np.empty((N, T + 1, U))
    hprev = np.empty((N, T, U))
    cs[:, 0] = c
    for t in range(T):
        hprev[:, t] = h
        z = X[:, t] @ Wx + h @ Wh + b
        i = sigmoid(z[:, :U])
        f = sigmoid(z[:, U:2 * U])
        g = np.tanh(z[:, 2 * U:3 * U])
        o = sigmoid(z[:, 3 * U:])
        c = f * c + i * g
        h = o * np.tanh(c)
        gates[:, t] = np.concatenate([i, f, g, o], axis=1)
        cs[:, t + 1] = c
        hs[:, t] = h
    return hs, {"gates": gates, "c": cs, "hprev": hprev}


class SeqLstmModel:
    kind = "lstm"

    def __init__(self, vocab_size: int, embed_dim: int = 32, units: int = 64,
                 conv_width: int = 3, filters: int = 64, dropout: float = 0.5,
                 n_classes: int = N_CLASSES, rng=None, params=None):
        self.vocab_size = int(vocab_size)
        self.embed_dim = int(embed_dim)
        self.units = int(units)
        self.conv_width = int(conv_width)
        self.filters = int(filters)
        self.dropout = float(dropout)
        self.n_classes = n_classes
        if not 0.0 <= self.dropout < 1.0:
            raise ValueError("dropout must be in [0, 1)")
        if params is not None:
            self.params = {k: np.asarray(v, dtype=np.float64) for k, v in params.items()}
            for name, shape in self.shapes().items():
                if self.params[name].shape != shape:
                    raise ValueError(f"{name} has shape {self.params[name].shape}, expected {shape}")
            return
        rng = rng if rng is not None else np.random.default_rng(0)
        V, D, U, K, F, C = (self.vocab_size, self.embed_dim, self.units,
                            self.conv_width, self.filters, n_classes)
        E = rng.uniform(-0.05, 0.05, size=(V, D))
        E[PAD_INDEX] = 0.0
        b = np.zeros(4 * U)
        b[U:2 * U] = 1.0  # forget-gate bias
        self.params = {
            "E": E,
            "lstm_Wx": glorot(rng, D, 4 * U),
            "lstm_Wh": _orthogonal(rng, U, 4 * U),
            "lstm_b": b,
            "conv_W": glorot(rng, K * U, F, shape=(K, U, F)),
            "conv_b": np.zeros(F),
            "dense_W": glorot(rng, F, C),
            "dense_b": np.zeros(C),
        }

    def shapes(self) -> dict:
        V, D, U, K, F, C = (self.vocab_size, self.embed_dim, self.units,
                            self.conv_width, self.filters, self.n_classes)
        return {"E": (V, D), "lstm_Wx": (D, 4 * U), "lstm_Wh": (U, 4 * U),
                "lstm_b": (4 * U,), "conv_W": (K, U, F), "conv_b": (F,),
                "dense_W": (F, C), "dense_b": (C,)}

    def config(self) -> dict:
        return {"vocab_size": self.vocab_size, "embed_dim": self.embed_dim,
                "units": self.units, "conv_width": self.conv_width,
                "filters": self.filters, "dropout": self.dropout,
                "n_classes": self.n_classes}

    def _forward(self, seqs, dropout_rng=None):
        p = self.params
        seqs = np.asarray(seqs)
        if seqs.ndim != 2:
            raise ValueError(f"expected (batch, maxlen) indices, got shape {seqs.shape}")
        N, T = seqs.shape
        if T < self.conv_width:
            raise ValueError(f"maxlen {T} shorter than conv width {self.conv_width}")
        if seqs.size and (seqs.min() < 0 or seqs.max() >= self.vocab_size):
            raise ValueError("token index out of vocabulary range")
        mask = (seqs != PAD_INDEX)[..., None]
        X = p["E"][seqs] * mask
        H, lcache = lstm_layer(X, p["lstm_Wx"], p["lstm_Wh"], p["lstm_b"])
        if dropout_rng is not None and self.dropout > 0:
            keep = 1.0 - self.dropout
            drop = (dropout_rng.random(H.shape) < keep) / keep
            Hd = H * drop
        else:
            drop = None
            Hd = H
        K = self.conv_width
        Tc = T - K + 1
        conv = np.broadcast_to(p["conv_b"], (N, Tc, self.filters)).copy()
        for k in range(K):
            conv += Hd[:, k:k + Tc] @ p["conv_W"][k]
        arg = conv.argmax(axis=1)  # (N, F)
        pooled = np.take_along_axis(conv, arg[:, None, :], axis=1)[:, 0]
        logits = pooled @ p["dense_W"] + p["dense_b"]
        cache = dict(seqs=seqs, mask=mask, X=X, H=H, Hd=Hd, drop=drop,
                     lcache=lcache, arg=arg, pooled=pooled, Tc=Tc)
        return logits, cache

    def forward(self, seqs, dropout_active: bool = False, rng=None):
        """Class probabilities. Dropout applies only when ``dropout_active``."""
        seqs = np.asarray(seqs)
        single = seqs.ndim == 1
        if single:
            seqs = seqs[None, :]
        if dropout_active and rng is None:
            rng = np.random.default_rng(0)
        logits, _ = self._forward(seqs, rng if dropout_active else None)
        probs = softmax(logits)
        return probs[0] if single else probs

    def logits(self, seqs):
        return self._forward(seqs)[0]

    def loss_and_grads(self, seqs, y, rng=None):
        p = self.params
        logits, cache = self._forward(seqs, rng)
        loss, dlogits = cross_entropy(logits, np.asarray(y))
        g = {}
        g["dense_W"] = cache["pooled"].T @ dlogits
        g["dense_b"] = dlogits.sum(axis=0)
        dpooled = dlogits @ p["dense_W"].T  # (N, F)

        N, T = cache["seqs"].shape
        Tc, K = cache["Tc"], self.conv_width
        dconv = np.zeros((N, Tc, self.filters))
        np.put_along_axis(dconv, cache["arg"][:, None, :], dpooled[:, None, :], axis=1)
        g["conv_b"] = dconv.sum(axis=(0, 1))
        g["conv_W"] = np.empty_like(p["conv_W"])
        dHd = np.zeros_like(cache["Hd"])
        for k in range(K):
            win = cache["Hd"][:, k:k + Tc]
            g["conv_W"][k] = np.einsum("ntu,ntf->uf", win, dconv)
            dHd[:, k:k + Tc] += dconv @ p["conv_W"][k].T
        dH = dHd if cache["drop"] is None else dHd * cache["drop"]

        dX, g["lstm_Wx"], g["lstm_Wh"], g["lstm_b"] = _lstm_backward(
            dH, cache["X"], cache["lcache"], p["lstm_Wx"], p["lstm_Wh"])
        dX *= cache["mask"]
        dE = np.zeros_like(p["E"])
        np.add.at(dE, cache["seqs"], dX)
        g["E"] = dE
        return loss, g


def _lstm_backward(dH, X, cache, Wx, Wh):
    N, T, U = dH.shape
    gates, cs, hprev = cache["gates"], cache["c"], cache["hprev"]
    dX = np.empty_like(X)
    dWx = np.zeros_like(Wx)
    dWh = np.zeros_like(Wh)
    db = np.zeros(Wx.shape[1])
    dh_next = np.zeros((N, U))
    dc_next = np.zeros((N, U))
    for t in range(T - 1, -1, -1):
        i = gates[:, t, :U]
        f = gates[:, t, U:2 * U]
        gg = gates[:, t, 2 * U:3 * U]
        o = gates[:, t, 3 * U:]
        c, c_prev = cs[:, t + 1], cs[:, t]
        tc = np.tanh(c)
        dh = dH[:, t] + dh_next
        dc = dh * o * (1.0 - tc * tc) + dc_next
        dz = np.concatenate([
            dc * gg * i * (1.0 - i),
            dc * c_prev * f * (1.0 - f),
            dc * i * (1.0 - gg * gg),
            dh * tc * o * (1.0 - o),
        ], axis=1)
        dc_next = dc * f
        dWx += X[:, t].T @ dz
        dWh += hprev[:, t].T @ dz
        db += dz.sum(axis=0)
        dX[:, t] = dz @ Wx.T
        dh_next = dz @ Wh.T
    return dX, dWx, dWh, db


def _orthogonal(rng, rows, cols):
    a = rng.standard_normal((max(rows, cols), min(rows, cols)))
    q, r = np.linalg.qr(a)
    q *= np.sign(np.diag(r))
    return q if rows >= cols else q.T


def lstm_forward(seq, model: SeqLstmModel, dropout_active: bool = False, rng=None):
    return model.forward(seq, dropout_active=dropout_active, rng=rng)
