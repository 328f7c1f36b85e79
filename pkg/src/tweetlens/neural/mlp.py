"""Bag-of-words multilayer perceptron: ReLU hidden layer(s), softmax output."""

from __future__ import annotations

import numpy as np

from tweetlens.neural.functional import cross_entropy, glorot, softmax

N_CLASSES = 3


class BowMlpModel:
    kind = "mlp"

    def __init__(self, vocab_size: int, hidden=(64,), n_classes: int = N_CLASSES,
                 rng=None, params=None):
        if isinstance(hidden, int):
            hidden = (hidden,)
        self.vocab_size = int(vocab_size)
        self.hidden = tuple(int(h) for h in hidden)
        self.n_classes = n_classes
        self.sizes = (self.vocab_size,) + self.hidden + (n_classes,)
        if params is not None:
            self.params = {k: np.asarray(v, dtype=np.float64) for k, v in params.items()}
            self._check_shapes()
            return
        rng = rng if rng is not None else np.random.default_rng(0)
        self.params = {}
        for layer, (fan_in, fan_out) in enumerate(zip(self.sizes, self.sizes[1:]), start=1):
            self.params[f"W{layer}"] = glorot(rng, fan_in, fan_out)
            self.params[f"b{layer}"] = np.zeros(fan_out)

    @property
    def n_layers(self) -> int:
        return len(self.sizes) - 1

    def config(self) -> dict:
        return {"vocab_size": self.vocab_size, "hidden": list(self.hidden),
                "n_classes": self.n_classes}

    def _check_shapes(self):
        for layer, (fan_in, fan_out) in enumerate(zip(self.sizes, self.sizes[1:]), start=1):
            if self.params[f"W{layer}"].shape != (fan_in, fan_out):
                raise ValueError(f"W{layer} has shape {self.params[f'W{layer}'].shape}")
            if self.params[f"b{layer}"].shape != (fan_out,):
                raise ValueError(f"b{layer} has shape {self.params[f'b{layer}'].shape}")

    def _forward(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.vocab_size:
            raise ValueError(f"expected input width {self.vocab_size}, got shape {X.shape}")
        acts = [X]
        pre = []
        a = X
        for layer in range(1, self.n_layers + 1):
            z = a @ self.params[f"W{layer}"] + self.params[f"b{layer}"]
            pre.append(z)
            a = np.maximum(z, 0.0) if layer < self.n_layers else z
            acts.append(a)
        return acts, pre

    def logits(self, X):
        return self._forward(X)[0][-1]

    def forward(self, X):
        """Class probabilities; a 1-D input returns a single vector."""
        X = np.asarray(X, dtype=np.float64)
        single = X.ndim == 1
        probs = softmax(self.logits(X[None, :] if single else X))
        return probs[0] if single else probs

    def loss_and_grads(self, X, y, **_):
        acts, pre = self._forward(X)
        loss, delta = cross_entropy(acts[-1], np.asarray(y))
        grads = {}
        for layer in range(self.n_layers, 0, -1):
            grads[f"W{layer}"] = acts[layer - 1].T @ delta
            grads[f"b{layer}"] = delta.sum(axis=0)
            if layer > 1:
                delta = (delta @ self.params[f"W{layer}"].T) * (pre[layer - 2] > 0)
        return loss, grads


def mlp_forward(x, model: BowMlpModel):
    return model.forward(x)
