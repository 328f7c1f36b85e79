import hashlib
import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tweetlens.errors import DataError, NumericError
from tweetlens.neural import (
    AdamState,
    BowMlpModel,
    SeqLstmModel,
    TrainConfig,
    Vocabulary,
    adam_step,
    build_vocab,
    encode_sequence,
    evaluate,
    load_model,
    lstm_forward,
    majority_baseline,
    mlp_forward,
    save_model,
    split_indices,
    train,
    vectorize_bow,
)
from tweetlens.neural.lstm import lstm_layer
from tweetlens.neural.train import Classifier, confusion_matrix
from tweetlens.synth import make_separable_corpus

from gradcheck import check_model, tiny_lstm, tiny_mlp

FAST = TrainConfig(epochs=3, maxlen=10, embed_dim=6, units=8, filters=8, hidden=(16,),
                   batch_size=16)


def param_hash(net):
    h = hashlib.sha256()
    for name in sorted(net.params):
        h.update(name.encode())
        h.update(np.ascontiguousarray(net.params[name]).tobytes())
    return h.hexdigest()


class TestVocab:
    def test_frequency_rule(self):
        v = build_vocab(["a a b", "b c"], 4)
        assert v.tokens == ["<pad>", "<unk>", "a", "b"]

    def test_tie_is_lexicographic(self):
        assert build_vocab(["b a"], 4).tokens[2:] == ["a", "b"]

    def test_size_three(self):
        assert len(build_vocab(["x y y"], 3)) == 3

    def test_errors(self):
        with pytest.raises(DataError):
            build_vocab([], 10)
        with pytest.raises(ValueError):
            build_vocab(["a"], 2)

    def test_bow(self):
        v = build_vocab(["a a b", "b c"], 4)
        assert vectorize_bow("a a b", v).tolist() == [0, 0, 2, 1]
        assert vectorize_bow("", v).tolist() == [0, 0, 0, 0]
        assert vectorize_bow("z z", v).tolist() == [0, 2, 0, 0]

    def test_sequence(self):
        v = Vocabulary(["<pad>", "<unk>", "a", "b", "c", "d", "e", "f"])
        assert encode_sequence("a b", v, 4).tolist() == [0, 0, 2, 3]
        assert encode_sequence("a b c d e f", v, 4).tolist() == [4, 5, 6, 7]
        assert encode_sequence("", v, 3).tolist() == [0, 0, 0]


class TestMlp:
    def test_zero_weights_uniform(self):
        net = BowMlpModel(5, hidden=(4,))
        for k in net.params:
            net.params[k][...] = 0
        assert mlp_forward(np.ones(5), net) == pytest.approx([1 / 3] * 3, abs=1e-15)

    def test_softmax_sums(self):
        rng = np.random.default_rng(1)
        net = BowMlpModel(30, hidden=(8, 8), rng=rng)
        probs = net.forward(rng.poisson(2.0, size=(100, 30)) * rng.normal(0, 30, size=(100, 1)))
        assert np.all(probs > 0)
        assert np.abs(probs.sum(axis=1) - 1).max() < 1e-9

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            mlp_forward(np.ones(4), BowMlpModel(5))

    @pytest.mark.parametrize("hidden", [(6,), (5, 4)])
    def test_gradients(self, hidden):
        net, X, y = tiny_mlp(hidden=hidden)
        errs = check_model(net, X, y)
        assert max(errs.values()) < 1e-4, errs

    @given(st.permutations(["alpha", "beta", "beta", "gamma", "zzz", "alpha", "delta"]))
    @settings(max_examples=25)
    def test_bow_permutation_invariant(self, tokens):
        v = build_vocab(["alpha beta gamma delta"], 6)
        net = BowMlpModel(len(v), rng=np.random.default_rng(3))
        base = mlp_forward(vectorize_bow("alpha beta beta gamma zzz alpha delta", v), net)
        assert np.array_equal(mlp_forward(vectorize_bow(" ".join(tokens), v), net), base)


class TestLstm:
    def test_zero_weights_all_pad(self):
        net = SeqLstmModel(10, embed_dim=3, units=4, conv_width=2, filters=2)
        for k in net.params:
            net.params[k][...] = 0
        assert lstm_forward(np.zeros(5, dtype=int), net) == pytest.approx([1 / 3] * 3, abs=1e-15)

    def test_dropout_inactive_deterministic(self):
        net, seqs, _ = tiny_lstm()
        a = lstm_forward(seqs, net)
        assert np.array_equal(a, lstm_forward(seqs, net))
        assert not np.array_equal(a, lstm_forward(seqs, tiny_lstm(dropout=0.5)[0],
                                                  dropout_active=True))

    def test_softmax_sums(self):
        net, _, _ = tiny_lstm()
        seqs = np.random.default_rng(2).integers(0, 20, size=(50, 6))
        probs = net.forward(seqs)
        assert np.all(probs > 0) and np.abs(probs.sum(axis=1) - 1).max() < 1e-9

    def test_padding_contributes_nothing(self):
        net, _, _ = tiny_lstm()
        net.params["E"][0] = 5.0  # even a non-zero pad row must be ignored
        seq = np.array([[0, 0, 3, 4, 5, 6]])
        ref = net.forward(seq)
        net.params["E"][0] = -5.0
        assert np.array_equal(net.forward(seq), ref)

    def test_dimension_mismatch(self):
        net, _, _ = tiny_lstm()
        with pytest.raises(ValueError):
            net.forward(np.array([[1, 2, 30, 4, 5, 6]]))
        with pytest.raises(ValueError):
            net.forward(np.array([[1]]))

    def test_gradients(self):
        net, seqs, y = tiny_lstm()
        errs = check_model(net, seqs, y)
        assert max(errs.values()) < 1e-3, errs

    def test_gradients_with_dropout_mask(self):
        net, seqs, y = tiny_lstm(dropout=0.3)
        errs = check_model(net, seqs, y, rng_factory=lambda: np.random.default_rng(11))
        assert max(errs.values()) < 1e-3, errs

    def test_constant_error_carousel(self):
        U, D, T = 3, 2, 12
        rng = np.random.default_rng(4)
        b = np.zeros(4 * U)
        b[:U] = -1000.0  # input gate -> 0
        b[U:2 * U] = 1000.0  # forget gate -> 1
        c0 = rng.normal(size=(2, U))
        _, cache = lstm_layer(rng.normal(size=(2, T, D)), rng.normal(size=(D, 4 * U)),
                              rng.normal(size=(U, 4 * U)), b, c0=c0)
        for t in range(T + 1):
            assert np.array_equal(cache["c"][:, t], c0)


class TestAdam:
    def test_zero_gradient(self):
        p = {"w": np.array([1.0, -2.0])}
        _, st_ = adam_step(p, {"w": np.zeros(2)}, AdamState())
        assert p["w"].tolist() == [1.0, -2.0] and st_.t == 1

    def test_first_step_size(self):
        p = {"w": np.zeros(4)}
        adam_step(p, {"w": np.array([3.0, -1e-3, 50.0, -7.0])}, AdamState())
        assert np.abs(p["w"]) == pytest.approx([0.001] * 4, rel=1e-4)
        assert np.sign(p["w"]).tolist() == [-1, 1, -1, 1]

    @staticmethod
    def scalar_adam(w, lr, steps):
        """Plain-float reference for f(w) = w^2."""
        m = v = 0.0
        for t in range(1, steps + 1):
            g = 2 * w
            m = 0.9 * m + 0.1 * g
            v = 0.999 * v + 0.001 * g * g
            w -= lr * (m / (1 - 0.9 ** t)) / (math.sqrt(v / (1 - 0.999 ** t)) + 1e-8)
        return w

    @pytest.mark.parametrize("lr", [0.001, 0.1])
    def test_matches_scalar_reference(self, lr):
        p = {"w": np.array(1.0)}
        state = AdamState(lr=lr)
        for _ in range(100):
            adam_step(p, {"w": 2 * p["w"]}, state)
        assert float(p["w"]) == pytest.approx(self.scalar_adam(1.0, lr, 100), abs=1e-12)

    def test_quadratic_converges(self):
        # at lr 0.001 each step moves w by roughly lr, so 100 steps only reach ~0.9
        assert abs(self.scalar_adam(1.0, 0.1, 100)) < 0.1
        assert self.scalar_adam(1.0, 0.001, 100) == pytest.approx(0.9, abs=0.01)

    def test_errors(self):
        p = {"w": np.zeros(2)}
        with pytest.raises(ValueError):
            adam_step(p, {"w": np.zeros(3)}, AdamState())
        with pytest.raises(NumericError):
            adam_step(p, {"w": np.array([0.0, np.nan])}, AdamState())
        assert p["w"].tolist() == [0.0, 0.0]


class TestTrain:
    texts, labels = make_separable_corpus(90)

    def test_split(self):
        tr, va = split_indices(10, 0.8, 42)
        assert len(tr) == 8 and len(va) == 2
        assert sorted(np.concatenate([tr, va]).tolist()) == list(range(10))
        assert np.array_equal(split_indices(10, 0.8, 42)[0], tr)

    @pytest.mark.parametrize("kind", ["mlp", "lstm"])
    def test_deterministic(self, kind):
        a = train(kind, self.texts, self.labels, FAST)
        b = train(kind, self.texts, self.labels, FAST)
        assert a.history == b.history
        assert param_hash(a.model.net) == param_hash(b.model.net)

    def test_seed_matters(self):
        a = train("mlp", self.texts, self.labels, FAST)
        b = train("mlp", self.texts, self.labels, replace(FAST, seed=7))
        assert param_hash(a.model.net) != param_hash(b.model.net)

    def test_full_train_split(self):
        r = train("mlp", self.texts, self.labels, replace(FAST, train_frac=1.0))
        assert len(r.val_idx) == 0
        assert all(set(h) == {"epoch", "loss", "train_acc"} for h in r.history)

    def test_missing_class(self):
        labels = ["Positive" if i % 2 else "Negative" for i in range(len(self.texts))]
        with pytest.raises(DataError, match="Neutral"):
            train("mlp", self.texts, labels, FAST)

    def test_bad_label(self):
        with pytest.raises(DataError):
            train("mlp", ["a", "b"], ["Positive", "Happy"], FAST)

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    def test_non_finite_aborts(self):
        with pytest.raises(NumericError):
            train("mlp", self.texts, self.labels, replace(FAST, lr=float("inf")))

    def test_callback_receives_history(self):
        seen = []
        r = train("mlp", self.texts, self.labels, FAST, callback=seen.append)
        assert seen == r.history and len(seen) == FAST.epochs


class _Constant:
    """Stand-in network predicting one class for every input."""

    def __init__(self, cls):
        self.cls = cls

    def forward(self, X):
        out = np.zeros((len(X), 3))
        out[:, self.cls] = 1.0
        return out


class TestEvaluate:
    vocab = Vocabulary(["<pad>", "<unk>"])

    def clf(self, cls):
        return Classifier("mlp", _Constant(cls), self.vocab, TrainConfig())

    def test_constant_predictor(self):
        labels = ["Negative", "Neutral", "Positive"] * 4
        res = evaluate(self.clf(1), ["x"] * 12, labels)
        assert res.accuracy == pytest.approx(1 / 3)
        assert res.confusion[:, 1].tolist() == [4, 4, 4]

    def test_perfect(self):
        texts, labels = make_separable_corpus(60)
        r = train("mlp", texts, labels, TrainConfig(epochs=40, train_frac=1.0))
        res = evaluate(r.model, texts, labels)
        assert res.accuracy == 1.0
        assert np.array_equal(res.confusion, np.diag(np.diag(res.confusion)))

    def test_hand_count(self):
        true = [0, 0, 1, 2, 2, 2, 1, 0, 2, 1]
        pred = [0, 1, 1, 2, 0, 2, 1, 0, 2, 2]
        cm = confusion_matrix(true, pred)
        assert np.trace(cm) / 10 == 0.7
        assert cm.tolist() == [[2, 1, 0], [0, 2, 1], [1, 0, 3]]

    def test_empty(self):
        with pytest.raises(DataError):
            evaluate(self.clf(0), [], [])

    def test_majority(self):
        assert majority_baseline(["Positive", "Positive", "Negative"],
                                 ["Positive", "Neutral"]) == 0.5


class TestCheckpoint:
    @pytest.mark.parametrize("kind", ["mlp", "lstm"])
    def test_round_trip(self, tmp_path, kind):
        texts, labels = make_separable_corpus(60)
        model = train(kind, texts, labels, FAST).model
        path = save_model(model, tmp_path / "m.ckpt")
        back = load_model(path)
        assert back.kind == kind and back.vocab == model.vocab and back.config == model.config
        for name, arr in model.net.params.items():
            assert back.net.params[name].tobytes() == arr.tobytes()
        assert np.array_equal(back.predict_proba(texts), model.predict_proba(texts))
        assert save_model(back, tmp_path / "again.ckpt").read_bytes() == path.read_bytes()

    def test_rejects_foreign_file(self, tmp_path):
        (tmp_path / "x.ckpt").write_bytes(b"hello\n{}\n")
        with pytest.raises(DataError):
            load_model(tmp_path / "x.ckpt")
        with pytest.raises(DataError):
            load_model(tmp_path / "missing.ckpt")

    def test_truncated(self, tmp_path):
        texts, labels = make_separable_corpus(30)
        path = save_model(train("mlp", texts, labels, FAST).model, tmp_path / "m.ckpt")
        path.write_bytes(path.read_bytes()[:-8])
        with pytest.raises(DataError, match="truncated"):
            load_model(path)
