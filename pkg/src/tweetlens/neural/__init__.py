from tweetlens.neural.checkpoint import load_model, save_model
from tweetlens.neural.lstm import SeqLstmModel, lstm_forward
from tweetlens.neural.mlp import BowMlpModel, mlp_forward
from tweetlens.neural.optim import AdamState, adam_step
from tweetlens.neural.train import (
    LABELS,
    Classifier,
    EvalResult,
    TrainConfig,
    evaluate,
    majority_baseline,
    split_indices,
    train,
)
from tweetlens.neural.vocab import Vocabulary, build_vocab, encode_sequence, vectorize_bow

__all__ = [
    "AdamState", "BowMlpModel", "Classifier", "EvalResult", "LABELS", "SeqLstmModel",
    "TrainConfig", "Vocabulary", "adam_step", "build_vocab", "encode_sequence", "evaluate",
    "load_model", "lstm_forward", "majority_baseline", "mlp_forward", "save_model",
    "split_indices", "train", "vectorize_bow",
]
