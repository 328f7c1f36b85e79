from tweetlens.synth import make_cases, make_separable_corpus, make_tweets, write_bundle

from conftest import PKG_DATA


def test_bundle_regenerates_exactly(tmp_path):
    write_bundle(tmp_path)
    for name in ("sample_tweets.jsonl", "sample_cases.csv"):
        assert (tmp_path / name).read_bytes() == (PKG_DATA / name).read_bytes(), name


def test_seeded():
    assert make_tweets(20, seed=3) == make_tweets(20, seed=3)
    assert make_tweets(20, seed=3) != make_tweets(20, seed=4)
    assert make_cases() == make_cases()


def test_separable_vocabularies_disjoint():
    texts, labels = make_separable_corpus(90)
    vocab = {}
    for text, lab in zip(texts, labels):
        for tok in text.split():
            vocab.setdefault(tok, set()).add(lab)
    assert all(len(labs) == 1 for labs in vocab.values())
    assert sorted(set(labels)) == ["Negative", "Neutral", "Positive"]
