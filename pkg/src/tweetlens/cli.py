"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from tweetlens import analytics as an
from tweetlens.corpus import (
    DEFAULT_DATE_BOUNDS,
    ingest_cases,
    ingest_tweets,
    parse_date,
    write_tweets,
)
from tweetlens.emotion import load_emotion_lexicon, score_corpus
from tweetlens.errors import DataError, NumericError
from tweetlens.geo import build_index, resolve_corpus
from tweetlens.neural import (
    TrainConfig,
    evaluate,
    load_model,
    save_model,
    split_indices,
    train,
)
from tweetlens.report import DEFAULT_COUNTRIES, write_report
from tweetlens.sentiment import DEFAULT_THRESHOLDS, label_corpus, load_lexicon

DATA_DIR = Path(__file__).parent / "data"
DEFAULT_LEXICON = DATA_DIR / "vader_lexicon.txt"
DEFAULT_EMOTION_LEXICON = DATA_DIR / "emotion_lexicon.tsv"
DEFAULT_CITIES = DATA_DIR / "world_cities.csv"
SAMPLE_TWEETS = DATA_DIR / "sample_tweets.jsonl"
SAMPLE_CASES = DATA_DIR / "sample_cases.csv"

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3

logger = logging.getLogger("tweetlens")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _hidden(value: str):
    try:
        sizes = tuple(int(v) for v in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated ints, got {value!r}")
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError("hidden sizes must be positive")
    return sizes


def _date(value: str):
    try:
        return parse_date(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tweetlens", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def thresholds(p):
        p.add_argument("--pos-threshold", type=float, default=DEFAULT_THRESHOLDS[0])
        p.add_argument("--neg-threshold", type=float, default=DEFAULT_THRESHOLDS[1])

    def fmt(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("ingest", help="validate a raw tweet file and write corpus JSONL")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("jsonl", "csv"), default=None,
                   help="input format (default: from the file extension)")
    p.add_argument("--strict", action="store_true", help="abort on the first malformed row")
    p.add_argument("--date-min", type=_date, default=DEFAULT_DATE_BOUNDS[0])
    p.add_argument("--date-max", type=_date, default=DEFAULT_DATE_BOUNDS[1])

    p = sub.add_parser("label", help="score sentiment and assign polarity")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--lexicon", default=str(DEFAULT_LEXICON))
    thresholds(p)

    p = sub.add_parser("resolve", help="map user locations to countries")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--cities", default=str(DEFAULT_CITIES))
    p.add_argument("--report", default=None, help="resolution report JSON path")

    p = sub.add_parser("emotions", help="score emotion profiles")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--emotion-lexicon", default=str(DEFAULT_EMOTION_LEXICON))
    p.add_argument("--include-valence", action="store_true",
                   help="count positive/negative associations in the denominator")

    p = sub.add_parser("aggregate", help="sentiment or emotion time series")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--kind", choices=("sentiment", "emotion"), default="sentiment")
    p.add_argument("--granularity", choices=("day", "month"), default="month")
    p.add_argument("--country", default=None)
    p.add_argument("--denominator", choices=("all", "pos_neg_only"), default="all")
    fmt(p)

    p = sub.add_parser("cases", help="confirmed-cases series from a cases CSV")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--country", default=None)
    p.add_argument("--granularity", choices=("day", "month"), default="day")
    p.add_argument("--mode", choices=("cumulative", "daily_new"), default="cumulative")
    fmt(p)

    p = sub.add_parser("extremes", help="countries ranked by sentiment share or emotion score")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--metric", choices=an.EXTREME_METRICS, default="pos_share")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--min-tweets", type=int, default=30)
    fmt(p)

    p = sub.add_parser("train", help="train a sentiment classifier on a labeled corpus")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True, help="checkpoint path")
    p.add_argument("--model", choices=("mlp", "lstm"), default="mlp")
    p.add_argument("--config", default=None, help="JSON file of training settings")
    p.add_argument("--epochs", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--hidden", type=_hidden)
    p.add_argument("--maxlen", type=int)
    p.add_argument("--vocab", type=int)
    p.add_argument("--lr", type=float)
    p.add_argument("--batch-size", type=int)
    p.add_argument("--train-frac", type=float)
    p.add_argument("--embed-dim", type=int)
    p.add_argument("--units", type=int)
    p.add_argument("--filters", type=int)
    p.add_argument("--conv-width", type=int)
    p.add_argument("--dropout", type=float)
    p.add_argument("--history", default=None, help="history JSON path (default: <out>.history.json)")

    p = sub.add_parser("evaluate", help="accuracy and confusion matrix of a checkpoint")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--model", required=True, help="checkpoint path")
    p.add_argument("--out", required=True, help="metrics JSON path")
    p.add_argument("--holdout", action="store_true",
                   help="evaluate only the validation split used in training")

    p = sub.add_parser("report", help="write every plot-ready table for a processed corpus")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--cases", default=None)
    p.add_argument("--countries", default=",".join(DEFAULT_COUNTRIES))
    p.add_argument("--denominator", choices=("all", "pos_neg_only"), default="all")
    p.add_argument("--min-tweets", type=int, default=30)
    p.add_argument("--normalization", choices=("share", "minmax"), default="share")
    fmt(p)

    p = sub.add_parser("pipeline", help="ingest -> label -> resolve -> emotions -> report")
    p.add_argument("--in", dest="inp", default=None,
                   help="raw tweets (default: bundled 500-tweet sample)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--cases", default=None,
                   help="cases CSV (default: bundled sample when --in is omitted)")
    p.add_argument("--lexicon", default=str(DEFAULT_LEXICON))
    p.add_argument("--emotion-lexicon", default=str(DEFAULT_EMOTION_LEXICON))
    p.add_argument("--cities", default=str(DEFAULT_CITIES))
    p.add_argument("--countries", default=",".join(DEFAULT_COUNTRIES))
    p.add_argument("--denominator", choices=("all", "pos_neg_only"), default="all")
    p.add_argument("--min-tweets", type=int, default=30)
    p.add_argument("--normalization", choices=("share", "minmax"), default="share")
    thresholds(p)
    fmt(p)
    return parser


def _require_files(*paths):
    for path in paths:
        if path is not None and not Path(path).is_file():
            raise DataError(f"{path}: no such file")


def _load_corpus(path):
    records, report = ingest_tweets(path, "jsonl", strict=True, date_bounds=None)
    return records


def _thresholds(args):
    if not args.neg_threshold < args.pos_threshold:
        raise UsageError("--neg-threshold must be below --pos-threshold")
    return (args.pos_threshold, args.neg_threshold)


def _counts_line(counts: dict) -> str:
    return ", ".join(f"{k} {v}" for k, v in counts.items())


# -- subcommands ----------------------------------------------------------------

def cmd_ingest(args):
    _require_files(args.inp)
    records, rep = ingest_tweets(args.inp, args.format, strict=args.strict,
                                 date_bounds=(args.date_min, args.date_max))
    write_tweets(records, args.out)
    print(f"ingested {rep.kept} records ({rep.dropped_duplicates} duplicate, "
          f"{len(rep.skipped)} malformed dropped) -> {args.out}")


def cmd_label(args):
    th = _thresholds(args)
    _require_files(args.inp, args.lexicon)
    lex = load_lexicon(args.lexicon)
    records, counts = label_corpus(_load_corpus(args.inp), lex, th)
    write_tweets(records, args.out)
    print(f"labeled {len(records)} records: {_counts_line(counts)} -> {args.out}")


def cmd_resolve(args):
    _require_files(args.inp, args.cities)
    index = build_index(args.cities)
    records, rep = resolve_corpus(_load_corpus(args.inp), index)
    write_tweets(records, args.out)
    if args.report:
        Path(args.report).write_text(json.dumps(rep.to_json(), indent=1) + "\n", encoding="utf-8")
    print(f"resolved {rep.resolved}/{rep.total} records ({rep.resolved_pct:.1f}%), "
          f"{rep.ambiguous} ambiguous -> {args.out}")


def cmd_emotions(args):
    _require_files(args.inp, args.emotion_lexicon)
    lex = load_emotion_lexicon(args.emotion_lexicon)
    records, counts = score_corpus(_load_corpus(args.inp), lex, args.include_valence)
    write_tweets(records, args.out)
    print(f"scored {len(records)} records; predominant: "
          f"{_counts_line(dict(sorted(counts.items())))} -> {args.out}")


def cmd_aggregate(args):
    _require_files(args.inp)
    records = _load_corpus(args.inp)
    if args.kind == "sentiment":
        points = an.aggregate_sentiment(records, args.granularity, args.country, args.denominator)
    else:
        points = an.aggregate_emotion(records, args.granularity, args.country)
    an.export_report(points, args.out, args.format)
    print(f"{len(points)} {args.granularity} periods of {args.kind} -> {args.out}")


def cmd_cases(args):
    _require_files(args.inp)
    table, rejected = ingest_cases(args.inp)
    points = an.cases_series(table, args.country, args.granularity, args.mode)
    an.export_report(points, args.out, args.format)
    print(f"{len(table)} case rows ({len(rejected)} rejected); "
          f"{len(points)} {args.granularity} periods -> {args.out}")


def cmd_extremes(args):
    _require_files(args.inp)
    ranked = an.country_extremes(_load_corpus(args.inp), args.metric, args.k, args.min_tweets)
    rows = [{"metric": args.metric, "rank": i, "country": c, "value": v, "n_tweets": n}
            for i, (c, v, n) in enumerate(ranked, start=1)]
    an.export_table(rows, ("metric", "rank", "country", "value", "n_tweets"), args.out, args.format)
    print(f"top {len(rows)} countries by {args.metric} (min {args.min_tweets} tweets) -> {args.out}")
    for r in rows:
        print(f"  {r['rank']:>2}. {r['country']}: {r['value']:.3f} ({r['n_tweets']} tweets)")


_TRAIN_FLAGS = {
    "epochs": "epochs", "seed": "seed", "hidden": "hidden", "maxlen": "maxlen",
    "vocab": "vocab_size", "lr": "lr", "batch_size": "batch_size",
    "train_frac": "train_frac", "embed_dim": "embed_dim", "units": "units",
    "filters": "filters", "conv_width": "conv_width", "dropout": "dropout",
}


def _train_config(args):
    settings = {}
    if args.config:
        _require_files(args.config)
        try:
            settings = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise DataError(f"{args.config}: {exc}") from None
    for flag, field in _TRAIN_FLAGS.items():
        value = getattr(args, flag)
        if value is not None:
            settings[field] = value
    return TrainConfig.from_json(settings)


def _texts_labels(records):
    missing = [r.id for r in records if r.polarity is None]
    if missing:
        raise DataError(f"{len(missing)} record(s) lack a polarity label (e.g. {missing[0]!r})")
    return [r.text for r in records], [r.polarity for r in records]


def cmd_train(args):
    _require_files(args.inp)
    cfg = _train_config(args)
    texts, labels = _texts_labels(_load_corpus(args.inp))
    result = train(args.model, texts, labels, cfg)
    save_model(result.model, args.out)
    history_path = args.history or f"{args.out}.history.json"
    Path(history_path).write_text(
        json.dumps({"model": args.model, "config": cfg.to_json(), "history": result.history},
                   indent=1) + "\n", encoding="utf-8")
    last = result.history[-1] if result.history else {}
    val = f", val_acc {last['val_acc']:.4f}" if "val_acc" in last else ""
    print(f"trained {args.model} on {len(result.train_idx)} records for {cfg.epochs} epochs: "
          f"train_acc {last.get('train_acc', float('nan')):.4f}{val} -> {args.out}")


def cmd_evaluate(args):
    _require_files(args.inp, args.model)
    model = load_model(args.model)
    texts, labels = _texts_labels(_load_corpus(args.inp))
    if args.holdout:
        _, val_idx = split_indices(len(texts), model.config.train_frac, model.config.seed)
        texts = [texts[i] for i in val_idx]
        labels = [labels[i] for i in val_idx]
    res = evaluate(model, texts, labels)
    Path(args.out).write_text(json.dumps(res.to_json(), indent=1) + "\n", encoding="utf-8")
    print(f"accuracy {res.accuracy:.4f} on {res.n} records -> {args.out}")
    print("confusion (rows true, cols predicted: Negative, Neutral, Positive):")
    for row in res.confusion:
        print("  " + " ".join(f"{v:>6d}" for v in row))


def _countries(value: str):
    return tuple(c.strip() for c in value.split(",") if c.strip())


def _report(records, args, cases_path):
    cases = None
    if cases_path:
        _require_files(cases_path)
        cases, _ = ingest_cases(cases_path)
    manifest = write_report(records, args.out, cases=cases, countries=_countries(args.countries),
                            fmt=args.format, denominator=args.denominator,
                            min_tweets=args.min_tweets, normalization=args.normalization)
    print(f"report: {len(manifest)} tables -> {args.out}")
    for name, digest in manifest.items():
        print(f"  {name}  {digest[:16]}")


def cmd_report(args):
    _require_files(args.inp)
    _report(_load_corpus(args.inp), args, args.cases)


def cmd_pipeline(args):
    th = _thresholds(args)
    inp = args.inp or SAMPLE_TWEETS
    cases = args.cases or (SAMPLE_CASES if args.inp is None else None)
    _require_files(inp, args.lexicon, args.emotion_lexicon, args.cities)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    records, rep = ingest_tweets(inp)
    print(f"ingest: {rep.kept} records ({rep.dropped} dropped)")
    records, counts = label_corpus(records, load_lexicon(args.lexicon), th)
    print(f"label: {_counts_line(counts)}")
    records, georep = resolve_corpus(records, build_index(args.cities))
    (out / "resolution.json").write_text(json.dumps(georep.to_json(), indent=1) + "\n",
                                         encoding="utf-8")
    print(f"resolve: {georep.resolved}/{georep.total} ({georep.resolved_pct:.1f}%), "
          f"{georep.ambiguous} ambiguous")
    records, emo = score_corpus(records, load_emotion_lexicon(args.emotion_lexicon))
    print(f"emotions: fear {emo.get('fear', 0)}, trust {emo.get('trust', 0)}, "
          f"none {emo.get('none', 0)}")
    write_tweets(records, out / "corpus.jsonl")
    _report(records, args, cases)


COMMANDS = {
    "ingest": cmd_ingest, "label": cmd_label, "resolve": cmd_resolve,
    "emotions": cmd_emotions, "aggregate": cmd_aggregate, "cases": cmd_cases,
    "extremes": cmd_extremes, "train": cmd_train, "evaluate": cmd_evaluate,
    "report": cmd_report, "pipeline": cmd_pipeline,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    logging.captureWarnings(True)
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"tweetlens: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"tweetlens: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DataError, OSError, ValueError) as exc:
        print(f"tweetlens: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
