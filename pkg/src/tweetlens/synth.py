"""Seeded synthetic corpora.

Used for the bundled sample data and for the classifier tests. Everything
here is a pure function of its seed (``random.Random`` only), so the
bundled files can be regenerated byte for byte with ``write_bundle``.
"""

from __future__ import annotations

import csv
import datetime as dt
import json
import math
import random
from pathlib import Path

SUBJECTS = [
    "the lockdown", "this virus", "the government", "my boss", "online school",
    "working from home", "the hospital", "our teacher", "the news", "quarantine life",
    "the vaccine trial", "my family", "the economy", "the new rules", "zoom class",
]
VERBS = ["is", "was", "feels", "seems", "has been", "looks"]
POSITIVE = [
    "good", "great", "amazing", "helpful", "nice", "wonderful", "safe", "fun", "calm",
    "hopeful", "excellent", "lovely", "brilliant", "fantastic", "happy", "grateful",
    "strong", "proud", "relieved", "inspiring",
]
NEGATIVE = [
    "bad", "terrible", "awful", "scary", "horrible", "boring", "stressful", "sad",
    "dangerous", "annoying", "painful", "disgusting", "worse", "tragic", "hopeless",
    "frightening", "angry", "lonely", "exhausting", "chaotic",
]
NEUTRAL = [
    "different", "long", "online", "remote", "new", "daily", "strange", "quiet",
    "normal", "busy", "here", "ongoing",
]
BOOSTERS = ["very", "really", "extremely", "so", "totally", "slightly", "kinda", "quite"]
NEGATORS = ["not", "never", "isn't", "hardly"]
EXTRAS = [
    "#covid19", "#coronavirus", "#stayhome", "#wfh", "#onlinelearning", "@who",
    "@cdcgov", "https://t.co/abc123", "lol", "smh", ":)", ":(", "pandemic",
    "doctor", "nurse", "panic", "hope", "death", "mask", "teacher", "crisis",
    "quarantine", "family", "trust", "fear", "government", "vaccine",
]
TAILS = ["", ".", "!", "!!", "?", "...", "!!!"]

# (raw user_location, weight)
LOCATIONS = [
    ("Mumbai, India", 6), ("New Delhi, India", 5), ("India", 5), ("Bengaluru", 3),
    ("New York, USA", 6), ("Los Angeles, CA", 4), ("Texas, United States", 4), ("USA", 5),
    ("Chicago", 3), ("São Paulo, Brazil", 5), ("Rio de Janeiro", 3), ("Brasil", 1),
    ("London, England", 4), ("Manchester, United Kingdom", 3), ("London", 3),
    ("Toronto, Canada", 3), ("Sydney, Australia", 3), ("Melbourne", 2),
    ("Lagos, Nigeria", 2), ("Johannesburg", 2), ("Karachi, Pakistan", 3),
    ("Dhaka, Bangladesh", 3), ("Bangkok", 2), ("Hanoi, Vietnam", 2), ("Warsaw, Poland", 2),
    ("Muscat", 1), ("Almaty, Kazakhstan", 1), ("Istanbul, Turkey", 2), ("Bamako, Mali", 1),
    ("Springfield", 2), ("Hyderabad", 2), ("Earth", 2), ("somewhere over the rainbow", 1),
    ("", 8), ("Worldwide", 1), ("Paris, France", 2), ("Berlin", 2),
]


def _clause(rng: random.Random, polarity: str) -> str:
    words = [rng.choice(SUBJECTS), rng.choice(VERBS)]
    pool = {"pos": POSITIVE, "neg": NEGATIVE, "neu": NEUTRAL}[polarity]
    if polarity != "neu" and rng.random() < 0.2:
        words.append(rng.choice(NEGATORS))
    if rng.random() < 0.35:
        words.append(rng.choice(BOOSTERS))
    word = rng.choice(pool)
    if rng.random() < 0.08:
        word = word.upper()
    words.append(word)
    return " ".join(words)


def make_text(rng: random.Random) -> str:
    n_clauses = rng.choice([1, 1, 2, 2, 3])
    clauses = [_clause(rng, rng.choice(["pos", "neg", "neu", "pos", "neg"])) for _ in range(n_clauses)]
    text = clauses[0]
    for c in clauses[1:]:
        text += rng.choice([" and ", ", ", " but ", ". "]) + c
    text += rng.choice(TAILS)
    for _ in range(rng.choice([0, 1, 1, 2])):
        text += " " + rng.choice(EXTRAS)
    return text[0].upper() + text[1:]


def make_tweets(n: int, seed: int = 2020, start=dt.date(2020, 1, 1), end=dt.date(2020, 6, 29)):
    """``n`` tweet dicts in the tweets.jsonl schema, ids ``t00001``..."""
    rng = random.Random(seed)
    span = (end - start).days
    locs, weights = zip(*LOCATIONS)
    out = []
    for i in range(n):
        date = start + dt.timedelta(days=rng.randint(0, span))
        loc = rng.choices(locs, weights)[0]
        out.append({
            "id": f"t{i + 1:05d}",
            "text": make_text(rng),
            "date": date.isoformat(),
            "user_location": loc or None,
        })
    out.sort(key=lambda r: (r["date"], r["id"]))
    return out


def make_separable_corpus(n: int, seed: int = 7, vocab_per_class: int = 12):
    """Texts whose classes use disjoint token sets; returns (texts, labels)."""
    rng = random.Random(seed)
    labels = ("Negative", "Neutral", "Positive")
    words = {lab: [f"{lab[:3].lower()}tok{k}" for k in range(vocab_per_class)] for lab in labels}
    texts, ys = [], []
    for i in range(n):
        lab = labels[i % 3]
        texts.append(" ".join(rng.choice(words[lab]) for _ in range(rng.randint(3, 8))))
        ys.append(lab)
    order = list(range(n))
    rng.shuffle(order)
    return [texts[i] for i in order], [ys[i] for i in order]


# (country, first-case day offset from 2020-01-22, final confirmed, growth rate)
CASE_COUNTRIES = [
    ("Brazil", 35, 1_100_000, 0.075),
    ("India", 9, 430_000, 0.065),
    ("United Kingdom", 9, 300_000, 0.09),
    ("United States", 0, 2_300_000, 0.08),
    ("Australia", 3, 7_500, 0.12),
    ("Pakistan", 35, 180_000, 0.07),
]


def make_cases(seed: int = 19, start=dt.date(2020, 1, 22), end=dt.date(2020, 6, 22)):
    """Cumulative logistic-ish case curves (one downward correction per country)."""
    rng = random.Random(seed)
    days = (end - start).days + 1
    rows = []
    for country, onset, final, rate in CASE_COUNTRIES:
        mid = onset + math.log(final) / rate * 0.6
        prev = 0
        glitch = rng.randint(onset + 20, days - 10)
        for d in range(days):
            if d < onset:
                conf = 0
            else:
                conf = int(final / (1.0 + math.exp(-rate * (d - mid))))
                conf = max(conf, prev)
            if d == glitch:
                conf = max(0, prev - rng.randint(1, 50))  # reporting correction
            deaths = int(conf * 0.04)
            recovered = int(conf * 0.45 * min(1.0, max(0, d - onset) / 60))
            rows.append({
                "date": (start + dt.timedelta(days=d)).isoformat(),
                "country": country,
                "confirmed": conf,
                "deaths": deaths,
                "recovered": recovered,
            })
            if d != glitch:
                prev = conf
    return rows


def write_bundle(directory) -> None:
    """Regenerate the bundled sample tweets and cases under ``directory``."""
    directory = Path(directory)
    with open(directory / "sample_tweets.jsonl", "w", encoding="utf-8", newline="\n") as fh:
        for row in make_tweets(500):
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")
    with open(directory / "sample_cases.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["date", "country", "confirmed", "deaths", "recovered"],
                                lineterminator="\n")
        writer.writeheader()
        writer.writerows(make_cases())
