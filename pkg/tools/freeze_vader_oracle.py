"""Freeze reference valence scores for the sentiment equivalence suite.

Run once with the reference package installed::

    pip install vaderSentiment==3.3.2
    python tools/freeze_vader_oracle.py > tests/data/vader_oracle.json

The sentence list is fixed (hand-written cases plus a seeded random
composition), so rerunning reproduces the file byte for byte.
"""

import json
import random
import sys

from vaderSentiment.vaderSentiment import SentimentIntensityAnalyzer

HANDWRITTEN = [
    "The book was good.",
    "The book was very good.",
    "The book was VERY GOOD!!!",
    "The book was kind of good.",
    "The book was only kind of good.",
    "The food was good, but the service was bad.",
    "The plot was good, but the characters are uncompelling and the dialog is not great.",
    "VADER is smart, handsome, and funny.",
    "VADER is smart, handsome, and funny!",
    "VADER is very smart, handsome, and funny.",
    "VADER is VERY SMART, handsome, and FUNNY.",
    "VADER is VERY SMART, handsome, and FUNNY!!!",
    "VADER is VERY SMART, uber handsome, and FRIGGIN FUNNY!!!",
    "VADER is not smart, handsome, nor funny.",
    "At least it isn't a horrible book.",
    "Today SUX!",
    "Today only kinda sux! But I'll get by, lol",
    "Make sure you :) or :D today!",
    "Not bad at all",
    "Sentiment analysis has never been good.",
    "Sentiment analysis has never been this good!",
    "Most automated sentiment analysis tools are shit.",
    "With VADER, sentiment analysis is the shit!",
    "Other sentiment analysis tools can be quite bad.",
    "On the other hand, VADER is quite bad ass",
    "VADER is such a badass!",
    "Without a doubt, excellent idea.",
    "Roger Dodger is one of the most compelling variations on this theme.",
    "Roger Dodger is at least compelling as a variation on the theme.",
    "Roger Dodger is one of the least compelling variations on this theme.",
    "Not such a badass after all.",
    "Without a doubt, an excellent idea.",
    "xyzzy qwfp",
    "",
    "Stay home, stay safe :)",
    "I am so scared of this virus :(",
    "Coronavirus cases are rising again. Terrible news.",
    "Lockdown is boring but at least we are safe",
    "Work from home is AMAZING!!",
    "work from home is amazing",
    "Online classes are the worst, my wifi keeps dying",
    "Online learning is not that bad tbh",
    "Nobody wants to get sick. Please wear a mask!",
    "No love for the government's response?",
    "No, I do not like this at all",
    "no good options left",
    "no fear, no panic",
    "I can't believe how good the vaccine news is",
    "This isn't great, but it is not terrible either",
    "Why is everyone panicking??",
    "Why is everyone panicking????",
    "Are you serious???",
    "happy happy happy",
    "HAPPY happy HAPPY",
    "I HATE this quarantine",
    "I hate this QUARANTINE",
    "Hospitals are overwhelmed and doctors are exhausted",
    "Grateful for all the nurses and doctors <3",
    "RIP to all the victims, so sad",
    "This is kiss of death for small businesses",
    "That vaccine news is to die for",
    "yeah right, everything is fine",
    "The bus stop is empty",
    "we are in the red this month",
    "The economy is hardly recovering",
    "Things are barely ok",
    "I'm sort of worried about my parents",
    "Quite a good day considering everything",
    "Extremely dangerous situation, stay inside",
    "Never so happy to see my friends",
    "never this bad before",
    "Without doubt the best decision",
    "It was not the worst experience",
    "It was not very good",
    "It wasn't very good",
    "It isn't really that bad",
    "Totally fine, no worries",
    "Unbelievably bad management of the crisis!!",
    "Cases up, deaths up, hope down",
    "lol this lockdown is lit",
    "meh",
    "ugh another day inside",
    "wow what a great initiative by the city",
    "Great... another Zoom meeting",
    "I'm not happy, but I'm not sad either",
    "The least helpful response so far",
    "at least the weather is nice",
    "very least we could do is help",
    "Thank you healthcare workers! You are heroes!",
    "Stop the panic buying. It is selfish and dumb.",
]

SUBJECTS = ["The lockdown", "My boss", "Online school", "The government", "This virus",
            "Working from home", "The hospital", "Our teacher", "The news", "Quarantine life"]
VERBS = ["is", "was", "seems", "feels", "has been", "looks"]
POS = ["good", "great", "amazing", "helpful", "nice", "wonderful", "safe", "fun", "calm",
       "hopeful", "excellent", "lovely", "brilliant", "fantastic", "happy"]
NEG = ["bad", "terrible", "awful", "scary", "horrible", "boring", "stressful", "sad",
       "dangerous", "annoying", "painful", "disgusting", "worse", "tragic", "hopeless"]
NEUTRAL = ["ok", "different", "long", "online", "remote", "new", "daily", "strange", "quiet"]
BOOSTERS = ["very", "really", "extremely", "so", "totally", "incredibly", "slightly",
            "kinda", "barely", "sort of", "kind of", "hardly", "absolutely", "somewhat"]
NEGATORS = ["not", "never", "isn't", "wasn't", "don't", "hardly", "without", "nothing",
            "rarely", "ain't"]
EMOTICONS = [":)", ":(", ":D", ":-(", ";)", ":/", "<3", ":'(", "XD", ":P"]
TAILS = ["", ".", "!", "!!", "!!!", "!!!!!", "?", "??", "???", "?!", " lol", " smh", " #covid19"]


def _caps(word, rng):
    return word.upper() if rng.random() < 0.2 else word


def _clause(rng):
    subj = rng.choice(SUBJECTS)
    verb = rng.choice(VERBS)
    parts = [subj, verb]
    r = rng.random()
    if r < 0.3:
        parts.append(rng.choice(NEGATORS))
    if rng.random() < 0.5:
        parts.append(_caps(rng.choice(BOOSTERS), rng))
    pool = rng.choice([POS, NEG, NEUTRAL, POS, NEG])
    parts.append(_caps(rng.choice(pool), rng))
    if rng.random() < 0.3:
        parts.append("and " + _caps(rng.choice(POS + NEG), rng))
    return " ".join(parts)


def generated(n, seed=20200101):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        text = _clause(rng)
        if rng.random() < 0.35:
            joiner = rng.choice([", but ", " but ", ". But ", " BUT "])
            text += joiner + _clause(rng).lower()
        text += rng.choice(TAILS)
        if rng.random() < 0.25:
            text += " " + rng.choice(EMOTICONS)
        out.append(text)
    return out


def main():
    analyzer = SentimentIntensityAnalyzer()
    sentences = HANDWRITTEN + generated(200)
    suite = []
    for text in sentences:
        s = analyzer.polarity_scores(text)
        suite.append({"text": text, "compound": s["compound"], "pos": s["pos"],
                      "neu": s["neu"], "neg": s["neg"]})
    json.dump({"reference": "vaderSentiment 3.3.2", "cases": suite}, sys.stdout,
              indent=1, ensure_ascii=False)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
