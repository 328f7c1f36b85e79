import json
from pathlib import Path

import pytest

from tweetlens.emotion import load_emotion_lexicon
from tweetlens.geo import build_index
from tweetlens.sentiment import default_lexicon_path, load_lexicon

TESTS = Path(__file__).parent
DATA = TESTS / "data"
PKG_DATA = TESTS.parent / "src" / "tweetlens" / "data"


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(default_lexicon_path())


@pytest.fixture(scope="session")
def emotion_lexicon():
    return load_emotion_lexicon(PKG_DATA / "emotion_lexicon.tsv")


@pytest.fixture(scope="session")
def place_index():
    return build_index(PKG_DATA / "world_cities.csv")


@pytest.fixture(scope="session")
def oracle_cases():
    return json.loads((DATA / "vader_oracle.json").read_text(encoding="utf-8"))["cases"]


def write_lines(path, lines):
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return path


# -- acceptance reporting -------------------------------------------------------
# Tests marked ``@pytest.mark.acceptance(n, title)`` get one PASS/FAIL line
# each in the terminal summary, with any ``record_property`` measurements.

_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or report.when == "teardown":
        return
    number, title = mark.args
    if report.when == "call" or report.failed or report.skipped:
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        _ACCEPTANCE[number] = (title, status, dict(report.user_properties))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, status, props = _ACCEPTANCE[number]
        detail = ", ".join(f"{k}={v}" for k, v in props.items())
        terminalreporter.write_line(f"criterion {number}: {status}  {title}"
                                    + (f"  [{detail}]" if detail else ""))
