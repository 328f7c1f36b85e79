"""Run ``tweetlens pipeline`` on the bundled sample and freeze every output hash.

Writes tests/data/pipeline_hashes.json, which the acceptance suite compares
against fresh runs. Re-run only when an intentional change alters the
report contents.
"""

import hashlib
import json
import sys
import tempfile
from pathlib import Path

from tweetlens.cli import run

OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "pipeline_hashes.json"


def main():
    with tempfile.TemporaryDirectory() as tmp:
        if run(["pipeline", "--out", tmp]) != 0:
            sys.exit("pipeline failed")
        hashes = {p.name: hashlib.sha256(p.read_bytes()).hexdigest()
                  for p in sorted(Path(tmp).iterdir())}
    OUT.write_text(json.dumps(hashes, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    print(f"froze {len(hashes)} hashes -> {OUT}")


if __name__ == "__main__":
    main()
