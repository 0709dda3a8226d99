"""Regenerate the oracle fixture file used by the test suite.

    python3 scripts/make_fixtures.py [--digits 50] [--output tests/data/oracle_fixtures.jsonl]
"""

import argparse
import pathlib
import sys

from ferrerslab.cli import main

ROOT = pathlib.Path(__file__).resolve().parent.parent


def parse_args(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--digits", type=int, default=50)
    ap.add_argument("--output", default=str(ROOT / "tests" / "data" / "oracle_fixtures.jsonl"))
    return ap.parse_args(argv)


if __name__ == "__main__":
    args = parse_args()
    sys.exit(main(["fixtures", "--digits", str(args.digits), "-o", args.output]))
