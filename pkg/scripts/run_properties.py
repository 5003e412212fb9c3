"""Run every randomized property with a given seed and print one line per property."""
from __future__ import annotations

import argparse
import random
import sys

from trilie.properties import PROPERTIES


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=20)
    args = ap.parse_args()
    failed = 0
    for name, prop in PROPERTIES.items():
        report = prop(random.Random(args.seed), args.trials)
        failed += not report.passed
        print(f"{name:20s} {report.summary()}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
