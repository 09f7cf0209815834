"""Run every verification suite and print one report line each.

Usage: python scripts/run_all_suites.py [--seed S] [--full]

--full uses the acceptance-sized sample counts instead of the quick defaults,
which takes on the order of half a minute.
"""

import argparse
import json
import sys

from fig8plan.verify import SUITE_NAMES, run_suite

FULL_SIZES = {
    "collision": 10_000,
    "partition": 100_000,
    "retraction": 10_000,
    "continuity": 16,
    "termination": 10_000,
    "roundtrip": 1000,
}


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--full", action="store_true")
    args = parser.parse_args()

    failures = 0
    for name in SUITE_NAMES:
        n = FULL_SIZES[name] if args.full else None
        report = run_suite(name, seed=args.seed, n=n)
        print(json.dumps(report.to_json()))
        if not report.passed:
            failures += 1
    if failures:
        print(f"{failures} suite(s) failed", file=sys.stderr)
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
