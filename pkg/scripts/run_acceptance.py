"""Run the acceptance suites and print one line per criterion.

Usage: python3 scripts/run_acceptance.py [--seed N] [--scale X] [--json out.json]
"""

import argparse
import json
import sys

from qcanon.acceptance import run_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--scale", type=float, default=1.0, help="multiplier on trial counts")
    ap.add_argument("--json", help="also write a machine-readable summary")
    args = ap.parse_args()
    results = run_all(args.seed, scale=args.scale)
    for r in results:
        print(r.line())
    ok = all(r.passed for r in results)
    print("ALL PASS" if ok else "SOME CRITERIA FAILED")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump([{"number": r.number, "name": r.name, "passed": r.passed, "trials": r.trials,
                        "failures": r.failures, "seconds": r.seconds, "details": r.details} for r in results],
                      fh, indent=2)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
