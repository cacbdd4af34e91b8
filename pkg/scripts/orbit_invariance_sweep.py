"""Stress the canonical form on many random orbits and report the worst discrepancy.

Usage: python3 scripts/orbit_invariance_sweep.py [--trials N] [--seed N] [--max-n N]
"""

import argparse
import collections
import sys
import time

from qcanon.littlewood import canonical_form
from qcanon.testkit import haar_unitary, make_rng, random_nonderogatory


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()
    rng = make_rng(args.seed)
    cases = collections.Counter()
    worst, fails = 0.0, 0
    t0 = time.perf_counter()
    for t in range(args.trials):
        n = int(rng.integers(2, args.max_n + 1))
        a = random_nonderogatory(rng, n)
        u = haar_unitary(n, rng)
        try:
            ra, rb = canonical_form(a), canonical_form(u.H @ a @ u)
        except Exception as exc:  # report and keep sweeping
            fails += 1
            print(f"trial {t} (n={n}): {type(exc).__name__}: {exc}")
            continue
        d = float((ra.canon - rb.canon).entry_norms().max())
        worst = max(worst, d)
        cases.update(ra.cases)
        if d > 1e-6 or ra.cases != rb.cases or ra.edge_set != rb.edge_set:
            fails += 1
            print(f"trial {t} (n={n}): mismatch {d:.3g} {ra.cases} vs {rb.cases}")
    print(f"{args.trials} trials, {fails} failures, worst entry gap {worst:.3g}, "
          f"{time.perf_counter() - t0:.1f}s")
    print("case counts:", dict(sorted(cases.items())))
    return 0 if fails == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
