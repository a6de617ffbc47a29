#!/usr/bin/env python3
"""Sweep the verification suites over a grid of primes and variable counts.

Usage:
    python3 scripts/run_verification.py [--primes 2,3,5] [--ns 1,2] [--seed 0]

Prints one line per suite and configuration plus a final summary; exits
nonzero if anything fails.
"""

import argparse
import sys
import time

from dividedops.cli import Session, run_suites
from dividedops.scalars import Prime


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="2,3,5")
    ap.add_argument("--ns", default="1,2")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--order-bound", type=int, default=16)
    args = ap.parse_args()

    primes = [int(v) for v in args.primes.split(",")]
    ns = [int(v) for v in args.ns.split(",")]

    failures = 0
    total = 0
    for p in primes:
        for n in ns:
            session = Session(
                p=Prime(p), n=n, precision=8, seed=args.seed,
                window=None, order_bound=args.order_bound, fmt="text",
            )
            start = time.perf_counter()
            reports = run_suites("all", session)
            elapsed = time.perf_counter() - start
            for rep in reports:
                total += 1
                status = "ok" if rep.passed else "FAILED"
                print(f"[p={p} n={n}] {rep.title}: {status}")
                if not rep.passed:
                    failures += 1
                    for check in rep.failures():
                        print(f"    {check.line()}")
            print(f"[p={p} n={n}] all suites in {elapsed:.2f}s")
    print(f"\n{total - failures}/{total} suites passed")
    return 0 if failures == 0 else 2


if __name__ == "__main__":
    sys.exit(main())
