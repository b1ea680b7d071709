#!/usr/bin/env python3
"""Run the three theorem suites on the bundled fixtures and print reports."""

import argparse
import json
import sys
import time

from koszulkit.corpus import theorem_suite

RUNS = [
    ("reg", "ci2"),
    ("reg", "fitz3"),
    ("minmult", "mm1"),
    ("fitz", "ci2"),
    ("fitz", "fitz3"),
]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--imax", type=int, default=5)
    ap.add_argument("--dmax", type=int, default=8)
    ap.add_argument("--json", action="store_true", help="emit full JSON reports")
    args = ap.parse_args()

    all_ok = True
    for suite_id, fixture in RUNS:
        t0 = time.time()
        rep = theorem_suite(suite_id, fixture, args.seed, (args.imax, args.dmax))
        dt = time.time() - t0
        ok = rep.passed
        all_ok = all_ok and ok
        if args.json:
            print(json.dumps(rep.to_json(), sort_keys=True))
        else:
            n_pass = sum(a.passed for a in rep.assertions)
            print(
                f"{suite_id:8s} {fixture:6s} "
                f"{'pass' if ok else 'FAIL'} ({n_pass}/{len(rep.assertions)} "
                f"assertions, {dt:.1f}s)"
            )
            for a in rep.assertions:
                if not a.passed:
                    print(f"    FAIL {a.id}: {a.witness}")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
