#!/usr/bin/env python3
"""Tabulate the classification over all single-pair configurations.

For every coprime (q, p) with q < p <= --p-max and every r from 0 to
p*(p - q), run the semigroup classifier and print one row per pair with
the r-ranges of each verdict.  A final summary counts configurations per
class.  --check re-derives every row from the closed-form inequalities
and complains loudly on any mismatch.
"""

import argparse
import json
import sys
from collections import Counter
from math import gcd

from germcontract import Classification, semigroup_conditions, single_pair_closed_form


def ranges(rs):
    """Compress a sorted integer list into 'a-b, c' notation."""
    if not rs:
        return "-"
    spans = []
    start = prev = rs[0]
    for r in rs[1:]:
        if r == prev + 1:
            prev = r
            continue
        spans.append((start, prev))
        start = prev = r
    spans.append((start, prev))
    return ", ".join(f"{a}" if a == b else f"{a}-{b}" for a, b in spans)


def census(p_max):
    rows = []
    for p in range(2, p_max + 1):
        for q in range(1, p):
            if gcd(q, p) != 1:
                continue
            by_class = {c: [] for c in Classification}
            for r in range(0, p * (p - q) + 1):
                cls = semigroup_conditions([(q, p)], r).classification
                by_class[cls].append(r)
            rows.append((q, p, by_class))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p-max", type=int, default=7)
    ap.add_argument("--json", action="store_true")
    ap.add_argument(
        "--check",
        action="store_true",
        help="compare every row against the closed-form inequalities",
    )
    args = ap.parse_args(argv)
    if args.p_max < 2:
        ap.error("--p-max must be at least 2")

    rows = census(args.p_max)
    mismatches = 0
    if args.check:
        for q, p, by_class in rows:
            for r in range(0, p * (p - q) + 1):
                closed = single_pair_closed_form(q, p, r)
                want = (
                    Classification.NOT_CONTRACTIBLE
                    if not closed["contractible"]
                    else Classification.BOTH
                    if closed["nonalgebraic_exists"]
                    else Classification.ONLY_ALGEBRAIC
                )
                if r not in by_class[want]:
                    mismatches += 1
                    print(f"MISMATCH at (q={q}, p={p}, r={r})", file=sys.stderr)

    if args.json:
        doc = [
            {
                "q": q,
                "p": p,
                "by_class": {c.value: rs for c, rs in by_class.items() if rs},
            }
            for q, p, by_class in rows
        ]
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(f"{'pair':>8}  {'OnlyAlgebraic':>16}  {'Both':>12}  {'NotContractible':>16}")
        for q, p, by_class in rows:
            print(
                f"({q},{p})".rjust(8)
                + f"  {ranges(by_class[Classification.ONLY_ALGEBRAIC]):>16}"
                + f"  {ranges(by_class[Classification.BOTH]):>12}"
                + f"  {ranges(by_class[Classification.NOT_CONTRACTIBLE]):>16}"
            )
        totals = Counter()
        for _, _, by_class in rows:
            for c, rs in by_class.items():
                totals[c.value] += len(rs)
        print()
        for name, n in sorted(totals.items()):
            print(f"{name}: {n} configurations")
    if args.check:
        print(
            f"closed-form check: {mismatches} mismatches",
            file=sys.stderr if mismatches else sys.stdout,
        )
        return 1 if mismatches else 0
    return 0


if __name__ == "__main__":
    sys.exit(main())
