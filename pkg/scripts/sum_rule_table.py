"""Tabulate how far the naive sum rule misses for f(t) = t and g(t) = 2t.

At a scattered point the derivative of 3t is 3**lam times a common factor,
while the sum of the two derivatives is (1 + 2**lam) times it. The ratio
column should match 3**lam / (1 + 2**lam) and equal 1 only at lam = 1.

    python scripts/sum_rule_table.py --lambdas 0.5,1,2,3
"""

from __future__ import annotations

import argparse
import csv
import sys

from structderiv import Integers, StructuralConfig, sum_counterexample
from structderiv.structfn import identity


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lambdas", default="0.25,0.5,1,1.5,2,3")
    ap.add_argument("--t", type=float, default=0.0)
    args = ap.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["lam", "lhs", "rhs", "ratio", "expected_ratio", "separated"])
    for lam in (float(x) for x in args.lambdas.split(",")):
        r = sum_counterexample(Integers(), StructuralConfig(identity(), lam), args.t)
        w.writerow([lam, repr(r.lhs), repr(r.rhs), repr(r.lhs / r.rhs), repr(3**lam / (1 + 2**lam)),
                    r.passed if r.applicable else "n/a"])


if __name__ == "__main__":
    main()
