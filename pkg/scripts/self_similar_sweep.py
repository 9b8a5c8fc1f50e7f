"""Sweep the dense-limit derivative of c*t**beta at 0 against p(t) = t**alpha.

Below the threshold alpha < beta*lam the derivative is 0, at the threshold it
is c**lam, and above it the limit diverges. Prints one CSV row per draw.

    python scripts/self_similar_sweep.py --draws 20 --seed 1
"""

from __future__ import annotations

import argparse
import csv
import random
import sys

from structderiv import IntervalUnion, StructuralConfig, structural_derivative
from structderiv.errors import StructuralError
from structderiv.structfn import make_power_p, make_self_similar


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--draws", type=int, default=30)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    unit = IntervalUnion(((0.0, 1.0),))
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["c", "beta", "lam", "alpha", "regime", "value", "error_estimate", "iterations"])
    for i in range(args.draws):
        c, beta, lam = rng.uniform(0.2, 5), rng.uniform(0.05, 0.95), rng.uniform(0.25, 3)
        regime = ("below", "at", "above")[i % 3]
        alpha = {"below": rng.uniform(0.1, 0.9), "at": 1.0, "above": rng.uniform(1.1, 2)}[regime] * beta * lam
        cfg = StructuralConfig(make_power_p(alpha), lam)
        try:
            r = structural_derivative(make_self_similar(c, beta), unit, cfg, 0.0)
            row = [repr(abs(r.value)), repr(r.error_estimate), r.iterations]
        except StructuralError as exc:
            row = [exc.code, "", ""]
        w.writerow([repr(c), repr(beta), repr(lam), repr(alpha), regime, *row])


if __name__ == "__main__":
    main()
