"""Show the dense-limit iteration for a few smooth functions on the reals.

Compares the extrapolated two-sided limit on the reals with the raw
one-sided quotient sequence on [t, t + 1], both against the analytic
derivative. Without extrapolation the quotients converge only linearly.

    python scripts/dense_convergence.py
"""

from __future__ import annotations

import math

from structderiv import IntervalUnion, LimitSettings, Reals, StructuralConfig, structural_derivative
from structderiv.errors import StructuralError
from structderiv.structfn import exponential, identity, make_power_p, sine

CASES = [
    ("sin, p=t", sine(), identity(), lambda t: math.cos(t)),
    ("exp, p=t", exponential(), identity(), lambda t: math.exp(t)),
    ("sin, p=t^2", sine(), make_power_p(2), lambda t: math.cos(t) / (2 * t)),
]


def main() -> None:
    raw = LimitSettings(use_richardson=False, max_iters=60, abs_tol=1e-6, rel_tol=1e-6)
    print(f"{'case':<12} {'t':>4} {'extrapolated err':>17} {'iters':>5} {'raw err':>10} {'iters':>5}")
    for name, f, p, exact in CASES:
        cfg = StructuralConfig(p, 1.0)
        for t in (0.5, 1.0, 2.0):
            a = structural_derivative(f, Reals(), cfg, t)
            try:
                b = structural_derivative(f, IntervalUnion(((t, t + 1),)), cfg, t, raw)
                raw_err, raw_it = f"{abs(b.value - exact(t)):.2e}", b.iterations
            except StructuralError as exc:
                raw_err, raw_it = exc.code, "-"
            print(f"{name:<12} {t:>4} {abs(a.value - exact(t)):>17.2e} {a.iterations:>5} {raw_err:>10} {raw_it:>5}")


if __name__ == "__main__":
    main()
