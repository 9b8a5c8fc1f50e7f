"""The structural derivative on a time scale.

At a right-scattered point the derivative is the exact quotient

    [f(sigma(t))**lam - f(t)**lam] / [p(sigma(t)) - p(t)],

and at a right-dense point it is the limit of

    [f(t)**lam - f(s)**lam] / [p(t) - p(s)]

as ``s -> t`` through the scale. The limit is evaluated numerically on a
geometric approach schedule, one side at a time, with an extrapolation step
that estimates the contraction ratio of the quotient sequence from three
consecutive terms (Richardson extrapolation with an estimated order; on a
geometric schedule this is Aitken's delta-squared). The estimated order lets
power-law tails such as ``s**0.1`` extrapolate as well as smooth ones.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import islice

from .errors import DenseLimitDiverged, NotInKappa, StructuralDegenerate
from .structfn import RealFunction, Scalar, StructuralConfig, check_scalar, cpow, identity, make_power_p
from .timescale import Side, TimeScale

__all__ = [
    "Branch",
    "LimitSettings",
    "DerivativeResult",
    "structural_derivative",
    "hilger_derivative",
    "fractal_derivative",
    "fractional_order_derivative",
    "shift_identity_check",
    "p_increment",
]

_EPS = 2.220446049250313e-16
DEGENERATE_RTOL = 1e-14


class Branch(enum.Enum):
    SCATTERED_EXACT = "ScatteredExact"
    DENSE_LIMIT = "DenseLimit"


@dataclass(frozen=True)
class LimitSettings:
    """Controls for the numeric limit at right-dense points.

    ``start`` overrides the first offset of the approach schedule (default
    ``max(1, |t|) / 16``); ``shrink_ratio`` is the ratio between offsets.
    """

    abs_tol: float = 1e-9
    rel_tol: float = 1e-9
    max_iters: int = 40
    min_iters: int = 4
    shrink_ratio: float = 0.5
    use_richardson: bool = True
    start: float | None = None

    def __post_init__(self) -> None:
        if not 0 < self.shrink_ratio < 1:
            raise ValueError("shrink_ratio must lie in (0, 1)")
        if not 1 <= self.min_iters <= self.max_iters:
            raise ValueError("need 1 <= min_iters <= max_iters")
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise ValueError("tolerances must be nonnegative")


@dataclass(frozen=True)
class DerivativeResult:
    value: Scalar
    branch: Branch
    error_estimate: float = 0.0
    iterations: int = 0
    samples: tuple[tuple[float, Scalar], ...] = ()


def p_increment(T: TimeScale, cfg: StructuralConfig, t: float, s: float) -> Scalar:
    """``p(s) - p(t)`` for ``s = sigma(t)``; the graininess when ``p`` is the identity."""
    if cfg.p.is_identity:
        return T.mu(t)
    return cfg.p(s) - cfg.p(t)


def structural_derivative(
    f: RealFunction,
    T: TimeScale,
    cfg: StructuralConfig,
    t: float,
    settings: LimitSettings | None = None,
) -> DerivativeResult:
    """Structural derivative of ``f`` at ``t`` for the pair ``(p, lam)`` in ``cfg``.

    Raises ``PointNotInScale``, ``NotInKappa``, ``StructuralDegenerate``,
    ``DenseLimitDiverged`` or an ``EvaluationError`` from ``f`` or ``p``.

        >>> from structderiv.structfn import polynomial, identity
        >>> from structderiv.timescale import Integers
        >>> r = structural_derivative(polynomial([0, 0, 1]), Integers(), StructuralConfig(identity()), 2)
        >>> r.value, r.branch.value
        (5.0, 'ScatteredExact')
    """
    settings = settings or LimitSettings()
    if not T.in_kappa(t):
        raise NotInKappa(f"{t!r} is the left-scattered maximum of {T!r}")
    t = float(t)
    s = T.sigma(t)
    if s > t:
        return _scattered(f, T, cfg, t, s)
    return _dense(f, T, cfg, t, settings)


def _scattered(f: RealFunction, T: TimeScale, cfg: StructuralConfig, t: float, s: float) -> DerivativeResult:
    den = p_increment(T, cfg, t, s)
    if abs(den) < DEGENERATE_RTOL * max(1.0, abs(cfg.p(t))):
        raise StructuralDegenerate(f"p(sigma(t)) == p(t) at t={t!r}")
    num = cpow(f(s), cfg.lam) - cpow(f(t), cfg.lam)
    return DerivativeResult(check_scalar(num / den), Branch.SCATTERED_EXACT)


def _dense(
    f: RealFunction, T: TimeScale, cfg: StructuralConfig, t: float, settings: LimitSettings
) -> DerivativeResult:
    sides = [side for side in (Side.BELOW, Side.ABOVE) if T.is_dense_side(t, side)]
    if not sides:
        raise DenseLimitDiverged(f"{t!r} is an isolated point of {T!r}; no limit to take")
    ft = cpow(f(t), cfg.lam)
    pt = cfg.p(t)
    estimates = [_one_side(f, T, cfg, t, side, ft, pt, settings) for side in sides]

    iterations = sum(e[2] for e in estimates)
    samples = tuple(x for e in estimates for x in e[3])
    if len(estimates) == 1:
        value, err, _, _ = estimates[0]
        return DerivativeResult(value, Branch.DENSE_LIMIT, err, iterations, samples)

    (lo, err_lo, _, _), (hi, err_hi, _, _) = estimates
    gap = abs(hi - lo)
    if gap > settings.abs_tol + settings.rel_tol * max(abs(lo), abs(hi)):
        raise DenseLimitDiverged(f"one-sided limits at t={t!r} disagree: {lo!r} vs {hi!r}")
    value = lo if lo == hi else (lo + hi) / 2
    return DerivativeResult(value, Branch.DENSE_LIMIT, max(err_lo, err_hi, gap), iterations, samples)


def _one_side(
    f: RealFunction,
    T: TimeScale,
    cfg: StructuralConfig,
    t: float,
    side: Side,
    ft: Scalar,
    pt: Scalar,
    settings: LimitSettings,
) -> tuple[Scalar, float, int, list[tuple[float, Scalar]]]:
    points = T.approach(t, side, settings.start, settings.shrink_ratio)
    need = max(settings.min_iters, 4 if settings.use_richardson else 2)
    raw: list[Scalar] = []
    acc: list[Scalar] = []
    samples: list[tuple[float, Scalar]] = []
    last_diff = math.inf
    for s in islice(points, settings.max_iters):
        dp = pt - cfg.p(s)
        if dp == 0:
            raise StructuralDegenerate(f"p({s!r}) == p({t!r})")
        q = check_scalar((ft - cpow(f(s), cfg.lam)) / dp)
        raw.append(q)
        samples.append((s, q))
        acc.append(_extrapolate(raw) if settings.use_richardson else q)
        if len(acc) < 2:
            continue
        last_diff = abs(acc[-1] - acc[-2])
        if len(acc) >= need and last_diff <= settings.abs_tol + settings.rel_tol * abs(acc[-1]):
            return acc[-1], last_diff, len(raw), samples
    raise DenseLimitDiverged(
        f"no convergence {side.value} at t={t!r} after {len(raw)} points "
        f"(last change {last_diff!r})"
    )


def _extrapolate(raw: list[Scalar]) -> Scalar:
    """Limit estimate from the last three quotients.

    Assumes ``q_k = L + C * r**k`` locally; ``r`` is estimated from the ratio
    of successive differences and the geometric tail is summed. Falls back to
    the latest quotient when the sequence is flat to rounding or the ratio
    does not describe a contraction.
    """
    if len(raw) < 3:
        return raw[-1]
    q0, q1, q2 = raw[-3:]
    d1 = q1 - q0
    d2 = q2 - q1
    if d1 == 0 or abs(d2) <= 4 * _EPS * abs(q2):
        return q2
    r = d2 / d1
    if not abs(r) < 1:
        return q2
    return q2 + d2 * r / (1 - r)


def hilger_derivative(
    f: RealFunction, T: TimeScale, t: float, settings: LimitSettings | None = None
) -> DerivativeResult:
    """Classical delta derivative: ``lam = 1`` and ``p`` the identity."""
    return structural_derivative(f, T, StructuralConfig(identity(), 1.0), t, settings)


def fractal_derivative(
    f: RealFunction, T: TimeScale, alpha: float, t: float, settings: LimitSettings | None = None
) -> DerivativeResult:
    """Hausdorff (fractal) derivative: ``lam = 1``, ``p(t) = t**alpha``."""
    return structural_derivative(f, T, StructuralConfig(make_power_p(alpha), 1.0), t, settings)


def fractional_order_derivative(
    f: RealFunction, T: TimeScale, alpha: float, t: float, settings: LimitSettings | None = None
) -> DerivativeResult:
    """Fractional order derivative: ``lam = alpha``, ``p(t) = t**alpha``."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    return structural_derivative(f, T, StructuralConfig(make_power_p(alpha), alpha), t, settings)


def shift_identity_check(
    f: RealFunction,
    T: TimeScale,
    cfg: StructuralConfig,
    t: float,
    settings: LimitSettings | None = None,
) -> float:
    """Residual of ``f(sigma)**lam = f(t)**lam + (p(sigma) - p(t)) * D`` at ``t``.

    Zero up to rounding at scattered points and exactly zero at dense ones.
    """
    d = structural_derivative(f, T, cfg, t, settings).value
    s = T.sigma(t)
    inc = p_increment(T, cfg, t, s)
    return abs(cpow(f(s), cfg.lam) - cpow(f(t), cfg.lam) - inc * d)
