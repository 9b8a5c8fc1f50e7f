"""Scaling, product, reciprocal and quotient rules as checkable identities.

Each rule evaluates the derivative of the composite function directly and
compares it with the value the rule predicts from the derivatives of the
parts. The rules assume continuity of ``f`` and ``g``; that is not checked,
so a violated hypothesis shows up as a failed report.

Because ``f**lam`` is a principal-branch power, identities such as
``(f g)**lam == f**lam * g**lam`` only hold where the arguments of ``f`` and
``g`` do not wrap around; for fractional ``lam`` use positive-valued
functions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .derivative import DerivativeResult, LimitSettings, structural_derivative
from .errors import DegenerateCase, ZeroDenominator
from .structfn import (
    RealFunction,
    Scalar,
    StructuralConfig,
    cpow,
    identity,
    plus,
    product,
    quotient,
    reciprocal,
    scaled,
)
from .timescale import TimeScale

__all__ = [
    "Rule",
    "RuleReport",
    "RULE_RTOL",
    "scaling_rule",
    "product_rule",
    "reciprocal_rule",
    "quotient_rule",
    "sum_counterexample",
    "run_rule",
]

RULE_RTOL = 1e-10
ZERO_RTOL = 1e-14
SEPARATION_RTOL = 1e-9


class Rule(enum.Enum):
    SCALING = "Scaling"
    PRODUCT_A = "ProductFormA"
    PRODUCT_B = "ProductFormB"
    RECIPROCAL = "Reciprocal"
    QUOTIENT = "Quotient"
    SUM_COUNTEREXAMPLE = "SumCounterexample"


@dataclass(frozen=True)
class RuleReport:
    """Outcome of one rule check at one point.

    For ``SumCounterexample`` the report certifies a *failure* of the naive
    sum rule: ``passed`` means the two sides are separated.
    """

    rule: Rule
    point: float
    lhs: Scalar
    rhs: Scalar
    residual: float
    passed: bool
    tolerance: float
    applicable: bool = True


def _report(
    rule: Rule,
    t: float,
    lhs: DerivativeResult,
    rhs: Scalar,
    scale: float,
    noise: float,
    rtol: float,
) -> RuleReport:
    # noise: propagated dense-limit error estimates (0 on the scattered branch)
    residual = abs(lhs.value - rhs)
    tol = rtol * scale + 10.0 * noise
    return RuleReport(rule, t, lhs.value, rhs, residual, residual <= tol, tol)


def _nonzero(f: RealFunction, t: float, s: float) -> tuple[Scalar, Scalar]:
    ft, fs = f(t), f(s)
    bound = ZERO_RTOL * max(1.0, abs(ft), abs(fs))
    if abs(ft) <= bound or abs(fs) <= bound:
        raise ZeroDenominator(f"{f.label} vanishes at t={t!r} or sigma(t)={s!r}")
    return ft, fs


def scaling_rule(
    f: RealFunction,
    gamma: float,
    T: TimeScale,
    cfg: StructuralConfig,
    t: float,
    settings: LimitSettings | None = None,
    rtol: float = RULE_RTOL,
) -> RuleReport:
    """``(gamma f)`` has derivative ``gamma**lam`` times that of ``f``.

    ``gamma = 0`` is allowed: both sides vanish.
    """
    lhs = structural_derivative(scaled(f, gamma), T, cfg, t, settings)
    df = structural_derivative(f, T, cfg, t, settings)
    g_lam = cpow(gamma, cfg.lam)
    rhs = g_lam * df.value
    return _report(
        Rule.SCALING, t, lhs, rhs,
        abs(lhs.value) + abs(rhs),
        lhs.error_estimate + abs(g_lam) * df.error_estimate,
        rtol,
    )


def product_rule(
    f: RealFunction,
    g: RealFunction,
    T: TimeScale,
    cfg: StructuralConfig,
    t: float,
    settings: LimitSettings | None = None,
    form: str = "A",
    rtol: float = RULE_RTOL,
) -> RuleReport:
    """Product rule in form ``A`` (``Df g^lam + f^lam(sigma) Dg``) or ``B``
    (``Df g^lam(sigma) + f^lam Dg``)."""
    if form not in ("A", "B"):
        raise ValueError("form must be 'A' or 'B'")
    lam = cfg.lam
    s = T.sigma(t)
    lhs = structural_derivative(product(f, g), T, cfg, t, settings)
    df = structural_derivative(f, T, cfg, t, settings)
    dg = structural_derivative(g, T, cfg, t, settings)
    if form == "A":
        a, b = cpow(g(t), lam), cpow(f(s), lam)
        rule = Rule.PRODUCT_A
    else:
        a, b = cpow(g(s), lam), cpow(f(t), lam)
        rule = Rule.PRODUCT_B
    t1, t2 = df.value * a, b * dg.value
    return _report(
        rule, t, lhs, t1 + t2,
        abs(lhs.value) + abs(t1) + abs(t2),
        lhs.error_estimate + abs(a) * df.error_estimate + abs(b) * dg.error_estimate,
        rtol,
    )


def reciprocal_rule(
    f: RealFunction,
    T: TimeScale,
    cfg: StructuralConfig,
    t: float,
    settings: LimitSettings | None = None,
    rtol: float = RULE_RTOL,
) -> RuleReport:
    lam = cfg.lam
    s = T.sigma(t)
    ft, fs = _nonzero(f, t, s)
    lhs = structural_derivative(reciprocal(f), T, cfg, t, settings)
    df = structural_derivative(f, T, cfg, t, settings)
    den = cpow(fs, lam) * cpow(ft, lam)
    rhs = -df.value / den
    return _report(
        Rule.RECIPROCAL, t, lhs, rhs,
        abs(lhs.value) + abs(rhs),
        lhs.error_estimate + df.error_estimate / abs(den),
        rtol,
    )


def quotient_rule(
    f: RealFunction,
    g: RealFunction,
    T: TimeScale,
    cfg: StructuralConfig,
    t: float,
    settings: LimitSettings | None = None,
    rtol: float = RULE_RTOL,
) -> RuleReport:
    lam = cfg.lam
    s = T.sigma(t)
    gt, gs = _nonzero(g, t, s)
    lhs = structural_derivative(quotient(f, g), T, cfg, t, settings)
    df = structural_derivative(f, T, cfg, t, settings)
    dg = structural_derivative(g, T, cfg, t, settings)
    g_t = cpow(gt, lam)
    f_t = cpow(f(t), lam)
    den = cpow(gs, lam) * g_t
    t1, t2 = df.value * g_t, f_t * dg.value
    rhs = (t1 - t2) / den
    return _report(
        Rule.QUOTIENT, t, lhs, rhs,
        abs(lhs.value) + (abs(t1) + abs(t2)) / abs(den),
        lhs.error_estimate + (abs(g_t) * df.error_estimate + abs(f_t) * dg.error_estimate) / abs(den),
        rtol,
    )


def sum_counterexample(
    T: TimeScale,
    cfg: StructuralConfig,
    t: float,
    settings: LimitSettings | None = None,
) -> RuleReport:
    """Certify that ``(f + g)`` and ``Df + Dg`` differ for ``f(t) = t``, ``g(t) = 2t``.

    Needs a right-scattered ``t``. For ``lam == 1`` the operator is linear
    there and the report comes back with ``applicable=False``.
    """
    s = T.sigma(t)
    if not s > t:
        raise DegenerateCase(f"t={t!r} is right-dense; the certificate needs a scattered point")
    if cpow(s, cfg.lam) == cpow(t, cfg.lam):
        raise DegenerateCase(f"sigma(t)**lam == t**lam at t={t!r}; both sides vanish")
    f = identity()
    g = scaled(identity(), 2.0)
    lhs = structural_derivative(plus(f, g), T, cfg, t, settings).value
    rhs = (
        structural_derivative(f, T, cfg, t, settings).value
        + structural_derivative(g, T, cfg, t, settings).value
    )
    gap = abs(lhs - rhs)
    tol = SEPARATION_RTOL * max(abs(lhs), abs(rhs))
    applicable = cfg.lam != 1
    return RuleReport(
        Rule.SUM_COUNTEREXAMPLE, t, lhs, rhs, gap, applicable and gap > tol, tol, applicable
    )


def run_rule(
    rule: Rule,
    f: RealFunction,
    g: RealFunction,
    T: TimeScale,
    cfg: StructuralConfig,
    t: float,
    settings: LimitSettings | None = None,
    gamma: float = 2.0,
) -> RuleReport:
    """Dispatch one rule by enum value."""
    if rule is Rule.SCALING:
        return scaling_rule(f, gamma, T, cfg, t, settings)
    if rule is Rule.PRODUCT_A:
        return product_rule(f, g, T, cfg, t, settings, "A")
    if rule is Rule.PRODUCT_B:
        return product_rule(f, g, T, cfg, t, settings, "B")
    if rule is Rule.RECIPROCAL:
        return reciprocal_rule(f, T, cfg, t, settings)
    if rule is Rule.QUOTIENT:
        return quotient_rule(f, g, T, cfg, t, settings)
    return sum_counterexample(T, cfg, t, settings)

