"""Scalars, the lambda-power, structural functions and target functions.

Function values are plain Python ``float`` or ``complex``. Powers with a
fractional exponent of a negative base leave the reals, so every derivative
is potentially complex; positive real bases stay on a real fast path.
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Union

from .errors import DomainError, EvaluationError, PowUndefined

__all__ = [
    "Scalar",
    "cpow",
    "check_scalar",
    "RealFunction",
    "StructuralConfig",
    "SelfSimilarFn",
    "identity",
    "make_power_p",
    "make_stretched_exp_p",
    "make_self_similar",
    "polynomial",
    "constant",
    "shifted_square",
    "sine",
    "exponential",
    "scaled",
    "product",
    "reciprocal",
    "quotient",
    "plus",
    "lookup",
    "REGISTRY_NAMES",
]

Scalar = Union[float, complex]


def check_scalar(v: Scalar) -> Scalar:
    """Reject NaN and infinite components."""
    if isinstance(v, complex):
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise EvaluationError(f"non-finite value {v!r}")
        return v
    v = float(v)
    if not math.isfinite(v):
        raise EvaluationError(f"non-finite value {v!r}")
    return v


def cpow(z: Scalar, lam: float) -> Scalar:
    """Principal-branch power ``exp(lam * Log z)``.

    Real ``z > 0`` gives a real result, as does any real ``z`` with an integer
    exponent. ``cpow(z, 1)`` returns ``z`` unchanged.

        >>> cpow(4.0, 0.5)
        2.0
        >>> w = cpow(-8.0, 1 / 3)
        >>> round(w.real, 12), round(w.imag, 12)
        (1.0, 1.732050807569)
    """
    if lam == 1:
        return z
    if isinstance(z, complex) and z.imag == 0.0:
        z = z.real
    try:
        if z == 0:
            if lam > 0:
                return 0.0
            if lam == 0:
                return 1.0
            raise PowUndefined(f"0 raised to the negative power {lam!r}")
        if isinstance(z, complex):
            if float(lam).is_integer() and abs(lam) <= 64:
                return check_scalar(z ** int(lam))
            return check_scalar(cmath.exp(lam * cmath.log(z)))
        z = float(z)
        if z > 0:
            return check_scalar(z**lam)
        if float(lam).is_integer():
            return check_scalar(z ** int(lam))
        return check_scalar(cmath.exp(lam * cmath.log(z)))
    except (OverflowError, ZeroDivisionError) as exc:
        raise EvaluationError(f"cpow({z!r}, {lam!r}): {exc}") from None


@dataclass(frozen=True)
class RealFunction:
    """A labelled function of a real variable.

    ``is_identity`` marks ``t -> t`` so that derivative code can use the
    graininess of the scale directly as the increment of ``p``.
    """

    fn: Callable[[float], Scalar]
    label: str
    is_identity: bool = False

    def __call__(self, t: float) -> Scalar:
        try:
            v = self.fn(t)
        except EvaluationError:
            raise
        except (ValueError, ArithmeticError, TypeError) as exc:
            raise EvaluationError(f"{self.label} at {t!r}: {exc}") from None
        return check_scalar(v)


@dataclass(frozen=True)
class StructuralConfig:
    """The structural function ``p`` together with the exponent ``lam > 0``."""

    p: RealFunction
    lam: float = 1.0

    def __post_init__(self) -> None:
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise ValueError(f"lambda must be positive, got {self.lam!r}")


@dataclass(frozen=True)
class SelfSimilarFn:
    """``t -> c * t**beta``, self-similar of order ``beta``: ``f(a t) = a**beta f(t)``."""

    c: float
    beta: float

    def __post_init__(self) -> None:
        if not 0 < self.beta < 1:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta!r}")

    def __call__(self, t: float) -> Scalar:
        if t == 0:
            return 0.0
        v = cpow(t, self.beta)
        return self.c * v


def identity() -> RealFunction:
    return RealFunction(lambda t: t, "identity", is_identity=True)


def make_power_p(alpha: float) -> RealFunction:
    """``p(t) = t**alpha``; ``p(0) = 0`` for ``alpha > 0``."""
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    if alpha == 1:
        return identity()
    return RealFunction(lambda t: cpow(t, alpha), f"t^{alpha!r}")


def make_stretched_exp_p(alpha: float) -> RealFunction:
    """``p(t) = exp(t**alpha)``.

    The stretched-exponential structural function is usually only named in
    the literature; this concrete form is a choice of this library. Negative
    ``t`` is rejected unless ``alpha`` is an integer.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")

    def p(t: float) -> float:
        if t < 0 and not float(alpha).is_integer():
            raise DomainError(f"stretched exponential undefined at t={t!r} for alpha={alpha!r}")
        return math.exp(cpow(t, alpha))

    return RealFunction(p, f"exp(t^{alpha!r})")


def make_self_similar(c: float, beta: float) -> RealFunction:
    return RealFunction(SelfSimilarFn(c, beta), f"{c!r}*t^{beta!r}")


def polynomial(coeffs: Sequence[float]) -> RealFunction:
    """Polynomial with coefficients in ascending order: ``[0, 0, 1]`` is ``t**2``."""
    cs = tuple(float(c) for c in coeffs)
    if not cs:
        raise ValueError("polynomial needs at least one coefficient")

    def f(t: float) -> float:
        acc = 0.0
        for c in reversed(cs):
            acc = acc * t + c
        return acc

    return RealFunction(f, "poly:" + ",".join(repr(c) for c in cs))


def constant(gamma: float) -> RealFunction:
    gamma = float(gamma)
    return RealFunction(lambda t: gamma, f"const:{gamma!r}")


def shifted_square(c: float) -> RealFunction:
    return RealFunction(lambda t: (t - c) ** 2, f"(t-{c!r})^2")


def sine() -> RealFunction:
    return RealFunction(math.sin, "sin")


def exponential() -> RealFunction:
    return RealFunction(math.exp, "exp")


# -- composition ---------------------------------------------------------

def scaled(f: RealFunction, gamma: Scalar) -> RealFunction:
    return RealFunction(lambda t: gamma * f(t), f"{gamma!r}*({f.label})")


def product(f: RealFunction, g: RealFunction) -> RealFunction:
    return RealFunction(lambda t: f(t) * g(t), f"({f.label})*({g.label})")


def reciprocal(f: RealFunction) -> RealFunction:
    return RealFunction(lambda t: 1.0 / f(t), f"1/({f.label})")


def quotient(f: RealFunction, g: RealFunction) -> RealFunction:
    return RealFunction(lambda t: f(t) / g(t), f"({f.label})/({g.label})")


def plus(f: RealFunction, g: RealFunction) -> RealFunction:
    return RealFunction(lambda t: f(t) + g(t), f"({f.label})+({g.label})")


# -- registry ------------------------------------------------------------

REGISTRY_NAMES = (
    "identity",
    "power:<alpha>",
    "stretched-exp:<alpha>",
    "self-similar:<c>:<beta>",
    "poly:<c0,c1,...>",
    "sin",
    "exp",
    "const:<gamma>",
    "shifted-square:<c>",
)


def lookup(name: str) -> RealFunction:
    """Build a function from its registry name.

        >>> lookup("poly:0,0,1")(3.0)
        9.0
        >>> lookup("power:0.25")(16.0)
        2.0
    """
    head, _, rest = name.strip().partition(":")
    args = rest.split(":") if rest else []
    try:
        if head == "identity" and not args:
            return identity()
        if head == "sin" and not args:
            return sine()
        if head == "exp" and not args:
            return exponential()
        if head == "power" and len(args) == 1:
            return make_power_p(float(args[0]))
        if head == "stretched-exp" and len(args) == 1:
            return make_stretched_exp_p(float(args[0]))
        if head == "self-similar" and len(args) == 2:
            return make_self_similar(float(args[0]), float(args[1]))
        if head == "poly" and len(args) == 1:
            return polynomial([float(c) for c in args[0].split(",")])
        if head == "const" and len(args) == 1:
            return constant(float(args[0]))
        if head == "shifted-square" and len(args) == 1:
            return shifted_square(float(args[0]))
    except ValueError as exc:
        raise ValueError(f"bad function spec {name!r}: {exc}") from None
    raise ValueError(f"unknown function {name!r}; known: {', '.join(REGISTRY_NAMES)}")
