"""Structural derivatives on time scales.

The structural derivative of ``f`` with respect to a structural function
``p`` and an exponent ``lam > 0`` replaces the increments of ``t`` in the
delta-derivative quotient by increments of ``p`` and raises ``f`` to the
power ``lam``. With ``lam = 1`` and ``p(t) = t`` it is the usual delta
(Hilger) derivative; with ``p(t) = t**alpha`` it gives the fractal and
fractional order derivatives.
"""

from .calculus import (
    Rule,
    RuleReport,
    product_rule,
    quotient_rule,
    reciprocal_rule,
    scaling_rule,
    sum_counterexample,
)
from .derivative import (
    Branch,
    DerivativeResult,
    LimitSettings,
    fractal_derivative,
    fractional_order_derivative,
    hilger_derivative,
    shift_identity_check,
    structural_derivative,
)
from .errors import *  # noqa: F401,F403
from .structfn import (
    RealFunction,
    SelfSimilarFn,
    StructuralConfig,
    cpow,
    identity,
    lookup,
    make_power_p,
    make_self_similar,
    make_stretched_exp_p,
)
from .timescale import (
    Density,
    FiniteSet,
    Integers,
    IntervalUnion,
    PointClass,
    QuantumScale,
    Reals,
    Side,
    TimeScale,
    UniformGrid,
    from_json,
)

__version__ = "0.1.0"
