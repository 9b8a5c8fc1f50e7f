from __future__ import annotations

import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from structderiv.calculus import (
    Rule,
    product_rule,
    quotient_rule,
    reciprocal_rule,
    run_rule,
    scaling_rule,
    sum_counterexample,
)
from structderiv.derivative import structural_derivative
from structderiv.errors import DegenerateCase, ZeroDenominator
from structderiv.structfn import (
    StructuralConfig,
    constant,
    exponential,
    identity,
    lookup,
    make_power_p,
    polynomial,
    product,
    reciprocal,
    sine,
)
from structderiv.timescale import FiniteSet, Integers, QuantumScale, Reals, UniformGrid

Z = Integers()
ID = StructuralConfig(identity(), 1.0)
SQUARE = polynomial([0, 0, 1])


def cfg(lam=1.0, p=None):
    return StructuralConfig(p or identity(), lam)


# -- worked examples -----------------------------------------------------


def test_scaling_examples():
    r = scaling_rule(SQUARE, 2.0, Z, ID, 2)
    assert (r.lhs, r.rhs, r.residual, r.passed) == (10, 10, 0, True)
    r = scaling_rule(identity(), 3.0, Z, cfg(2.0), 0)
    assert (r.lhs, r.rhs) == (9, 9) and r.passed
    r = scaling_rule(sine(), 1.0, Z, cfg(0.5), 1)
    assert r.lhs == r.rhs


def test_scaling_gamma_zero():
    r = scaling_rule(SQUARE, 0.0, Z, cfg(1.5), 3)
    assert r.lhs == 0 and r.rhs == 0 and r.passed


def test_product_examples():
    a = product_rule(identity(), identity(), Z, ID, 2, form="A")
    b = product_rule(identity(), identity(), Z, ID, 2, form="B")
    assert a.rule is Rule.PRODUCT_A and b.rule is Rule.PRODUCT_B
    assert (a.lhs, a.rhs, b.rhs) == (5, 5, 5)
    one = product_rule(SQUARE, constant(1.0), Z, cfg(2.0), 1)
    assert one.residual == 0 and one.rhs == structural_derivative(SQUARE, Z, cfg(2.0), 1).value
    with pytest.raises(ValueError):
        product_rule(SQUARE, SQUARE, Z, ID, 1, form="C")


def test_reciprocal_examples():
    r = reciprocal_rule(identity(), Z, ID, 2)
    assert abs(r.lhs - (1 / 3 - 1 / 2)) < 1e-16 and abs(r.rhs + 1 / 6) < 1e-16 and r.passed
    r = reciprocal_rule(constant(-4.0), Z, cfg(2.0), 5)
    assert r.lhs == 0 and r.rhs == 0
    with pytest.raises(ZeroDenominator):
        reciprocal_rule(identity(), Z, ID, 0)
    with pytest.raises(ZeroDenominator):
        reciprocal_rule(identity(), Z, ID, -1)  # vanishes at sigma(-1) = 0


def test_quotient_examples():
    r = quotient_rule(SQUARE, identity(), Z, ID, 2)
    assert r.lhs == 1 and r.rhs == 1 and r.passed
    r = quotient_rule(SQUARE, constant(1.0), Z, cfg(0.5), 3)
    assert r.lhs == structural_derivative(SQUARE, Z, cfg(0.5), 3).value
    r = quotient_rule(SQUARE, SQUARE, Z, cfg(2.0), 3)
    assert r.lhs == 0 and abs(r.rhs) <= 1e-12 and r.passed
    with pytest.raises(ZeroDenominator):
        quotient_rule(SQUARE, identity(), Z, ID, 0)


def test_sum_counterexample_lambda_two():
    r = sum_counterexample(Z, cfg(2.0), 0)
    assert (r.lhs, r.rhs) == (9, 5) and r.passed and r.applicable


def test_sum_counterexample_linear_case_not_applicable():
    r = sum_counterexample(Z, ID, 0)
    assert r.lhs == r.rhs == 3 and not r.applicable and not r.passed


def test_sum_counterexample_half():
    r = sum_counterexample(Z, cfg(0.5), 1)
    s2 = math.sqrt(2)
    assert abs(r.lhs - math.sqrt(3) * (s2 - 1)) < 1e-15
    assert abs(r.rhs - (1 + s2) * (s2 - 1)) < 1e-15
    assert r.passed


def test_sum_counterexample_degenerate():
    with pytest.raises(DegenerateCase):
        sum_counterexample(Reals(), cfg(2.0), 1.0)
    # on {-1, 1} the squares of t and sigma(t) coincide
    with pytest.raises(DegenerateCase):
        sum_counterexample(FiniteSet((-1.0, 1.0)), cfg(2.0), -1.0)


def test_run_rule_dispatch():
    for rule in Rule:
        if rule is Rule.SUM_COUNTEREXAMPLE:
            r = run_rule(rule, identity(), identity(), Z, cfg(2.0), 0)
        else:
            r = run_rule(rule, identity(), identity(), Z, ID, 2)
        assert r.rule is rule and r.passed


# -- randomized rule suite -----------------------------------------------

pos_poly = st.lists(st.floats(0.1, 5), min_size=1, max_size=4).map(polynomial)
lams = st.sampled_from([0.5, 1.0, 2.0, 3.0]) | st.floats(0.25, 3)
ps = st.sampled_from(["identity", "power:2", "power:0.5", "power:1.5"]).map(lookup)


@st.composite
def positive_scattered(draw):
    kind = draw(st.sampled_from(["Z", "grid", "quantum", "finite"]))
    if kind == "Z":
        return Z, float(draw(st.integers(1, 30)))
    if kind == "grid":
        h = draw(st.sampled_from([0.1, 0.25, 0.5, 2.0]))
        return UniformGrid(h), h * draw(st.integers(1, 40))
    if kind == "quantum":
        q = draw(st.sampled_from([1.5, 2.0, 3.0]))
        return QuantumScale(q), q ** draw(st.integers(-4, 6))
    gaps = draw(st.lists(st.floats(0.05, 3), min_size=2, max_size=10))
    pts, x = [], draw(st.floats(0.1, 5))
    for g in gaps:
        pts.append(x)
        x += g
    return FiniteSet(tuple(pts)), pts[draw(st.integers(0, len(pts) - 2))]


@settings(max_examples=200)
@given(pos_poly, pos_poly, positive_scattered(), ps, lams, st.floats(0.1, 10))
def test_rules_hold_at_scattered_points(f, g, tp, p, lam, gamma):
    T, t = tp
    c = cfg(lam, p)
    for r in (
        scaling_rule(f, gamma, T, c, t),
        product_rule(f, g, T, c, t, form="A"),
        product_rule(f, g, T, c, t, form="B"),
        reciprocal_rule(f, T, c, t),
        quotient_rule(f, g, T, c, t),
    ):
        assert r.passed, r


@settings(max_examples=200)
@given(pos_poly, pos_poly, positive_scattered(), ps, lams)
def test_product_forms_agree(f, g, tp, p, lam):
    T, t = tp
    c = cfg(lam, p)
    a = product_rule(f, g, T, c, t, form="A").rhs
    b = product_rule(f, g, T, c, t, form="B").rhs
    assert abs(a - b) <= 1e-12 * max(abs(a), abs(b))


@given(st.sampled_from([-3.0, -0.5, 2.0]), positive_scattered(), st.sampled_from([1.0, 2.0, 3.0]))
def test_scaling_negative_gamma_integer_lambda(gamma, tp, lam):
    T, t = tp
    r = scaling_rule(polynomial([1, 1]), gamma, T, cfg(lam), t)
    assert r.passed and isinstance(r.rhs, float)


@given(st.floats(-3, -0.1), positive_scattered(), st.floats(0.25, 0.95))
def test_scaling_negative_gamma_fractional_lambda(gamma, tp, lam):
    # both sides are complex on the principal branch and still agree
    T, t = tp
    r = scaling_rule(polynomial([1, 1]), gamma, T, cfg(lam), t)
    assert r.passed and isinstance(r.rhs, complex)


@given(pos_poly, positive_scattered(), ps, lams)
def test_f_times_reciprocal_has_zero_derivative(f, tp, p, lam):
    T, t = tp
    d = structural_derivative(product(f, reciprocal(f)), T, cfg(lam, p), t).value
    ref = abs(structural_derivative(f, T, cfg(lam, p), t).value)
    assert abs(d) <= 1e-12 * max(1.0, ref)


@settings(max_examples=100)
@given(positive_scattered(), st.sampled_from([0.5, 2.0, 3.0]) | st.floats(0.3, 4))
def test_sum_counterexample_separates(tp, lam):
    assume(abs(lam - 1) > 1e-3)
    T, t = tp
    r = sum_counterexample(T, cfg(lam), t)
    assert r.passed
    # the gap is exactly the coefficient mismatch 3**lam vs 1 + 2**lam
    ratio = r.lhs / r.rhs
    assert abs(ratio - 3**lam / (1 + 2**lam)) <= 1e-12


# -- dense points --------------------------------------------------------

DENSE_PAIRS = [
    (polynomial([2, 1, 1]), exponential()),
    (exponential(), polynomial([1, 0, 0, 1])),
    (lookup("poly:3,0.5"), polynomial([1.5, 2])),
]


@pytest.mark.parametrize("f, g", DENSE_PAIRS)
@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_rules_hold_at_dense_points(f, g, lam, t):
    c = cfg(lam, make_power_p(1.5))
    for rule in (Rule.SCALING, Rule.PRODUCT_A, Rule.PRODUCT_B, Rule.RECIPROCAL, Rule.QUOTIENT):
        r = run_rule(rule, f, g, Reals(), c, t)
        assert r.passed, r
        assert r.tolerance > 0


def test_reciprocal_zero_on_dense_side():
    with pytest.raises(ZeroDenominator):
        reciprocal_rule(sine(), Reals(), ID, 0.0)
