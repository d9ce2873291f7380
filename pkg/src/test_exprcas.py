"""
Tests for the exact scalar layer: canonical forms, exponential atoms,
parsing and evaluation.
"""

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from exprcas import (
    ONE,
    ZERO,
    DivisionByZeroError,
    ExprError,
    PoleError,
    Scalar,
    UnknownCoordinateError,
    arithmetic,
    differentiate,
    equals,
    eval_at,
    parse,
    scalar_sum,
    to_text,
)

x, y, a, n = (Scalar.coord(c) for c in ("x", "y", "a", "n"))

small = st.integers(min_value=-6, max_value=6)
points = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def poly(c0, c1, c2):
    return x * c1 + x * y * c2 + c0


class TestCanonicalForms:
    def test_rational_arithmetic_is_exact(self):
        assert Scalar(Fraction(1, 3)) + Scalar(Fraction(1, 6)) == Scalar(Fraction(1, 2))

    def test_rational_functions_cancel(self):
        assert (x * x - y * y) / (x - y) == x + y

    def test_exponential_atoms_combine(self):
        assert Scalar.exp(a * 2) * Scalar.exp(a * -2) == ONE
        assert Scalar.exp(a) ** 2 == Scalar.exp(a * 2)
        assert Scalar.exp(a + n) == Scalar.exp(a) * Scalar.exp(n)

    def test_half_exponents(self):
        half = Scalar.exp(a / 2)
        assert half * half == Scalar.exp(a)

    def test_constant_exponent_rejected(self):
        with pytest.raises(ExprError):
            Scalar.exp(Scalar(1))

    def test_nonlinear_exponent_rejected(self):
        with pytest.raises(ExprError):
            Scalar.exp(a * a)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZeroError):
            x / (y - y)

    def test_float_rejected(self):
        with pytest.raises(ExprError):
            Scalar(sp.Float(0.5))

    def test_exponent_if_atom(self):
        assert Scalar.exp(a * -2).exponent_if_atom() == a * -2
        assert ONE.exponent_if_atom() == ZERO
        assert (x + 1).exponent_if_atom() is None

    def test_sum_helper(self):
        assert scalar_sum([x, y, -x]) == y


class TestDifferentiation:
    def test_exponential_derivative(self):
        f = Scalar.exp(a * -2) * n
        assert differentiate(f, "a") == Scalar.exp(a * -2) * n * -2

    def test_unknown_coordinate(self):
        with pytest.raises(UnknownCoordinateError):
            differentiate(x, "z", known=("x", "y"))

    @settings(max_examples=30, deadline=None)
    @given(small, small, small, small, small, small)
    def test_leibniz(self, c0, c1, c2, d0, d1, d2):
        f, g = poly(c0, c1, c2), poly(d0, d1, d2) * Scalar.exp(y)
        lhs = differentiate(f * g, "x")
        assert lhs == differentiate(f, "x") * g + f * differentiate(g, "x")

    @settings(max_examples=30, deadline=None)
    @given(small, small, small)
    def test_mixed_partials_commute(self, c0, c1, c2):
        f = poly(c0, c1, c2) * Scalar.exp(x - y * 2) / (y + 1)
        assert differentiate(differentiate(f, "x"), "y") == differentiate(differentiate(f, "y"), "x")


class TestParsing:
    def test_rationals_stay_exact(self):
        assert parse("1/2*x + y^2", ("x", "y")) == x / 2 + y * y

    def test_exp_of_linear_form(self):
        assert parse("exp(-2*a)*n", ("a", "n")) == Scalar.exp(a * -2) * n

    def test_float_literal_rejected(self):
        with pytest.raises(ExprError):
            parse("0.5*x")

    def test_unsupported_function(self):
        with pytest.raises(ExprError, match="sin"):
            parse("sin(x)")

    @pytest.mark.parametrize("text", ["(x + 1", "1e5*x", "cos(x)*y"])
    def test_malformed_input_is_an_expr_error(self, text):
        with pytest.raises(ExprError):
            parse(text)

    @settings(max_examples=40, deadline=None)
    @given(small, small, small, small)
    def test_printed_form_parses_back(self, c0, c1, c2, k):
        f = poly(c0, c1, c2) * Scalar.exp(a * Fraction(k, 2)) + Scalar(Fraction(c1, 3)) / (y + 1)
        assert parse(to_text(f)) == f

    def test_fractional_power_rejected(self):
        with pytest.raises(ExprError):
            parse("x**(1/2)")

    def test_unknown_coordinate(self):
        with pytest.raises(UnknownCoordinateError):
            parse("x + z", ("x", "y"))

    def test_empty(self):
        with pytest.raises(ExprError):
            parse("  ")


class TestEvaluation:
    def test_polynomial(self):
        assert eval_at(x * y + 1, {"x": 2, "y": Fraction(1, 2)}) == 2

    def test_pole(self):
        with pytest.raises(PoleError):
            eval_at(1 / (x - 1), {"x": 1})

    def test_exponential_sampled_as_atom(self):
        # e^{a/12} sampled at 1 + a^2 = 2 for a = 1, so e^{a} -> 2^12
        assert eval_at(Scalar.exp(a), {"a": 1}) == 2 ** 12

    def test_explicit_atom_values(self):
        assert eval_at(Scalar.exp(a * 2) * n, {"n": 3}, atoms={"a": 1}) == 3

    def test_exponent_denominator_outside_default_root(self):
        # R_a = lcm(12, 5) = 60 and e^{a/60} -> 2, so e^{a/5} -> 2^12
        assert eval_at(Scalar.exp(a / 5), {"a": 1}) == 2 ** 12

    def test_common_root_keeps_products_multiplicative(self):
        f, g = Scalar.exp(a / 5), Scalar.exp(a / 12) * x
        point = {"a": Fraction(1, 3), "x": 2}
        assert eval_at(f * g, point, root=60) == eval_at(f, point, root=60) * eval_at(g, point, root=60)

    def test_nonpositive_root_rejected(self):
        with pytest.raises(ExprError):
            eval_at(Scalar.exp(a), {"a": 1}, root=0)

    @settings(max_examples=50, deadline=None)
    @given(points, points, points, points)
    def test_ring_morphism(self, vx, vy, va, vn):
        f = x - n * y
        g = Scalar.exp(a * -2) * y / (x * x + 1) + n
        point = {"x": vx, "y": vy, "a": va, "n": vn}
        assert eval_at(f * g, point) == eval_at(f, point) * eval_at(g, point)
        assert eval_at(f + g, point) == eval_at(f, point) + eval_at(g, point)

    @settings(max_examples=100, deadline=None)
    @given(small, small, small, points, points, points)
    def test_equals_agrees_with_evaluation(self, c0, c1, c2, vx, vy, va):
        f = poly(c0, c1, c2) * Scalar.exp(a / 2) + y / (y * y + 1)
        rewritten = (f * (x * x + 1) - y * y + y * y) / (x * x + 1)
        other = f + Scalar.exp(a / 3) * c0
        point = {"x": vx, "y": vy, "a": va}
        assert equals(f, rewritten)
        assert eval_at(f, point) == eval_at(rewritten, point)
        if equals(f, other):
            assert eval_at(f, point) == eval_at(other, point)


class TestArithmetic:
    @pytest.mark.parametrize("op, expected", [
        ("add", x + y + 1),
        ("sub", x - y - 1),
        ("mul", x * y + x),
    ])
    def test_ring_operations(self, op, expected):
        assert arithmetic(x, y + 1, op) == expected

    def test_division_is_exact(self):
        assert arithmetic(y * y - 1, y + 1, "div") == y - 1

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZeroError):
            arithmetic(x, y - y, "div")

    def test_unknown_operation(self):
        with pytest.raises(ExprError):
            arithmetic(x, y, "pow")
