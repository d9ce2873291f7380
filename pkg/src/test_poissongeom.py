"""
Tests for the chart calculus: sharp, brackets, Schouten, Koszul and chart maps.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exprcas import Scalar
from poissongeom import (
    LEDGER,
    Chart,
    ChartMap,
    ChartMismatchError,
    bivector,
    bivector_from_fields,
    de_rham_d,
    identity_map,
    jacobi_tensor,
    koszul_bracket,
    lie_bracket_vf,
    one_form,
    poisson_bracket,
    pullback,
    pushforward_vf,
    sharp,
    sharp_compat_check,
    vector_field,
)

PLANE = Chart("plane", ("x", "y"))
SPACE = Chart("space", ("x", "y", "z"))
UV = Chart("uv", ("u", "v"))

monomials = st.sampled_from(["x", "y", "x*y", "y^2", "x^2*y", "x + y^3", "1"])


@pytest.fixture
def pi():
    return bivector(PLANE, "x", "y", "2*y^2")


class TestCharts:
    def test_empty_chart(self):
        with pytest.raises(ChartMismatchError):
            Chart("empty", ())

    def test_duplicate_coordinates(self):
        with pytest.raises(ChartMismatchError):
            Chart("dup", ("x", "x"))

    def test_unknown_coordinate(self):
        with pytest.raises(ChartMismatchError):
            PLANE.index("z")

    def test_mixed_charts(self):
        with pytest.raises(ChartMismatchError):
            vector_field(PLANE, {"x": 1}) + vector_field(UV, {"u": 1})

    def test_ledger_records_conventions(self):
        snap = LEDGER.snapshot()
        assert "wedge" in snap and "sharp_slot" in snap


class TestBrackets:
    def test_antisymmetric_lookup(self, pi):
        assert pi["x", "y"] == PLANE.parse("2*y^2")
        assert pi["y", "x"] == PLANE.parse("-2*y^2")

    def test_sharp(self, pi):
        assert sharp(pi, one_form(PLANE, {"x": 1})) == vector_field(PLANE, {"y": "-2*y^2"})
        assert sharp(pi, one_form(PLANE, {"y": 1})) == vector_field(PLANE, {"x": "2*y^2"})

    def test_poisson_bracket(self, pi):
        x, y = PLANE.parse("x"), PLANE.parse("y")
        assert poisson_bracket(pi, x, y) == PLANE.parse("2*y^2")
        assert poisson_bracket(pi, x, y * y) == PLANE.parse("4*y^3")

    def test_lie_bracket(self):
        dx = vector_field(PLANE, {"x": 1})
        x_dy = vector_field(PLANE, {"y": "x"})
        assert lie_bracket_vf(dx, x_dy) == vector_field(PLANE, {"y": 1})

    def test_linear_bracket_satisfies_jacobi(self):
        pi3 = (bivector(SPACE, "x", "y", "z") + bivector(SPACE, "y", "z", "x")
               + bivector(SPACE, "z", "x", "y"))
        assert jacobi_tensor(pi3).is_zero()

    def test_jacobi_failure_detected(self):
        # {x,y} = y, {y,z} = x: the Jacobiator on (x, y, z) is -x
        bad = bivector(SPACE, "x", "y", "y") + bivector(SPACE, "y", "z", "x")
        assert not jacobi_tensor(bad).is_zero()

    @given(f=monomials, g=monomials)
    @settings(max_examples=20, deadline=None)
    def test_koszul_on_exact_forms(self, f, g):
        pi = bivector(PLANE, "x", "y", "2*y^2")
        F, G = PLANE.parse(f), PLANE.parse(g)
        lhs = koszul_bracket(pi, de_rham_d(F, PLANE), de_rham_d(G, PLANE))
        assert lhs == -de_rham_d(poisson_bracket(pi, F, G), PLANE)

    @given(f=monomials)
    @settings(max_examples=10, deadline=None)
    def test_d_squared(self, f):
        assert de_rham_d(de_rham_d(PLANE.parse(f), PLANE)).is_zero()

    def test_hamiltonian_fields_preserve_pi(self, pi):
        assert sharp_compat_check(pi, one_form(PLANE, {"x": 1})).passed

    def test_bivector_from_fields(self):
        fields = {"X": vector_field(PLANE, {"x": 1}), "Y": vector_field(PLANE, {"y": "y"})}
        assert bivector_from_fields({("X", "Y"): 3}, fields) == bivector(PLANE, "x", "y", "3*y")

    def test_sharp_needs_bivector(self):
        with pytest.raises(ChartMismatchError):
            sharp(vector_field(PLANE, {"x": 1}), one_form(PLANE, {"x": 1}))


class TestChartMaps:
    @pytest.fixture
    def J(self):
        return ChartMap(UV, PLANE, (UV.parse("u + v"), UV.parse("u*v")), name="sum-product")

    def test_pullback_function(self, J):
        assert pullback(J, PLANE.parse("x*y")) == UV.parse("u^2*v + u*v^2")

    def test_pullback_form(self, J):
        assert pullback(J, one_form(PLANE, {"x": 1})) == one_form(UV, {"u": 1, "v": 1})

    def test_pullback_wrong_chart(self, J):
        with pytest.raises(ChartMismatchError):
            pullback(J, one_form(UV, {"u": 1}))

    def test_pushforward_needs_inverse(self, J):
        with pytest.raises(ChartMismatchError):
            pushforward_vf(J, vector_field(UV, {"u": 1}))

    def test_pushforward(self):
        scale = ChartMap(UV, PLANE, (UV.parse("2*u"), UV.parse("v")),
                         inverse=(PLANE.parse("1/2*x"), PLANE.parse("y")), name="scale")
        assert scale.verify_inverse()
        assert pushforward_vf(scale, vector_field(UV, {"u": 1})) == vector_field(PLANE, {"x": 2})

    def test_identity_composes(self, J):
        composed = identity_map(PLANE).compose(J)
        assert composed.components == J.components

    def test_component_count(self):
        with pytest.raises(ChartMismatchError):
            ChartMap(UV, PLANE, (Scalar.coord("u"),))
