"""
Tests for Hopf actions, UDF star products, the pairing with functions on S,
the cocycle γ, m_γ and the coaction route to the star product.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from axbdouble import GSTAR_CHART, dressing_fundamental_fields, poisson_structures
from exprcas import ZERO, Scalar
from liebialg import load_algebra
from poissongeom import vector_field
from quantizeudf import (
    CocycleGamma,
    HopfAction,
    NotARepresentationError,
    StarProduct,
    UnsupportedFunctionError,
    act,
    assoc_check,
    detect_handedness,
    deformed_comodule_check,
    dressing_coaction,
    dressing_hopf_action,
    gamma_cocycle_check,
    gamma_normalization_check,
    m_gamma,
    m_gamma_duality_check,
    module_algebra_check,
    monomials,
    pairing,
    pairing_duality_check,
    representation_check,
    semiclassical_check,
    series_equal,
    star_cocycle,
    star_udf,
)
from ueahopf import Enveloping, HSeries, TwistError, corrupt_twist, jordanian_twist, series_invert

X, Y = Scalar.coord("x"), Scalar.coord("y")
A, N = Scalar.coord("a"), Scalar.coord("n")

gstar_monomials = st.sampled_from(["1", "x", "y", "x*y", "y^2", "x^2"])


@pytest.fixture(scope="module")
def U():
    return Enveloping(load_algebra("axb"))


@pytest.fixture(scope="module")
def F2(U):
    return jordanian_twist(U, 2)


@pytest.fixture(scope="module")
def dressing():
    return dressing_hopf_action()


def _left_dressing():
    fields = {k: -v for k, v in dressing_fundamental_fields().items()}
    return HopfAction("negated-dressing", GSTAR_CHART, load_algebra("axb"), fields)


class TestActions:
    def test_generators_act_by_fields(self, U, dressing):
        assert act(dressing, U.gen("H"), Y) == Y * -2
        assert act(dressing, U.gen("E"), X) == Y
        assert act(dressing, U.gen("E"), Y) == ZERO

    def test_handedness(self, dressing):
        assert dressing.handedness == "right"
        assert _left_dressing().handedness == "left"

    def test_right_representation(self, U, dressing):
        report = representation_check(dressing, U, X * X * Y)
        assert report.passed, report.failed_names()
        assert report.constants["handedness"] == "right"

    def test_left_representation(self, U):
        assert representation_check(_left_dressing(), U, X * Y * Y).passed

    def test_not_a_representation(self):
        fields = {"H": vector_field(GSTAR_CHART, {"x": 1}), "E": vector_field(GSTAR_CHART, {"y": "x"})}
        with pytest.raises(NotARepresentationError):
            detect_handedness(load_algebra("axb"), fields)


class TestStarProduct:
    def test_order_zero_is_pointwise(self, F2, dressing):
        assert star_udf(F2, dressing, X, Y)[0] == X * Y

    def test_first_order_commutator(self, F2, dressing):
        star = StarProduct(F2, dressing)
        assert star.bidiff(1, X, Y) == ZERO
        assert star.bidiff(1, Y, X) == Y * Y * -1
        report = semiclassical_check(star, poisson_structures()["pi_ell"], Fraction(1, 2))
        assert report.passed, report.failed_names()

    def test_wrong_constant_fails(self, F2, dressing):
        star = StarProduct(F2, dressing)
        assert not semiclassical_check(star, poisson_structures()["pi_ell"], Fraction(1)).passed

    @given(f=gstar_monomials)
    @settings(max_examples=6, deadline=None)
    def test_unit(self, f):
        F = jordanian_twist(Enveloping(load_algebra("axb")), 2)
        star = StarProduct(F, dressing_hopf_action())
        g = GSTAR_CHART.parse(f)
        one = Scalar(1)
        expected = HSeries((g, ZERO, ZERO))
        assert star(one, g) == expected
        assert star(g, one) == expected

    def test_associative_on_coordinates(self, F2, dressing):
        triples = [(X, Y, Y), (Y, X, Y), (Y, Y, X), (X, X, Y)]
        report = assoc_check(StarProduct(F2, dressing), triples)
        assert report.passed, report.failed_names()

    def test_order_is_capped_by_twist(self, F2, dressing):
        assert StarProduct(F2, dressing, order=5).order == 2
        assert StarProduct(F2, dressing, order=1).order == 1

    def test_left_action_uses_inverse(self, F2):
        star = StarProduct(F2, _left_dressing())
        assert star.operator == series_invert(F2)

    def test_module_algebra(self, F2, dressing):
        report = module_algebra_check(F2, dressing, X, Y)
        assert report.passed, report.failed_names()

    def test_broken_twist_is_refused(self, F2, dressing):
        with pytest.raises(TwistError):
            StarProduct(corrupt_twist(F2), dressing)
        with pytest.raises(TwistError):
            star_udf(corrupt_twist(F2), dressing, X, Y)

    def test_unverified_broken_twist_loses_associativity(self, F2, dressing):
        broken = StarProduct(corrupt_twist(F2), dressing, verify=False)
        assert broken(X, Y)[0] == X * Y
        linear = [X, Y]
        triples = [(f, g, h) for f in linear for g in linear for h in linear]
        assert assoc_check(broken, triples).first_failing_order() == 2

    def test_series_equal(self):
        a = HSeries((X, Y, ZERO))
        b = HSeries((X, X, ZERO))
        assert series_equal(a, a) is None
        assert series_equal(a, b) == 1


class TestPairing:
    def test_generators_on_coordinates(self, U):
        assert pairing(U.gen("H"), A) == 1
        assert pairing(U.gen("H"), N) == 0
        assert pairing(U.gen("E"), N) == 1
        assert pairing(U.gen("E"), A) == 0
        assert pairing(U.one(), Scalar(3)) == 3

    def test_rejects_foreign_coordinates(self, U):
        with pytest.raises(UnsupportedFunctionError):
            pairing(U.gen("H"), X)

    def test_coproduct_duality(self, U):
        words = [U.gen("H"), U.gen("E"), U.from_text("HE"), U.from_text("HH")]
        report = pairing_duality_check(U, words, [A, N, A * N])
        assert report.passed, report.failed_names()


class TestCocycle:
    def test_order_zero_is_counit(self, F2):
        gamma = CocycleGamma(F2)
        assert gamma(A, N)[0] == 0
        assert gamma(Scalar(2), Scalar(3))[0] == 6

    def test_first_order(self, F2):
        # ½⟨H, a⟩⟨E, n⟩
        assert CocycleGamma(F2)(A, N)[1] == Fraction(1, 2)

    def test_normalized(self, F2):
        report = gamma_normalization_check(CocycleGamma(F2), [A, N, A * N])
        assert report.passed, report.failed_names()

    @pytest.mark.slow
    def test_cocycle_identity(self, F2):
        report = gamma_cocycle_check(CocycleGamma(F2), [(A, N, N), (N, A, N)])
        assert report.passed, report.failed_names()

    def test_m_gamma_leading_term(self, F2):
        assert m_gamma(CocycleGamma(F2), A, N)[0] == A * N

    def test_m_gamma_dual_to_twisted_coproduct(self, F2):
        report = m_gamma_duality_check(CocycleGamma(F2), A, N)
        assert report.passed, report.failed_names()


class TestCoaction:
    def test_counit(self):
        delta = dressing_coaction()
        for f in monomials(GSTAR_CHART, 2):
            assert delta.counit_check(f)

    def test_coaction_of_coordinates(self):
        delta = dressing_coaction()
        assert delta(X) == X + N * Y
        assert delta(Y) == Scalar.exp(A * -2) * Y

    def test_cocycle_route_matches_udf(self, F2, dressing):
        gamma = CocycleGamma(F2)
        for f, g in [(X, Y), (Y, X), (Y, Y), (X * Y, Y)]:
            assert star_cocycle(gamma, dressing_coaction(), f, g) == star_udf(F2, dressing, f, g)

    @pytest.mark.slow
    def test_deformed_comodule(self, F2, dressing):
        report = deformed_comodule_check(F2, dressing, dressing_coaction(), [(X, Y), (Y, X)])
        assert report.passed, report.failed_names()
