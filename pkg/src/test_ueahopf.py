"""
Tests for PBW rewriting, the Hopf structure of U(ax+b), ħ-series and the
Jordanian twist.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liebialg import axb_r_matrix, load_algebra
from ueahopf import (
    Enveloping,
    HSeries,
    NonUnitLeadingTermError,
    TwistError,
    antipode,
    coproduct,
    corrupt_twist,
    counit,
    hopf_axioms_check,
    identity_twist,
    jordanian_twist,
    load_twist,
    require_twist,
    semiclassical_constant,
    series_exp,
    series_invert,
    twist_check,
    twist_from_document,
    twist_from_terms,
    twist_semiclassical,
    twist_to_document,
    twisted_coproduct,
    twisted_hopf_check,
)

letters = st.lists(st.sampled_from(["H", "E"]), min_size=0, max_size=4)


@pytest.fixture(scope="module")
def U():
    return Enveloping(load_algebra("axb"))


@pytest.fixture(scope="module")
def F3(U):
    return jordanian_twist(U, 3)


class TestPBW:
    def test_commutator_rewrite(self, U):
        # EH = HE - 2E
        assert U.pbw_normalize(["E", "H"]) == U.from_text("HE") - U.gen("E").scale(2)

    def test_sorted_word_is_fixed(self, U):
        assert U.pbw_normalize(["H", "H", "E"]) == U.from_text("HHE")

    def test_word_text(self, U):
        assert U.word_text(U.word("HHE")) == "H^2E"
        assert U.word_text(()) == "1"

    @given(a=letters, b=letters, c=letters)
    @settings(max_examples=25, deadline=None)
    def test_associative(self, a, b, c):
        U = Enveloping(load_algebra("axb"))
        x, y, z = U.pbw_normalize(a), U.pbw_normalize(b), U.pbw_normalize(c)
        assert (x * y) * z == x * (y * z)

    @given(a=letters, b=letters)
    @settings(max_examples=25, deadline=None)
    def test_product_matches_concatenation(self, a, b):
        U = Enveloping(load_algebra("axb"))
        assert U.pbw_normalize(a) * U.pbw_normalize(b) == U.pbw_normalize(a + b)

    def test_wrong_rank_key(self, U):
        with pytest.raises(TwistError):
            U.element({((0,), (1,)): 1}, rank=1)


class TestHopf:
    def test_primitive_coproduct(self, U):
        h = U.gen("H")
        assert coproduct(h) == h.tensor(U.one()) + U.one().tensor(h)

    def test_counit(self, U):
        assert counit(U.gen("E")) == 0
        assert counit(U.one().scale(3)) == 3

    def test_antipode(self, U):
        assert antipode(U.gen("H")) == -U.gen("H")
        # S(HE) = S(E)S(H) = EH
        assert antipode(U.from_text("HE")) == U.from_text("HE") - U.gen("E").scale(2)

    def test_axioms_through_degree_three(self, U):
        report = hopf_axioms_check(U, max_degree=3)
        assert report.passed, report.failed_names()


class TestSeries:
    def test_product_truncates(self):
        s = HSeries((Fraction(1), Fraction(2))) * HSeries((Fraction(3), Fraction(4), Fraction(5)))
        assert s == HSeries((Fraction(3), Fraction(10)))

    def test_exp(self):
        s = series_exp(HSeries((Fraction(0), Fraction(1), Fraction(0))), Fraction(1))
        assert s == HSeries((Fraction(1), Fraction(1), Fraction(1, 2)))

    def test_inverse(self, F3, U):
        prod = F3 * series_invert(F3)
        assert prod == identity_twist(U, 3)

    def test_inverse_needs_unit(self, U):
        with pytest.raises(NonUnitLeadingTermError):
            series_invert(HSeries((U.zero(2), U.one(2))))
        with pytest.raises(NonUnitLeadingTermError):
            series_invert(HSeries((Fraction(2), Fraction(1))))


class TestJordanianTwist:
    def test_low_order_coefficients(self, U, F3):
        assert F3[0] == U.one(2)
        assert F3[1] == U.from_text("H", "E").scale(Fraction(1, 2))
        assert F3[2] == (U.from_text("H", "EE").scale(Fraction(-1, 4))
                         + U.from_text("HH", "EE").scale(Fraction(1, 8)))

    def test_twist_axioms(self, F3):
        report = twist_check(F3)
        assert report.passed, report.failed_names()
        require_twist(F3)

    @pytest.mark.slow
    def test_twist_axioms_order_four(self, U):
        assert twist_check(jordanian_twist(U, 4)).passed

    def test_negative_order(self, U):
        with pytest.raises(TwistError):
            jordanian_twist(U, -1)

    def test_fixture_matches_generated(self, U, F3):
        assert load_twist("jordanian", U).truncate(3) == F3

    def test_missing_fixture(self, U):
        with pytest.raises(TwistError):
            load_twist("no-such-twist", U)

    def test_document_round_trip(self, U, F3):
        assert twist_from_document(twist_to_document(F3, "axb"), U) == F3

    def test_semiclassical_limit(self, U, F3):
        r = axb_r_matrix(U.g)
        anti, report = twist_semiclassical(F3)
        assert report.passed
        assert anti == r.scale(Fraction(1, 2))
        assert semiclassical_constant(F3, r) == Fraction(1, 2)

    def test_twisted_coproduct_of_e(self, U, F3):
        d = twisted_coproduct(F3, U.gen("E"))
        e = U.gen("E")
        assert d[0] == e.tensor(U.one()) + U.one().tensor(e)

    def test_twisted_hopf_algebra(self, U):
        report = twisted_hopf_check(jordanian_twist(U, 2))
        assert report.passed, report.failed_names()


class TestCorruptedTwist:
    def test_cocycle_first_fails_at_order_two(self, F3):
        report = twist_check(corrupt_twist(F3, at_order=2))
        assert not report.passed
        assert report.first_failing_order() == 2
        assert report.first_failure.name == "cocycle"

    def test_counit_survives(self, F3):
        report = twist_check(corrupt_twist(F3, at_order=2))
        assert all(c.passed for c in report.checks if c.name.startswith("counit"))

    def test_require_twist_raises(self, F3):
        with pytest.raises(TwistError):
            require_twist(corrupt_twist(F3))

    def test_twisted_coproduct_refuses_a_broken_twist(self, U, F3):
        with pytest.raises(TwistError, match="cocycle"):
            twisted_coproduct(corrupt_twist(F3), U.gen("E"))

    def test_twisted_coproduct_opt_out(self, U, F3):
        e = U.gen("E")
        d = twisted_coproduct(corrupt_twist(F3), e, verify=False)
        assert d[0] == e.tensor(U.one()) + U.one().tensor(e)


class TestNonTwist:
    @given(c=st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(bool))
    @settings(max_examples=8, deadline=None)
    def test_abelian_ansatz_fails_first_at_order_two(self, U, c):
        # 1⊗1 + ħ c E⊗H satisfies the cocycle through ħ¹ only, since [H, E] ≠ 0
        F = twist_from_terms(U, 2, {1: U.from_text("E", "H").scale(c)})
        report = twist_check(F)
        assert not report.passed
        assert report.first_failing_order() == 2
        assert report.first_failure.name == "cocycle"

    def test_abelian_ansatz_passes_through_first_order(self, U):
        F = twist_from_terms(U, 1, {1: U.from_text("E", "H")})
        assert twist_check(F).passed

    def test_unlisted_orders_are_zero(self, U):
        F = twist_from_terms(U, 3, {2: U.from_text("H", "H")})
        assert F[1] == U.zero(2) and F[3] == U.zero(2)
        assert F[0] == U.one(2)
