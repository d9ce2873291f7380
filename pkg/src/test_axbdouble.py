"""
Tests for the ax+b double group, its factorization, the dressing action and
the dressing generators.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from axbdouble import (
    GSTAR_CHART,
    UNIT,
    DoubleElt,
    NotInImageError,
    SElt,
    decompose,
    derive_dressing_sign,
    disagreement,
    double_group_report,
    double_mul,
    dressing_action,
    dressing_fundamental_fields,
    dressing_generators_report,
    dressing_lambda_generators,
    dressing_star_generators,
    embed_s,
    embed_sstar,
    naive_generators,
    pi_lin_is_linear,
    poisson_report,
    sample_point,
    poisson_structures,
    sstar_inverse,
    sstar_to_eta,
    verify_dressing_generator,
)
from exprcas import Scalar
from poissongeom import bivector, vector_field

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=3)

A1, A2, A3 = (Scalar.coord(c) for c in ("a1", "a2", "a3"))
NU, KAPPA, A, N = (Scalar.coord(c) for c in ("nu", "kappa", "a", "n"))
X, Y = Scalar.coord("x"), Scalar.coord("y")


class TestDoubleGroup:
    @given(v=st.lists(rationals, min_size=9, max_size=9))
    @settings(max_examples=10, deadline=None)
    def test_associative(self, v):
        g = DoubleElt.of(A1, v[0], v[1], v[2])
        h = DoubleElt.of(A2, v[3], v[4], v[5])
        k = DoubleElt.of(A3, v[6], v[7], v[8])
        assert double_mul(double_mul(g, h), k).equals(double_mul(g, double_mul(h, k)))

    def test_unit(self):
        g = embed_sstar(NU, KAPPA)
        assert double_mul(UNIT, g).equals(g)
        assert double_mul(g, UNIT).equals(g)

    @given(k=rationals, m=rationals)
    @settings(max_examples=10, deadline=None)
    def test_factorization_round_trip(self, k, m):
        xi, s = decompose(double_mul(embed_sstar(NU, k), embed_s(A, m)))
        assert xi.equals(sstar_to_eta(NU, k))
        assert s.equals(SElt.of(A, m))

    def test_s_coordinate_recovered(self):
        _, s = decompose(embed_s(A, N))
        assert s.a == A

    def test_outside_image(self):
        with pytest.raises(NotInImageError):
            decompose(DoubleElt.of(0, 0, Fraction(-1, 2), 0))

    def test_sstar_inverse_undefined(self):
        with pytest.raises(NotInImageError):
            sstar_inverse((X, Scalar(-1)))

    def test_seeded_report(self):
        report = double_group_report(seed=7, samples=4)
        assert report.passed, report.failed_names()
        assert report.constants["dressing_sign_gstar"] == "1"

    def test_sampled_identities_use_every_point(self):
        report = double_group_report(seed=20240101, samples=50)
        assert report.passed, report.failed_names()
        sampled = {c.name: c.detail for c in report.checks}
        for name in ("associativity", "one-parameter exp", "decompose round trip", "S law matches embed_s"):
            assert sampled[name] == "50 seeded points"

    def test_point_oracle_finds_a_mismatch(self):
        rng = random.Random(3)
        points = [sample_point(rng, ("x", "y"), nonzero=("x",)) for _ in range(5)]
        assert disagreement([X * Y, Scalar.exp(X)], [Y * X, Scalar.exp(X)], points) is None
        assert disagreement([X * Y], [X * Y + X], points) == points[0]

    def test_sample_points_are_seeded(self):
        first = sample_point(random.Random(11), ("a", "n"), nonzero=("a",))
        assert first == sample_point(random.Random(11), ("a", "n"), nonzero=("a",))
        assert first["a"] != 0


class TestDressing:
    def test_sign_is_derived(self):
        assert derive_dressing_sign() == -1

    def test_gstar_action(self):
        x2, y2 = dressing_action((X, Y), (A, N))
        assert x2 == X + N * Y
        assert y2 == Scalar.exp(A * -2) * Y

    def test_unknown_chart(self):
        with pytest.raises(NotInImageError):
            dressing_action((X, Y), (A, N), chart="polar")

    def test_fundamental_fields(self):
        fields = dressing_fundamental_fields()
        assert fields["H"] == vector_field(GSTAR_CHART, {"y": "-2*y"})
        assert fields["E"] == vector_field(GSTAR_CHART, {"x": "y"})


class TestPoissonStructures:
    def test_structures(self):
        s = poisson_structures()
        assert s["pi_ell"] == bivector(GSTAR_CHART, "x", "y", "2*y^2")
        assert s["pi_star"] == bivector(GSTAR_CHART, "x", "y", "2*y^2 + 2*y")
        assert s["pi_lin"] == bivector(GSTAR_CHART, "x", "y", "2*y")

    def test_only_pi_lin_is_linear(self):
        s = poisson_structures()
        assert pi_lin_is_linear(s["pi_lin"])
        assert not pi_lin_is_linear(s["pi_star"])
        assert not pi_lin_is_linear(s["pi_ell"])

    def test_report(self):
        report = poisson_report()
        assert report.passed, report.failed_names()


class TestDressingGenerators:
    def test_lambda_family(self):
        report = verify_dressing_generator(dressing_lambda_generators(), poisson_structures()["pi_ell"])
        assert report.passed, report.failed_names()
        assert report.constants["mc_constant"] == "-1"
        assert report.constants["algmorph_sign"] == "-1"

    def test_star_family(self):
        report = verify_dressing_generator(dressing_star_generators(), poisson_structures()["pi_star"])
        assert report.passed, report.failed_names()

    def test_printed_sign_fails_shift(self):
        report = verify_dressing_generator(dressing_star_generators(printed_sign=True),
                                           poisson_structures()["pi_star"])
        assert "shift[H]" in report.failed_names()
        assert "shift[E]" not in report.failed_names()

    def test_naive_forms_fail(self):
        report = verify_dressing_generator(naive_generators(), poisson_structures()["pi_ell"])
        assert {"shift[H]", "shift[E]"} <= set(report.failed_names())

    def test_report(self):
        report = dressing_generators_report()
        assert report.passed, report.failed_names()
