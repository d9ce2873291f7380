"""
Tests for structure constants, the ax+b r-matrix, its cobracket, the dual
algebra and the double.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liebialg import (
    FLAT_E,
    FLAT_H,
    BasisMismatchError,
    LieAlgebraData,
    axb_r_matrix,
    basis_elt,
    bracket,
    build_double_axb,
    cobracket,
    cobracket_table,
    cocycle_check,
    dual_algebra,
    dual_check,
    flat_check,
    heisenberg_check,
    heisenberg_coordinates,
    jacobi_check,
    load_algebra,
    rho_check,
    rho_matrix,
    same_constants,
    schouten_cybe,
    vector,
    wedge,
)

coefficient = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@pytest.fixture(scope="module")
def axb():
    return load_algebra("axb")


@pytest.fixture(scope="module")
def double():
    return build_double_axb()


class TestAlgebras:
    def test_axb_bracket(self, axb):
        h, e = basis_elt(axb, "H"), basis_elt(axb, "E")
        assert bracket(axb, h, e) == e.scale(2)
        assert bracket(axb, e, h) == e.scale(-2)

    @pytest.mark.parametrize("name", ["axb", "axb_dual", "axb_double"])
    def test_jacobi(self, name):
        assert jacobi_check(load_algebra(name)).passed

    def test_broken_table_fails_jacobi(self):
        # [X,Y] = Z, [Y,Z] = X, [Z,X] = X is not a Lie algebra
        g = LieAlgebraData.from_triples("broken", ["X", "Y", "Z"],
                                        [("X", "Y", "Z", 1), ("Y", "Z", "X", 1), ("Z", "X", "X", 1)])
        report = jacobi_check(g)
        assert not report.passed
        assert report.failed_names()

    def test_unknown_label(self):
        with pytest.raises(BasisMismatchError):
            LieAlgebraData.from_triples("bad", ["H", "E"], [("H", "Q", "E", 1)])

    def test_duplicate_labels(self):
        with pytest.raises(BasisMismatchError):
            LieAlgebraData.from_triples("bad", ["H", "H"], [])

    def test_mixed_bases_rejected(self, axb):
        with pytest.raises(BasisMismatchError):
            basis_elt(axb, "H") + basis_elt(load_algebra("axb_dual"), "H*")

    @settings(max_examples=25, deadline=None)
    @given(coefficient, coefficient, coefficient, coefficient)
    def test_bracket_is_antisymmetric(self, a, b, c, d):
        g = load_algebra("axb")
        x, y = vector(g, {"H": a, "E": b}), vector(g, {"H": c, "E": d})
        assert bracket(g, x, y) == -bracket(g, y, x)


class TestBialgebra:
    def test_r_is_triangular(self, axb):
        r = axb_r_matrix(axb)
        assert r.is_alternating()
        assert schouten_cybe(axb, r).is_zero()

    def test_cobracket_values(self, axb):
        r = axb_r_matrix(axb)
        h, e = basis_elt(axb, "H"), basis_elt(axb, "E")
        assert cobracket(axb, r, h) == wedge(h, e).scale(-2)
        assert cobracket(axb, r, e).is_zero()

    def test_cocycle(self, axb):
        assert cocycle_check(axb, axb_r_matrix(axb)).passed

    def test_dual_bracket(self, axb):
        r = axb_r_matrix(axb)
        gstar = dual_algebra(axb, cobracket_table(axb, r), labels=("H*", "E*"))
        assert gstar.c(0, 1) == {0: Fraction(-2)}
        assert same_constants(gstar, load_algebra("axb_dual"))

    def test_dual_check(self, axb):
        assert dual_check(axb, axb_r_matrix(axb)).passed

    def test_non_alternating_cobracket_rejected(self, axb):
        h, e = basis_elt(axb, "H"), basis_elt(axb, "E")
        with pytest.raises(BasisMismatchError):
            dual_algebra(axb, {"H": h.tensor(e), "E": h.tensor(e).scale(0)})

    def test_flat_map(self, axb):
        gstar = load_algebra("axb_dual")
        assert flat_check(axb, gstar).passed


class TestDouble:
    def test_heisenberg(self, double):
        report = heisenberg_check(double)
        assert report.passed
        assert report.constants["z_scale"] == "1"

    def test_rho(self, double):
        assert rho_check(double).passed
        assert rho_matrix(double)[0][0] == 2

    def test_coordinates_outside_span(self, double):
        with pytest.raises(BasisMismatchError):
            heisenberg_coordinates(double, basis_elt(double, "H"))

    def test_flat_generators_bracket(self, double):
        fh, fe = basis_elt(double, FLAT_H), basis_elt(double, FLAT_E)
        assert bracket(double, fh, fe) == fe.scale(2)
