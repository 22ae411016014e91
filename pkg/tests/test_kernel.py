import math

import pytest
from hypothesis import given, settings, strategies as st

from cubesec.errors import DomainError
from cubesec.kernel import (
    BRANCH_CLOSED,
    BRANCH_ORACLE,
    BRANCH_SINC,
    ConcentrationParam,
    f_closed,
    f_lebesgue,
    f_quadrature,
    f_zero,
    phi,
    phi_function,
)


class TestClosedForm:
    def test_at_zero(self):
        expected = 0.5 * math.sqrt(math.pi) * math.erf(1.0)
        got = f_closed(1.0, 0.0)
        assert got.branch == BRANCH_CLOSED
        assert abs(got.value - expected) <= 1e-13

    def test_matches_quadrature_oracle(self):
        closed = f_closed(0.25, 3.7).value
        oracle = f_quadrature(0.25, 3.7).value
        assert abs(closed - oracle) <= 1e-12

    def test_tiny_b_approaches_sinc(self):
        # continuity to the b -> 0 limit near a sinc zero
        assert abs(f_closed(1e-6, math.pi).value) <= 1e-5

    def test_rejects_lebesgue_point(self):
        with pytest.raises(DomainError):
            f_closed(0.0, 1.0)
        with pytest.raises(DomainError):
            f_closed(ConcentrationParam(0.0), 1.0)

    def test_extreme_arguments_stay_finite(self):
        value = f_closed(100.0, 1e4).value
        assert math.isfinite(value)

    def test_rejects_negative_r(self):
        with pytest.raises(DomainError):
            f_closed(1.0, -0.5)


class TestQuadratureOracle:
    def test_lebesgue_point(self):
        got = f_quadrature(0.0, 1.0)
        assert got.branch == BRANCH_ORACLE
        assert abs(got.value - math.sin(1.0)) <= 1e-13

    def test_at_zero_matches_closed(self):
        assert abs(f_quadrature(1.0, 0.0).value - 0.746824132812427) <= 1e-13

    def test_decay_bound_at_large_r(self):
        value = f_quadrature(5.0, 20.0).value
        assert -0.05 < value < 0.05

    def test_zero_splitting_region(self):
        # r > 50 triggers the cosine-zero splitting; cross-check vs closed form
        for r in (55.0, 77.3, 99.9):
            assert abs(f_quadrature(2.0, r).value - f_closed(2.0, r).value) <= 1e-12


class TestLebesgue:
    def test_removable_singularity(self):
        got = f_lebesgue(0.0)
        assert got.value == 1.0
        assert got.branch == BRANCH_SINC

    def test_zero_at_pi(self):
        assert abs(f_lebesgue(math.pi).value) <= 1e-16

    def test_matches_oracle(self):
        assert abs(f_lebesgue(1.0).value - f_quadrature(0.0, 1.0).value) <= 1e-15

    def test_series_seam(self):
        # series gate at r = 1e-4: the series branch matches direct sin(r)/r
        for r in (0.2e-4, 0.99e-4, 1.01e-4):
            assert abs(f_lebesgue(r).value - math.sin(r) / r) <= 1e-15


class TestStableIdentity:
    def test_against_naive_high_precision(self):
        # Where the naive bracket is representable, the stable combined form
        # must reproduce exp(-c^2) [erf(sqrt(b)-ic) + erf(sqrt(b)+ic)].
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 50
        sqrt_pi = math.sqrt(math.pi)
        for b in (0.01, 0.1, 1.0, 5.0, 20.0):
            for r in (0.0, 0.5, 2.0, 7.0, 20.0, 45.0):
                c = r / (2.0 * math.sqrt(b))
                if c * c - b > 600.0:
                    continue
                sb = mp.sqrt(b)
                naive = mp.exp(-c * c) * (
                    mp.erf(sb - 1j * c) + mp.erf(sb + 1j * c)
                )
                expected = float(naive.real) * sqrt_pi / (4.0 * math.sqrt(b))
                got = f_closed(b, r).value
                assert abs(got - expected) <= 1e-12 * max(1.0, abs(expected))


class TestOracleEquivalence:
    @pytest.mark.parametrize("b", [0.01, 1.0, 20.0])
    def test_sparse_grid(self, b):
        # full 6 x 1001 grid runs in the verification suite
        worst = 0.0
        for i in range(0, 101, 4):
            r = i * 1.0
            worst = max(worst, abs(f_closed(b, r).value - f_quadrature(b, r).value))
        assert worst <= 1e-11


class TestDecayBound:
    @pytest.mark.parametrize("b", [0.01, 0.25, 5.0])
    def test_inverse_r_envelope(self, b):
        for i in range(1, 80):
            r = 1.25 * i
            assert abs(f_closed(b, r).value) <= 1.0 / r + 1e-15


class TestPhi:
    def test_unit_at_zero(self):
        for b in (0.0, 1e-9, 0.3, 2.0):
            assert phi(b, 0.0) == 1.0

    def test_lebesgue_value(self):
        assert abs(phi(0.0, 0.5 * math.pi) - 2.0 / math.pi) <= 1e-15

    def test_ratio_vs_quadrature_oracle(self):
        expected = f_quadrature(1.0, 2.0).value / f_quadrature(1.0, 0.0).value
        assert abs(phi(1.0, 2.0) - expected) <= 1e-12

    def test_bounded_by_one(self):
        for b in (0.0, 0.05, 1.0, 10.0):
            fn = phi_function(b)
            for i in range(400):
                t = 0.25 * i
                assert abs(fn(t)) <= 1.0

    @given(st.floats(1e-6, 20.0), st.floats(0.0, 200.0))
    @settings(max_examples=150, deadline=None)
    def test_bounded_property(self, b, t):
        assert abs(phi(b, t)) <= 1.0

    def test_lebesgue_switch_continuity(self):
        # |f_closed(1e-8, r) - sinc(r)| <= 1e-6 across the branch switch
        for i in range(0, 51):
            r = float(i)
            closed = f_closed(1e-8, r).value
            assert abs(closed - f_lebesgue(r).value) <= 1e-6


class TestFZero:
    def test_lebesgue(self):
        assert f_zero(0.0) == 1.0

    def test_matches_closed_form(self):
        for b in (0.1, 1.0, 7.0):
            assert abs(f_zero(b) - f_closed(b, 0.0).value) <= 1e-14


class TestConcentrationParam:
    def test_lebesgue_flag(self):
        assert ConcentrationParam(0.0).is_lebesgue
        assert not ConcentrationParam(0.5).is_lebesgue

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            ConcentrationParam(-0.1)

    def test_rejects_nan(self):
        with pytest.raises(DomainError):
            ConcentrationParam(float("nan"))
