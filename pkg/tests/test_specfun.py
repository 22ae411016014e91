import cmath
import math

import pytest
from hypothesis import given, strategies as st

from cubesec import quadrature
from cubesec.errors import DomainError, OverflowRangeError
from cubesec.specfun import (
    _CF_RADIUS,
    _CF_TERMS,
    _INV_SQRT_PI,
    central_binomial_shifted,
    double_factorial,
    double_factorial_float,
    erf_complex,
    erf_real,
    faddeeva,
)

from conftest import maclaurin_erf, pascal_binomial


class TestErfReal:
    def test_zero(self):
        assert erf_real(0.0) == 0.0

    def test_saturates_at_six(self):
        assert abs(erf_real(6.0) - 1.0) <= 1e-15

    def test_value_at_one_vs_maclaurin(self):
        assert abs(erf_real(1.0) - maclaurin_erf(1.0)) <= 1e-14
        assert abs(erf_real(1.0) - 0.842700792949715) <= 1e-14

    def test_odd_bit_for_bit(self, rng):
        for _ in range(10_000):
            x = rng.uniform(-6.0, 6.0)
            assert erf_real(-x) == -erf_real(x)

    def test_strictly_increasing_and_bounded(self):
        xs = [-5.0 + i * 0.25 for i in range(41)]
        values = [erf_real(x) for x in xs]
        assert all(b > a for a, b in zip(values, values[1:]))
        assert all(abs(v) < 1.0 for v in values)

    def test_rejects_nan(self):
        with pytest.raises(DomainError):
            erf_real(float("nan"))

    @given(st.floats(-6.0, 6.0))
    def test_odd_property(self, x):
        assert erf_real(-x) == -erf_real(x)


class TestFaddeeva:
    def test_at_origin(self):
        assert abs(faddeeva(0j) - 1.0) <= 1e-14

    def test_imaginary_axis_vs_erfc(self):
        # w(iy) = exp(y^2) erfc(y)
        expected = math.e * math.erfc(1.0)
        assert abs(faddeeva(1j) - expected) <= 1e-10

    def test_real_axis_real_part(self):
        got = faddeeva(2.0 + 0j)
        assert abs(got.real - math.exp(-4.0)) <= 1e-12

    def test_real_axis_imag_part_vs_dawson_quadrature(self):
        # Im w(x) = (2/sqrt(pi)) exp(-x^2) integral_0^x exp(t^2) dt
        x = 2.0
        dawson = quadrature.integrate_finite(lambda t: math.exp(t * t), 0.0, x)
        expected = 2.0 * _INV_SQRT_PI * math.exp(-x * x) * dawson.value
        assert abs(faddeeva(x + 0j).imag - expected) <= 1e-12

    def test_lower_half_plane_rejected(self):
        with pytest.raises(DomainError):
            faddeeva(1.0 - 0.1j)

    def test_branch_seam_agreement(self, rng):
        # Continued fraction evaluated just inside the rational region must
        # agree with the rational approximation to 1e-13 relative.
        def cf(z):
            t = z
            for k in range(_CF_TERMS, 0, -1):
                t = z - (0.5 * k) / t
            return 1j * _INV_SQRT_PI / t

        radius = _CF_RADIUS * 0.999
        for i in range(61):
            z = radius * cmath.exp(1j * math.pi * i / 60.0)
            if z.imag < 0.0:
                z = complex(z.real, 0.0)
            got = faddeeva(z)
            assert abs(got - cf(z)) <= 1e-13 * abs(got)

    def test_against_scipy_reference(self, rng):
        wofz = pytest.importorskip("scipy.special").wofz
        for _ in range(500):
            z = complex(rng.uniform(-30.0, 30.0), rng.uniform(0.0, 30.0))
            expected = complex(wofz(z))
            assert abs(faddeeva(z) - expected) <= 1e-12 * abs(expected)

    def test_bounded_on_upper_half_plane(self, rng):
        for _ in range(300):
            z = complex(rng.uniform(-10.0, 10.0), rng.uniform(0.0, 10.0))
            assert abs(faddeeva(z)) <= 1.0 + 1e-12


class TestErfComplex:
    def test_real_axis_same_code_path(self):
        assert erf_complex(0.7 + 0j) == complex(erf_real(0.7), 0.0)

    def test_conjugate_symmetry(self, rng):
        for _ in range(1000):
            z = complex(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0))
            if abs(z) > 5.0 or z.imag == 0.0:
                continue
            left = erf_complex(z.conjugate())
            right = erf_complex(z).conjugate()
            assert abs(left - right) <= 1e-12 * max(abs(erf_complex(z)), 1e-300)

    def test_oddness(self):
        z = 0.2 - 0.1j
        assert abs(erf_complex(-z) + erf_complex(z)) <= 1e-13

    def test_against_path_quadrature_oracle(self):
        # erf(z) = (2/sqrt(pi)) integral over the straight segment 0 -> z.
        for z in (0.2 - 0.1j, 1.1 + 0.7j, 0.4 + 2.0j):
            real_part = quadrature.integrate_finite(
                lambda t: (cmath.exp(-(t * z) ** 2) * z).real, 0.0, 1.0
            ).value
            imag_part = quadrature.integrate_finite(
                lambda t: (cmath.exp(-(t * z) ** 2) * z).imag, 0.0, 1.0
            ).value
            expected = 2.0 * _INV_SQRT_PI * complex(real_part, imag_part)
            assert abs(erf_complex(z) - expected) <= 1e-12 * max(1.0, abs(expected))

    def test_faddeeva_consistency_identity(self, rng):
        # exp(-z^2) w(iz) + erf(z) = 1; the residual is relative to the size
        # of the two (possibly exponentially large) terms cancelling there.
        count = 0
        while count < 200:
            z = complex(rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0))
            if z.imag * z.imag - z.real * z.real > 600.0 or z.real == 0.0:
                continue
            count += 1
            zz = z if z.real >= 0.0 else -z
            w = faddeeva(complex(-zz.imag, zz.real))
            term = cmath.exp(-zz * zz) * w
            residual = abs(term + erf_complex(zz) - 1.0)
            assert residual <= 1e-11 * max(1.0, abs(term))
            if zz.imag * zz.imag - zz.real * zz.real <= 10.0:
                assert residual <= 1e-11

    def test_overflow_guard(self):
        with pytest.raises(OverflowRangeError):
            erf_complex(complex(0.0, 27.0))

    def test_against_mpmath(self, rng):
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 40
        for _ in range(120):
            z = complex(rng.uniform(-6.0, 6.0), rng.uniform(-6.0, 6.0))
            expected = complex(mp.erf(mp.mpc(z.real, z.imag)))
            assert abs(erf_complex(z) - expected) <= 1e-12 * max(abs(expected), 1e-30)


class TestDoubleFactorial:
    def test_empty_products(self):
        assert double_factorial(-1) == 1
        assert double_factorial(0) == 1
        assert double_factorial(1) == 1

    def test_small_values(self):
        assert double_factorial(5) == 15
        assert double_factorial(7) == 105
        assert double_factorial(7) == 5040 // (2 ** 3 * 6)

    def test_odd_identity(self):
        # (2k-1)!! * 2^(k-1) * (k-1)! = (2k-1)! exactly
        for k in range(1, 11):
            lhs = double_factorial(2 * k - 1) * 2 ** (k - 1) * math.factorial(k - 1)
            assert lhs == math.factorial(2 * k - 1)

    def test_overflow_boundary(self):
        assert double_factorial(29) == 6190283353629375
        with pytest.raises(OverflowRangeError):
            double_factorial(30)

    def test_domain(self):
        with pytest.raises(DomainError):
            double_factorial(-2)

    def test_float_fallback_matches_exact(self):
        for k in (31, 41, 99):
            exact = 1
            j = k
            while j > 1:
                exact *= j
                j -= 2
            assert double_factorial_float(k) == pytest.approx(float(exact), rel=1e-12)


class TestCentralBinomial:
    def test_small(self):
        assert central_binomial_shifted(1) == 1
        assert central_binomial_shifted(3) == 10

    def test_against_pascal_triangle(self):
        assert central_binomial_shifted(10) == pascal_binomial(19, 10) == 92378

    def test_exactness_boundary(self):
        assert isinstance(central_binomial_shifted(31), int)
        beyond = central_binomial_shifted(32)
        assert isinstance(beyond, float)
        assert beyond == pytest.approx(float(math.comb(63, 32)), rel=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            central_binomial_shifted(0)
