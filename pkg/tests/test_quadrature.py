import math

import pytest
from hypothesis import given, settings, strategies as st

from cubesec.errors import DivergenceError, DomainError, NonConvergenceError
from cubesec.quadrature import (
    QuadratureConfig,
    integrate_finite,
    integrate_semi_infinite,
)
from cubesec.specfun import erf_real

SQRT_PI = math.sqrt(math.pi)


class TestFinite:
    def test_constant(self):
        result = integrate_finite(lambda x: 1.0, 0.0, 1.0)
        assert abs(result.value - 1.0) <= 1e-15
        assert result.evaluations >= 15

    def test_sine(self):
        result = integrate_finite(math.sin, 0.0, math.pi)
        assert abs(result.value - 2.0) <= 1e-13

    def test_gaussian_vs_erf_oracle(self):
        result = integrate_finite(lambda s: math.exp(-s * s), 0.0, 1.0)
        expected = 0.5 * SQRT_PI * erf_real(1.0)
        assert abs(result.value - expected) <= 1e-12

    def test_degenerate_interval(self):
        result = integrate_finite(math.exp, 1.5, 1.5)
        assert result.value == 0.0
        assert result.error_estimate == 0.0
        assert result.evaluations == 1

    def test_deterministic(self):
        def f(x):
            return math.sin(17.0 * x) / (1.0 + x * x)

        first = integrate_finite(f, 0.0, 3.0)
        second = integrate_finite(f, 0.0, 3.0)
        assert first.value == second.value
        assert first.error_estimate == second.error_estimate
        assert first.evaluations == second.evaluations

    def test_non_convergence_carries_payload(self):
        cfg = QuadratureConfig(rel_tol=1e-15, abs_tol=1e-300, max_subdivisions=4)
        with pytest.raises(NonConvergenceError) as excinfo:
            integrate_finite(lambda x: math.sqrt(abs(x - 0.3717)), 0.0, 1.0, cfg)
        payload = excinfo.value.result
        assert payload is not None
        exact = (0.6283 ** 1.5 + 0.3717 ** 1.5) * 2.0 / 3.0
        assert payload.error_estimate > 0.0
        assert abs(payload.value - exact) <= payload.error_estimate

    def test_rejects_bad_bounds(self):
        with pytest.raises(DomainError):
            integrate_finite(math.sin, 1.0, 0.0)
        with pytest.raises(DomainError):
            integrate_finite(math.sin, 0.0, math.inf)

    def test_rejects_non_finite_integrand(self):
        with pytest.raises(DomainError):
            integrate_finite(lambda x: float("nan"), 0.0, 1.0)

    def test_initial_panel_width_seeding(self):
        cfg = QuadratureConfig(initial_panel_width=0.1)
        result = integrate_finite(lambda x: math.cos(40.0 * x), 0.0, 2.0, cfg)
        assert abs(result.value - math.sin(80.0) / 40.0) <= 1e-13

    @given(
        st.lists(st.floats(-2.0, 2.0), min_size=1, max_size=5),
        st.lists(st.floats(-2.0, 2.0), min_size=1, max_size=5),
        st.floats(-3.0, 3.0),
        st.floats(-3.0, 3.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_linearity_on_polynomials(self, coeffs_f, coeffs_g, alpha, beta):
        def poly(coeffs):
            def f(x):
                acc = 0.0
                for c in reversed(coeffs):
                    acc = acc * x + c
                return acc

            return f

        f, g = poly(coeffs_f), poly(coeffs_g)
        combo = integrate_finite(lambda x: alpha * f(x) + beta * g(x), 0.0, 1.0)
        split_f = integrate_finite(f, 0.0, 1.0)
        split_g = integrate_finite(g, 0.0, 1.0)
        lhs = combo.value
        rhs = alpha * split_f.value + beta * split_g.value
        budget = (
            combo.error_estimate
            + abs(alpha) * split_f.error_estimate
            + abs(beta) * split_g.error_estimate
            + 1e-12
        )
        assert abs(lhs - rhs) <= budget


# Closed forms for the honesty battery: (integrand, lo, hi, exact value).
_BATTERY = [
    (lambda x: 1.0, 0.0, 1.0, 1.0),
    (lambda x: x, 0.0, 1.0, 0.5),
    (lambda x: x * x, 0.0, 1.0, 1.0 / 3.0),
    (lambda x: x ** 7, -1.0, 2.0, (2.0 ** 8 - 1.0) / 8.0),
    (math.exp, 0.0, 1.0, math.e - 1.0),
    (lambda x: math.exp(-x * x), 0.0, 1.0, 0.5 * SQRT_PI * math.erf(1.0)),
    (math.sin, 0.0, math.pi, 2.0),
    (math.cos, 0.0, 0.5 * math.pi, 1.0),
    (lambda x: 1.0 / (1.0 + x * x), 0.0, 1.0, 0.25 * math.pi),
    (math.sqrt, 0.0, 1.0, 2.0 / 3.0),
    (lambda x: math.log1p(x), 0.0, 1.0, 2.0 * math.log(2.0) - 1.0),
    (lambda x: 1.0 / (1.0 + 100.0 * x * x), -1.0, 1.0, math.atan(10.0) / 5.0),
    (lambda x: x * math.exp(-x), 0.0, 5.0, 1.0 - 6.0 * math.exp(-5.0)),
    (math.cosh, 0.0, 1.0, math.sinh(1.0)),
    (lambda x: 1.0 / (1.0 + 25.0 * x * x), -1.0, 1.0, 2.0 * math.atan(5.0) / 5.0),
    (
        lambda x: math.exp(-50.0 * (x - 0.3) ** 2),
        0.0,
        1.0,
        0.5
        * math.sqrt(math.pi / 50.0)
        * (math.erf(math.sqrt(50.0) * 0.7) + math.erf(math.sqrt(50.0) * 0.3)),
    ),
    (lambda x: math.sin(20.0 * x), 0.0, 1.0, (1.0 - math.cos(20.0)) / 20.0),
    (lambda x: x ** 10, -1.0, 1.0, 2.0 / 11.0),
    (lambda x: abs(x - 0.3) ** 3, 0.0, 1.0, (0.7 ** 4 + 0.3 ** 4) / 4.0),
    (lambda x: math.exp(2.0 * x) * math.cos(3.0 * x), 0.0, 1.0,
     (math.exp(2.0) * (2.0 * math.cos(3.0) + 3.0 * math.sin(3.0)) - 2.0) / 13.0),
]


class TestErrorHonesty:
    @pytest.mark.parametrize("case", range(len(_BATTERY)))
    def test_estimate_bounds_true_error(self, case):
        f, lo, hi, exact = _BATTERY[case]
        result = integrate_finite(f, lo, hi)
        assert abs(result.value - exact) <= max(result.error_estimate, 5e-15 * abs(exact))


class TestSemiInfinite:
    def test_gaussian(self):
        result = integrate_semi_infinite(lambda r: math.exp(-r * r / 4.0))
        assert abs(result.value - SQRT_PI) <= 1e-12
        assert result.truncation_radius is not None

    def test_exponential(self):
        result = integrate_semi_infinite(lambda r: math.exp(-r))
        assert abs(result.value - 1.0) <= 1e-12

    def test_gaussian_second_moment(self):
        result = integrate_semi_infinite(lambda r: math.exp(-r * r / 4.0) * r * r)
        assert abs(result.value - 2.0 * SQRT_PI) <= 1e-11

    def test_heuristic_flag_without_tail_bound(self):
        result = integrate_semi_infinite(lambda r: math.exp(-r))
        assert result.heuristic

    def test_tail_bound_folded_and_unflagged(self):
        def tail(radius):
            return math.exp(-radius)

        result = integrate_semi_infinite(lambda r: math.exp(-r), tail_bound=tail)
        assert not result.heuristic
        assert abs(result.value - 1.0) <= result.error_estimate

    def test_divergence_detected(self):
        with pytest.raises(DivergenceError):
            integrate_semi_infinite(lambda r: 1.0 / (1.0 + r))

    def test_extrapolated_algebraic_tail(self):
        # 1/(1+r^2) has a pure 1/R tail expansion: the window extrapolation
        # must reach far beyond what raw truncation at the same radius gives.
        result = integrate_semi_infinite(lambda r: 1.0 / (1.0 + r * r), extrapolate=True)
        assert abs(result.value - 0.5 * math.pi) <= 1e-9
        assert abs(result.value - 0.5 * math.pi) <= result.error_estimate

    def test_extrapolated_with_snapped_oscillation(self):
        # sin^2(r) / r^2 integrates to pi/2; the tail decays only like 1/R.
        def f(r):
            if r == 0.0:
                return 1.0
            s = math.sin(r)
            return s * s / (r * r)

        result = integrate_semi_infinite(
            f,
            QuadratureConfig(initial_panel_width=math.pi / 4.0),
            extrapolate=True,
            window_period=math.pi,
        )
        assert abs(result.value - 0.5 * math.pi) <= 1e-10
        assert abs(result.value - 0.5 * math.pi) <= result.error_estimate

    def test_deterministic(self):
        def f(r):
            return math.exp(-r * r / 8.0) * math.cos(3.0 * r)

        first = integrate_semi_infinite(f)
        second = integrate_semi_infinite(f)
        assert first.value == second.value
        assert first.error_estimate == second.error_estimate


class TestConfig:
    def test_validation(self):
        with pytest.raises(DomainError):
            QuadratureConfig(rel_tol=0.0)
        with pytest.raises(DomainError):
            QuadratureConfig(truncation_growth=1.0)
        with pytest.raises(DomainError):
            QuadratureConfig(max_subdivisions=0)
        with pytest.raises(DomainError):
            QuadratureConfig(initial_panel_width=-1.0)

    def test_defaults(self):
        cfg = QuadratureConfig()
        assert cfg.rel_tol == 1e-12
        assert cfg.abs_tol == 1e-14
        assert cfg.max_subdivisions == 10_000
        assert cfg.initial_truncation_radius == 64.0
        assert cfg.truncation_growth == 2.0
