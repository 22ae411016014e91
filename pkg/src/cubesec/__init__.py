"""Gaussian-weighted central sections of the cube [-1, 1]^n.

The package computes the section measure A(u) of the central hyperplane
section orthogonal to a unit vector u, under the normalized weight
exp(-b ||x||^2) on the cube, together with its n -> infinity limit along
the main diagonal and every identity the computation rests on.
"""

from .asymptotics import (
    LEBESGUE_LIMIT,
    CatalanSeries,
    LimitBreakdown,
    TaylorCoefficients,
    catalan_series,
    g_function,
    gaussian_half_moment,
    limit_series_partial,
    limit_value,
    one_minus_four_g,
    taylor_coeffs,
)
from .errors import (
    BracketError,
    CubesecError,
    DivergenceError,
    DomainError,
    ExtrapolationInstabilityError,
    NonConvergenceError,
    OverflowRangeError,
    SeriesCapError,
)
from .kernel import (
    ConcentrationParam,
    KernelValue,
    f_closed,
    f_lebesgue,
    f_quadrature,
    f_zero,
    phi,
    phi_function,
)
from .quadrature import (
    IntegralResult,
    QuadratureConfig,
    integrate_finite,
    integrate_semi_infinite,
)
from .sections import (
    Direction,
    ScanRow,
    ScanTable,
    SectionQuery,
    diagonal_section,
    direction_section,
    integrand,
    scan,
    slab_limit_oracle,
    slab_measure_oracle,
)
from .specfun import (
    central_binomial_shifted,
    double_factorial,
    erf_complex,
    erf_real,
    faddeeva,
)

__version__ = "0.1.0"

__all__ = [
    "BracketError",
    "CatalanSeries",
    "ConcentrationParam",
    "CubesecError",
    "Direction",
    "DivergenceError",
    "DomainError",
    "ExtrapolationInstabilityError",
    "IntegralResult",
    "KernelValue",
    "LEBESGUE_LIMIT",
    "LimitBreakdown",
    "NonConvergenceError",
    "OverflowRangeError",
    "QuadratureConfig",
    "ScanRow",
    "ScanTable",
    "SectionQuery",
    "SeriesCapError",
    "TaylorCoefficients",
    "catalan_series",
    "central_binomial_shifted",
    "diagonal_section",
    "direction_section",
    "double_factorial",
    "erf_complex",
    "erf_real",
    "f_closed",
    "f_lebesgue",
    "f_quadrature",
    "f_zero",
    "faddeeva",
    "g_function",
    "gaussian_half_moment",
    "integrand",
    "integrate_finite",
    "integrate_semi_infinite",
    "limit_series_partial",
    "limit_value",
    "one_minus_four_g",
    "phi",
    "phi_function",
    "scan",
    "slab_limit_oracle",
    "slab_measure_oracle",
    "taylor_coeffs",
]
