"""The large-n limit of the diagonal section measure and its supporting
identities: the ratio function g, the closed-form limit, its series
representation with shifted central binomial weights, Gaussian half-line
moments, and the even Taylor coefficients of the symmetrized complex erf.

Every quantity here has an independent verification route in the test
suite (series vs closed form, closed moments vs quadrature, closed Taylor
coefficients vs finite differences).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, SeriesCapError
from .specfun import SQRT_PI, central_binomial_shifted, double_factorial, double_factorial_float

#: b -> 0 value of the limit, sqrt(6/pi): the Lebesgue (uniform-density) case.
LEBESGUE_LIMIT = math.sqrt(6.0 / math.pi)

# Below this threshold g is evaluated from its series about 0; the direct
# ratio is exact to rounding well past this point, but the series keeps the
# derivative quantities (1 - 4g) free of cancellation.
_G_SERIES_CUTOFF = 1e-6
# Below this threshold 1 - 4g is taken from the series, where the direct
# subtraction would lose half the significant digits.
_ONE_MINUS_4G_SERIES_CUTOFF = 1e-4

_SERIES_CAP = 100_000
_SERIES_TAIL_TARGET = 1e-14


@dataclass(frozen=True)
class LimitBreakdown:
    """The limit value together with the intermediates that produce it."""

    b: float
    g_value: float
    one_minus_4g: float
    limit: float
    series_partial: float
    series_terms_used: int

    def __post_init__(self):
        if not (0.0 < self.one_minus_4g < 1.0):
            raise DomainError("1 - 4g must lie in (0, 1) for b > 0")
        if not self.limit > 0.0:
            raise DomainError("limit must be positive")


class CatalanSeries(NamedTuple):
    partial: float
    closed: float


class TaylorCoefficients(NamedTuple):
    c0: float
    c2: float
    c4: float
    c6: float


def _g_series(x: float) -> float:
    # 4 g(x) = 1 - (2/3) x + (8/45) x^2 - (16/945) x^3 + O(x^4)
    return 0.25 * (1.0 - x * (2.0 / 3.0 - x * (8.0 / 45.0 - x * (16.0 / 945.0))))


def g_function(x: float) -> float:
    """g(x) = exp(-x) sqrt(x) / (2 sqrt(pi) erf(sqrt(x))).

    Strictly decreasing on (0, inf) with limit 1/4 at 0+; the square root in
    the section limit is real precisely because g stays below 1/4.
    """
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"g_function requires x > 0, got {x!r}")
    if x < _G_SERIES_CUTOFF:
        return _g_series(x)
    sqrt_x = math.sqrt(x)
    return math.exp(-x) * sqrt_x / (2.0 * SQRT_PI * math.erf(sqrt_x))


def one_minus_four_g(b: float) -> float:
    """1 - 4 g(b) without cancellation.

    The direct subtraction loses half the digits near b = 0; below the
    cutoff the series (2b/3)(1 - (4/15) b + (8/315) b^2 + (16/4725) b^3)
    is used instead.  Coefficients were derived symbolically and verified
    against extended-precision evaluation in the test suite.
    """
    if not math.isfinite(b) or b <= 0.0:
        raise DomainError(f"one_minus_four_g requires b > 0, got {b!r}")
    if b < _ONE_MINUS_4G_SERIES_CUTOFF:
        return (2.0 * b / 3.0) * (
            1.0 - b * (4.0 / 15.0 - b * (8.0 / 315.0 + b * (16.0 / 4725.0)))
        )
    return 1.0 - 4.0 * g_function(b)


def series_terms_for_tolerance(
    b: float, tail_target: float = _SERIES_TAIL_TARGET, cap: int = _SERIES_CAP
) -> int:
    """Smallest K with geometric tail (4g)^(K+1) / (1 - 4g) below the target.

    Raises SeriesCapError when the cap binds, which happens only as b -> 0
    where the series converges slowly; the closed form is the primary path
    there anyway.
    """
    ratio = 4.0 * g_function(b)
    margin = one_minus_four_g(b)
    required = math.log(tail_target * margin) / math.log(ratio)
    terms = max(1, int(math.ceil(required)))
    if terms > cap:
        raise SeriesCapError(
            f"series needs ~{terms} terms at b={b!r}, beyond the cap {cap}"
        )
    return terms


def limit_series_partial(b: float, terms: int) -> float:
    """Partial sum 2 sqrt(b/pi) + 4 sqrt(b/pi) sum_{k=1}^{K} g(b)^k C(2k-1, k).

    Terms are generated by the exact ratio recurrence
    t_{k+1} / t_k = g (4k + 2) / (k + 1), so no huge binomials are formed.
    Monotone increasing in K since every term is positive.
    """
    if not math.isfinite(b) or b <= 0.0:
        raise DomainError(f"limit_series_partial requires b > 0, got {b!r}")
    if terms < 0:
        raise DomainError(f"terms must be >= 0, got {terms}")
    lead = 2.0 * math.sqrt(b / math.pi)
    ratio = g_function(b)
    total = 0.0
    term = ratio  # k = 1: g * C(1, 1)
    for k in range(1, terms + 1):
        total += term
        term *= ratio * (4.0 * k + 2.0) / (k + 1.0)
    return lead + 2.0 * lead * total


def limit_value(b: float) -> LimitBreakdown:
    """The n -> infinity diagonal section measure, 2 sqrt(b/pi) (1-4g)^(-1/2).

    The breakdown also carries the series partial sum at the automatically
    chosen truncation (clamped to the cap when the geometric tail converges
    too slowly, as it does for tiny b; the closed form is unaffected).
    """
    if not math.isfinite(b) or b <= 0.0:
        raise DomainError(f"limit_value requires b > 0, got {b!r}")
    g_val = g_function(b)
    margin = one_minus_four_g(b)
    limit = 2.0 * math.sqrt(b / math.pi) / math.sqrt(margin)
    try:
        terms = series_terms_for_tolerance(b)
    except SeriesCapError:
        terms = _SERIES_CAP
    partial = limit_series_partial(b, terms)
    return LimitBreakdown(
        b=b,
        g_value=g_val,
        one_minus_4g=margin,
        limit=limit,
        series_partial=partial,
        series_terms_used=terms,
    )


def catalan_series(a: float, terms: int) -> CatalanSeries:
    """Partial sum and closed form of sum_{k>=1} a^k C(2k-1, k).

    The identity sum = (1/sqrt(1-4a) - 1)/2 holds for 4|a| < 1; outside
    that disc the series diverges and the call is rejected.
    """
    if not math.isfinite(a) or abs(a) >= 0.25:
        raise DomainError(f"catalan_series requires |a| < 1/4, got {a!r}")
    if terms < 0:
        raise DomainError(f"terms must be >= 0, got {terms}")
    closed = 0.5 * (1.0 / math.sqrt(1.0 - 4.0 * a) - 1.0)
    partial = 0.0
    term = a
    for k in range(1, terms + 1):
        partial += term
        term *= a * (4.0 * k + 2.0) / (k + 1.0)
    return CatalanSeries(partial=partial, closed=closed)


def gaussian_half_moment(b: float, p: int) -> float:
    """integral_0^inf exp(-r^2 / 4b) r^p dr = 2^(p/2) sqrt(pi) b^((p+1)/2) (p-1)!!.

    Even p only; the odd half-moments follow a different pattern and are
    out of scope here.
    """
    if not math.isfinite(b) or b <= 0.0:
        raise DomainError(f"gaussian_half_moment requires b > 0, got {b!r}")
    if p < 0 or p % 2 != 0:
        raise DomainError(f"gaussian_half_moment requires even p >= 0, got {p}")
    if p - 1 <= 29:
        dfac = float(double_factorial(p - 1))
    else:
        dfac = double_factorial_float(p - 1)
    return 2.0 ** (p / 2.0) * SQRT_PI * b ** ((p + 1) / 2.0) * dfac


def taylor_coeffs(b: float) -> TaylorCoefficients:
    """Coefficients of c^0, c^2, c^4, c^6 in erf(sqrt(b)-ic) + erf(sqrt(b)+ic).

    Derived from the Hermite form of the erf derivatives,
    d^m/dz^m erf(z) = (2/sqrt(pi)) (-1)^(m-1) H_(m-1)(z) exp(-z^2), and
    cross-checked against central finite differences in the verification
    suite.  Note c4 = 2 sqrt(b) (3 - 2b) exp(-b) / (3 sqrt(pi)) vanishes at
    b = 3/2 and is positive below it.
    """
    if not math.isfinite(b) or b <= 0.0:
        raise DomainError(f"taylor_coeffs requires b > 0, got {b!r}")
    sqrt_b = math.sqrt(b)
    decay = math.exp(-b) / SQRT_PI
    c0 = 2.0 * math.erf(sqrt_b)
    c2 = 4.0 * sqrt_b * decay
    c4 = 2.0 * sqrt_b * (3.0 - 2.0 * b) * decay / 3.0
    c6 = 2.0 * sqrt_b * (15.0 - 20.0 * b + 4.0 * b * b) * decay / 45.0
    return TaylorCoefficients(c0=c0, c2=c2, c4=c4, c6=c6)
