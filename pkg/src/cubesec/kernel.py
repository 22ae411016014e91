"""The scalar cosine-Gaussian kernel f_b(r) and its normalized ratio.

``f_b(r) = integral_0^1 cos(r s) exp(-b s^2) ds`` is the building block of
every section measure in this package.  Three routes are provided:

* ``f_closed``: the closed form in terms of complex error functions,
  rearranged so that no intermediate grows like exp(+c^2) (see below);
* ``f_lebesgue``: the b = 0 limit sin(r)/r;
* ``f_quadrature``: direct adaptive integration of the defining integral,
  kept deliberately independent of the closed form so the two can be used
  as oracles for each other.

The closed form reads, with c = r / (2 sqrt(b)),

    f_b(r) = sqrt(pi)/(4 sqrt(b)) * exp(-c^2)
             * [erf(sqrt(b) - i c) + erf(sqrt(b) + i c)].

The erf values grow like exp(c^2 - b), so the raw product is a disaster at
large r.  Substituting erf(z) = 1 - exp(-z^2) w(iz) and combining the
exponentials analytically gives the stable identity used here:

    exp(-c^2) * [erf(sqrt(b) - ic) + erf(sqrt(b) + ic)]
        = 2 exp(-c^2) - 2 exp(-b) * Re[ exp(-2i sqrt(b) c) * w(i sqrt(b) - c) ],

in which every factor is bounded by 2.  The test suite re-derives this
identity numerically against a naive high-precision evaluation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Union

from . import quadrature
from .errors import DomainError
from .specfun import SQRT_PI, faddeeva

BRANCH_CLOSED = "closed_form"
BRANCH_SINC = "lebesgue_sinc"
BRANCH_ORACLE = "quadrature_oracle"

# Below this weight the closed form is abandoned for the sinc limit; the
# committed error is at most b itself, far below every downstream tolerance.
LEBESGUE_SWITCH = 1e-7

# Above this r the defining integral is split at the cosine zeros so each
# half-period gets its own adaptive panel; uniform panels lose digits there.
_ZERO_SPLIT_THRESHOLD = 50.0

_SINC_SERIES_CUTOFF = 1e-4


@dataclass(frozen=True)
class ConcentrationParam:
    """Gaussian weight b >= 0; b = 0 selects the Lebesgue branch everywhere."""

    b: float

    def __post_init__(self):
        if not math.isfinite(self.b) or self.b < 0.0:
            raise DomainError(f"concentration parameter must be finite and >= 0, got {self.b!r}")

    @property
    def is_lebesgue(self) -> bool:
        return self.b == 0.0


@dataclass(frozen=True)
class KernelValue:
    """Kernel value together with the branch that produced it."""

    value: float
    branch: str

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise DomainError("kernel value must be finite")


ConcentrationLike = Union[float, ConcentrationParam]


def _b_value(b: ConcentrationLike) -> float:
    value = b.b if isinstance(b, ConcentrationParam) else float(b)
    if not math.isfinite(value) or value < 0.0:
        raise DomainError(f"concentration parameter must be finite and >= 0, got {b!r}")
    return value


def _sinc(r: float) -> float:
    if r == 0.0:
        return 1.0
    if abs(r) < _SINC_SERIES_CUTOFF:
        r2 = r * r
        return 1.0 - r2 / 6.0 * (1.0 - r2 / 20.0)
    return math.sin(r) / r


def _f_closed_value(b: float, r: float) -> float:
    sqrt_b = math.sqrt(b)
    c = r / (2.0 * sqrt_b)
    w = faddeeva(complex(-c, sqrt_b))
    rotated = cmath.exp(complex(0.0, -2.0 * sqrt_b * c)) * w
    bracket = 2.0 * math.exp(-c * c) - 2.0 * math.exp(-b) * rotated.real
    return SQRT_PI / (4.0 * sqrt_b) * bracket


def f_closed(b: ConcentrationLike, r: float) -> KernelValue:
    """Closed-form kernel, b > 0 only (b = 0 has a removable singularity
    here; use f_lebesgue for it)."""
    bv = _b_value(b)
    if bv == 0.0:
        raise DomainError("f_closed requires b > 0; use f_lebesgue for b = 0")
    if not math.isfinite(r) or r < 0.0:
        raise DomainError(f"f_closed requires r >= 0, got {r!r}")
    return KernelValue(_f_closed_value(bv, r), BRANCH_CLOSED)


def f_lebesgue(r: float) -> KernelValue:
    """sin(r)/r with a series evaluation near the removable singularity."""
    if not math.isfinite(r) or r < 0.0:
        raise DomainError(f"f_lebesgue requires r >= 0, got {r!r}")
    return KernelValue(_sinc(r), BRANCH_SINC)


def f_quadrature(
    b: ConcentrationLike,
    r: float,
    cfg: quadrature.QuadratureConfig | None = None,
) -> KernelValue:
    """Direct adaptive integration of the defining integral.

    The only route that never touches the error-function engine; it is the
    independent oracle for f_closed.
    """
    bv = _b_value(b)
    if not math.isfinite(r) or r < 0.0:
        raise DomainError(f"f_quadrature requires r >= 0, got {r!r}")
    if cfg is None:
        cfg = quadrature.QuadratureConfig(rel_tol=1e-13, abs_tol=1e-15)

    def integrand(s: float) -> float:
        return math.cos(r * s) * math.exp(-bv * s * s)

    if r <= _ZERO_SPLIT_THRESHOLD:
        result = quadrature.integrate_finite(integrand, 0.0, 1.0, cfg)
        return KernelValue(result.value, BRANCH_ORACLE)
    edges = [0.0]
    j = 0
    while True:
        zero = (j + 0.5) * math.pi / r
        if zero >= 1.0:
            break
        edges.append(zero)
        j += 1
    edges.append(1.0)
    total = 0.0
    for i in range(len(edges) - 1):
        total += quadrature.integrate_finite(integrand, edges[i], edges[i + 1], cfg).value
    return KernelValue(total, BRANCH_ORACLE)


@lru_cache(maxsize=256)
def f_zero(b: float) -> float:
    """f_b(0) = sqrt(pi) erf(sqrt(b)) / (2 sqrt(b)), continuous at b = 0."""
    if b == 0.0:
        return 1.0
    sqrt_b = math.sqrt(b)
    return SQRT_PI * math.erf(sqrt_b) / (2.0 * sqrt_b)


def phi(b: ConcentrationLike, t: float) -> float:
    """Normalized kernel f_b(t) / f_b(0); phi(b, 0) = 1 exactly, |phi| <= 1."""
    return phi_function(_b_value(b))(t)


def phi_function(b: ConcentrationLike) -> Callable[[float], float]:
    """The ratio t -> f_b(t) / f_b(0) with f_b(0) hoisted out.

    This is the hot path of every section integral, so the branch dispatch
    and the normalization happen once, here, rather than per call.
    """
    bv = _b_value(b)
    if bv < LEBESGUE_SWITCH:
        def phi_sinc(t: float) -> float:
            if t == 0.0:
                return 1.0
            return _sinc(t)

        return phi_sinc

    inv_f0 = 1.0 / f_zero(bv)

    def phi_closed(t: float) -> float:
        if t == 0.0:
            return 1.0
        value = _f_closed_value(bv, t) * inv_f0
        # |f_b(t)| < f_b(0) holds strictly; clamp only shaves rounding spill.
        if value > 1.0:
            return 1.0
        if value < -1.0:
            return -1.0
        return value

    return phi_closed
