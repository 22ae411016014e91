"""Gaussian-weighted measures of central hyperplane sections of [-1, 1]^n.

The section measure A(u) orthogonal to a unit vector u equals twice the
density at zero of <X, u> when X is drawn from the normalized weight
exp(-b ||x||^2) on the cube.  For the main diagonal this is the classical
Fourier-type representation

    A = (2/pi) * integral_0^inf  phi_b(r / sqrt(n))^n  dr,

with phi_b the normalized cosine-Gaussian kernel; the same product
structure generalizes to arbitrary directions with phi evaluated at
r |u_j| per coordinate.

Two independent routes to the same quantity live here: the Fourier route
above and the slab oracle, which measures {|<x, u>| <= t} directly by
low-dimensional adaptive quadrature and extrapolates the difference
quotient to t -> 0.  Their agreement is one of the package's core checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from . import kernel, quadrature
from .errors import DomainError, ExtrapolationInstabilityError
from .kernel import ConcentrationLike, ConcentrationParam, _b_value
from .quadrature import IntegralResult, QuadratureConfig
from .specfun import SQRT_PI

TWO_OVER_PI = 2.0 / math.pi

KIND_DIAGONAL = "diagonal"
KIND_AXIS = "axis"
KIND_TWO_COORD = "two_coord"
KIND_EXPLICIT = "explicit"

_COORD_CUTOFF = 1e-12
_NORM_TOL = 1e-12

#: Default t-grid for the slab difference quotient (Richardson nodes).
SLAB_T_GRID = (1e-2, 5e-3, 2.5e-3)


@dataclass(frozen=True)
class Direction:
    """A unit vector in R^n, by name or by explicit coordinates."""

    n: int
    kind: str
    axis_index: int = 0
    coords: Optional[tuple] = None

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"ambient dimension must be >= 1, got {self.n}")
        if self.kind not in (KIND_DIAGONAL, KIND_AXIS, KIND_TWO_COORD, KIND_EXPLICIT):
            raise DomainError(f"unknown direction kind {self.kind!r}")
        if self.kind == KIND_AXIS and not (0 <= self.axis_index < self.n):
            raise DomainError(f"axis index {self.axis_index} outside 0..{self.n - 1}")
        if self.kind == KIND_TWO_COORD and self.n < 2:
            raise DomainError("two_coord requires n >= 2")
        if self.kind == KIND_EXPLICIT:
            if self.coords is None or len(self.coords) != self.n:
                raise DomainError("explicit direction needs exactly n coordinates")
            norm = math.sqrt(math.fsum(c * c for c in self.coords))
            if abs(norm - 1.0) > _NORM_TOL:
                raise DomainError(f"explicit direction norm {norm!r} is not 1")

    @classmethod
    def diagonal(cls, n: int) -> "Direction":
        return cls(n=n, kind=KIND_DIAGONAL)

    @classmethod
    def axis(cls, n: int, j: int = 0) -> "Direction":
        return cls(n=n, kind=KIND_AXIS, axis_index=j)

    @classmethod
    def two_coord(cls, n: int) -> "Direction":
        return cls(n=n, kind=KIND_TWO_COORD)

    @classmethod
    def explicit(cls, coords: Sequence[float]) -> "Direction":
        return cls(n=len(coords), kind=KIND_EXPLICIT, coords=tuple(float(c) for c in coords))

    def coordinates(self) -> tuple:
        if self.kind == KIND_DIAGONAL:
            inv = 1.0 / math.sqrt(self.n)
            return (inv,) * self.n
        if self.kind == KIND_AXIS:
            return tuple(1.0 if j == self.axis_index else 0.0 for j in range(self.n))
        if self.kind == KIND_TWO_COORD:
            inv = 1.0 / math.sqrt(2.0)
            return (inv, inv) + (0.0,) * (self.n - 2)
        return self.coords

    def magnitudes(self) -> tuple:
        """Sorted (descending) absolute coordinates above the cutoff; only
        this multiset enters any section value."""
        mags = sorted((abs(c) for c in self.coordinates() if abs(c) >= _COORD_CUTOFF), reverse=True)
        return tuple(mags)


@dataclass(frozen=True)
class SectionQuery:
    """One section computation: dimension, weight, direction, tolerances."""

    n: int
    b: ConcentrationParam
    direction: Direction
    quadrature: QuadratureConfig

    def __post_init__(self):
        if self.direction.n != self.n:
            raise DomainError(
                f"direction lives in dimension {self.direction.n}, query says {self.n}"
            )


@dataclass(frozen=True)
class ScanRow:
    n: int
    b: float
    value: float
    error_estimate: float


@dataclass(frozen=True)
class ScanTable:
    """Rows (n, b, A, error estimate), sorted by strictly increasing n."""

    rows: tuple

    def __post_init__(self):
        for prev, cur in zip(self.rows, self.rows[1:]):
            if cur.n <= prev.n:
                raise DomainError("scan rows must have strictly increasing n")
        for row in self.rows:
            if not row.value > 0.0:
                raise DomainError("scan values must be positive")

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)


def integrand(n: int, b: ConcentrationLike, r: float) -> float:
    """phi_b(r / sqrt(n))^n, evaluated in sign/log space.

    The power is formed as sign * exp(n * log |phi|) so that n up to 10^6
    neither overflows nor raises on underflow (it flushes to zero).
    """
    if n < 1:
        raise DomainError(f"integrand requires n >= 1, got {n}")
    if not math.isfinite(r) or r < 0.0:
        raise DomainError(f"integrand requires r >= 0, got {r!r}")
    phi_fn = kernel.phi_function(b)
    return _power(phi_fn(r / math.sqrt(n)), n)


def _power(p: float, n: int) -> float:
    if p == 0.0:
        return 0.0
    sign = -1.0 if (p < 0.0 and n % 2 == 1) else 1.0
    return sign * math.exp(n * math.log(abs(p)))


def _grouped(magnitudes) -> tuple:
    """Collapse a magnitude multiset into (magnitude, multiplicity) pairs so
    the diagonal costs one kernel evaluation per r, not n."""
    groups = []
    for m in magnitudes:
        if groups and groups[-1][0] == m:
            groups[-1][1] += 1
        else:
            groups.append([m, 1])
    return tuple((m, k) for m, k in groups)


def _product_integrand(groups, phi_fn):
    """r -> prod_j phi(r |u_j|)^(mult_j) in sign/log space, fixed order."""

    def f(r: float) -> float:
        log_sum = 0.0
        sign = 1.0
        for magnitude, multiplicity in groups:
            p = phi_fn(r * magnitude)
            if p == 0.0:
                return 0.0
            if p < 0.0:
                if multiplicity % 2 == 1:
                    sign = -sign
                p = -p
            log_sum += multiplicity * math.log(p)
        return sign * math.exp(log_sum)

    return f


def _decay_tail_bound(groups, f0):
    """Analytic bound on the truncated tail of the product integrand.

    |phi_b(t)| <= 1 / (f0 t) gives |prod| <= prod_j (f0 R |u_j|)^(-mult_j);
    integrating the power bound from R yields C * R^(1-m) / (m-1) with m the
    total multiplicity.  Evaluated in log space so huge n cannot overflow.
    """
    m = sum(mult for _, mult in groups)
    log_c = -math.fsum(mult * math.log(f0 * mag) for mag, mult in groups)
    smallest = min(mag for mag, _ in groups)
    threshold = 1.0 / (f0 * smallest)  # below this some factor bound exceeds 1

    def bound(radius: float) -> float:
        if radius <= threshold:
            return math.inf
        log_tail = log_c + (1.0 - m) * math.log(radius) - math.log(m - 1.0)
        if log_tail > 700.0:
            return math.inf
        return math.exp(log_tail)

    return bound


def _section_config(cfg: Optional[QuadratureConfig], b: float, n_effective: float,
                    panel_width: float) -> QuadratureConfig:
    """Fill oscillation-aware geometry into a caller config (or the default).

    The initial radius covers the Gaussian-type envelope (8 sqrt(b n)) and
    the initial panel width resolves the fastest kernel oscillation (a
    quarter of its half-period), both only when the caller left them unset.
    """
    if cfg is None:
        cfg = QuadratureConfig(
            initial_truncation_radius=max(64.0, 8.0 * math.sqrt(b * n_effective)),
            initial_panel_width=panel_width,
        )
    elif cfg.initial_panel_width is None:
        cfg = replace(cfg, initial_panel_width=panel_width)
    return cfg


def _fourier_section(groups, b: float, cfg: Optional[QuadratureConfig],
                     n_effective: float, snap_period: Optional[float]) -> IntegralResult:
    phi_fn = kernel.phi_function(b)
    f0 = kernel.f_zero(b if b >= kernel.LEBESGUE_SWITCH else 0.0)
    f = _product_integrand(groups, phi_fn)
    tail = _decay_tail_bound(groups, f0)
    fastest = max(mag for mag, _ in groups)
    cfg = _section_config(cfg, b, n_effective, 0.25 * math.pi / fastest)
    result = quadrature.integrate_semi_infinite(
        f, cfg, tail, window_period=snap_period, extrapolate=True
    )
    return replace(
        result,
        value=TWO_OVER_PI * result.value,
        error_estimate=TWO_OVER_PI * result.error_estimate,
    )


def diagonal_section(
    n: int, b: ConcentrationLike, cfg: Optional[QuadratureConfig] = None
) -> IntegralResult:
    """A(diagonal) for n >= 2 via the Fourier representation.

    n = 1 is rejected: the integral is only conditionally convergent there
    and the axis closed form 1 / f_b(0) answers it exactly.

    All integrand components oscillate at integer multiples of the base
    frequency 1/sqrt(n), so the truncation windows are snapped to the
    common period 2 pi sqrt(n); see the quadrature module for why that
    makes the tail extrapolation exact.
    """
    if n < 2:
        raise DomainError(
            "diagonal_section requires n >= 2; for n = 1 use the axis closed form"
        )
    bv = _b_value(b)
    sqrt_n = math.sqrt(n)
    groups = ((1.0 / sqrt_n, n),)
    return _fourier_section(groups, bv, cfg, float(n), 2.0 * math.pi * sqrt_n)


def direction_section(query: SectionQuery) -> IntegralResult:
    """A(u) for a named or explicit direction.

    Axis directions bypass quadrature entirely: the value is the closed
    form 1 / f_b(0) (the Fourier integral is only conditionally convergent
    there).  The two-coordinate direction is independent of the ambient
    dimension and is computed identically for every n.  Only the multiset
    of |u_j| enters, so permuting or flipping coordinates cannot change
    the result even in the last bit.
    """
    bv = query.b.b
    direction = query.direction
    if direction.kind == KIND_AXIS:
        f0 = kernel.f_zero(bv)
        value = 1.0 / f0
        return IntegralResult(value, 4.0 * abs(value) * 2.22e-16, 1, None, False)
    if direction.kind == KIND_DIAGONAL:
        return diagonal_section(query.n, bv, query.quadrature)
    if direction.kind == KIND_TWO_COORD:
        groups = ((1.0 / math.sqrt(2.0), 2),)
        return _fourier_section(
            groups, bv, query.quadrature, 2.0, 2.0 * math.pi * math.sqrt(2.0)
        )
    magnitudes = direction.magnitudes()
    if len(magnitudes) < 2:
        raise DomainError(
            "explicit directions need at least two coordinates above 1e-12; "
            "axis-like directions have the closed form 1 / f_b(0)"
        )
    # No common oscillation period in general: windows stay unsnapped and the
    # extrapolation only removes the smooth part of the tail; the rest is in
    # the error estimate.
    return _fourier_section(
        _grouped(magnitudes), bv, query.quadrature, float(len(magnitudes)), None
    )


def scan(
    n_min: int,
    n_max: int,
    b: ConcentrationLike,
    cfg: Optional[QuadratureConfig] = None,
) -> ScanTable:
    """Diagonal section values for every n in [n_min, n_max], in order."""
    if not (2 <= n_min <= n_max):
        raise DomainError(f"scan requires 2 <= n_min <= n_max, got {n_min}..{n_max}")
    bv = _b_value(b)
    rows = []
    for n in range(n_min, n_max + 1):
        result = diagonal_section(n, bv, cfg)
        rows.append(ScanRow(n=n, b=bv, value=result.value, error_estimate=result.error_estimate))
    return ScanTable(rows=tuple(rows))


# ----------------------------------------------------------------------
# Slab oracle: the defining limit, measured directly in dimensions 2 and 3.
# ----------------------------------------------------------------------

_SLAB_CFG_INNER = QuadratureConfig(rel_tol=1e-12, abs_tol=1e-14)
_SLAB_CFG_OUTER = QuadratureConfig(rel_tol=1e-11, abs_tol=1e-13)


def _weight_integral(b: float, lo: float, hi: float) -> float:
    """integral_lo^hi exp(-b s^2) ds, exact via erf (or length at b = 0)."""
    if b == 0.0:
        return hi - lo
    scale = SQRT_PI / (2.0 * math.sqrt(b))
    sb = math.sqrt(b)
    return scale * (math.erf(sb * hi) - math.erf(sb * lo))


def _clip_kinks(candidates) -> list:
    edges = sorted({-1.0, 1.0, *(x for x in candidates if -1.0 < x < 1.0)})
    return edges


def slab_measure_oracle(n: int, b: ConcentrationLike, u: Direction, t: float) -> float:
    """Probability of the slab {x in C^n : |<x, u>| <= t} under the
    normalized weight, for n in {2, 3}.

    The innermost coordinate integrates in closed form via erf; the outer
    coordinates are handled by adaptive quadrature with the integration
    ranges pre-split at the (analytically known) points where the clipped
    slab bounds cross the cube faces, so every panel sees a smooth piece.
    Coordinates of u below 1e-12 drop out of the constraint and integrate
    to a factor of one.
    """
    if n not in (2, 3):
        raise DomainError(f"slab_measure_oracle covers n in {{2, 3}}, got {n}")
    if u.n != n:
        raise DomainError(f"direction dimension {u.n} does not match n = {n}")
    if not (math.isfinite(t) and t > 0.0):
        raise DomainError(f"slab half-width must be positive, got {t!r}")
    bv = _b_value(b)
    # Signs never matter: the slab is symmetric under per-coordinate flips.
    active = sorted((abs(c) for c in u.coordinates() if abs(c) >= _COORD_CUTOFF))
    norm = 2.0 * kernel.f_zero(bv)  # one-coordinate normalizer
    if not active:
        raise DomainError("direction has no coordinates above the cutoff")

    if len(active) == 1:
        # |u1 x1| <= t: a strip in one coordinate, everything else integrates out.
        u1 = active[0]
        reach = min(1.0, t / u1)
        return _weight_integral(bv, -reach, reach) / norm

    if len(active) == 2:
        u1, u2 = active[0], active[1]  # u2 is the larger: inner coordinate

        def outer_integrand(x1: float) -> float:
            lo = (-t - u1 * x1) / u2
            hi = (t - u1 * x1) / u2
            lo = max(lo, -1.0)
            hi = min(hi, 1.0)
            if hi <= lo:
                return 0.0
            return math.exp(-bv * x1 * x1) * _weight_integral(bv, lo, hi)

        kinks = [
            (s_t - u2 * face) / u1
            for s_t in (-t, t)
            for face in (-1.0, 1.0)
        ]
        edges = _clip_kinks(kinks)
        total = 0.0
        for i in range(len(edges) - 1):
            total += quadrature.integrate_finite(
                outer_integrand, edges[i], edges[i + 1], _SLAB_CFG_OUTER
            ).value
        return total / norm ** 2

    u1, u2, u3 = active[0], active[1], active[2]  # u3 largest: innermost

    def middle_value(x1: float) -> float:
        def inner_integrand(x2: float) -> float:
            lo = (-t - u1 * x1 - u2 * x2) / u3
            hi = (t - u1 * x1 - u2 * x2) / u3
            lo = max(lo, -1.0)
            hi = min(hi, 1.0)
            if hi <= lo:
                return 0.0
            return math.exp(-bv * x2 * x2) * _weight_integral(bv, lo, hi)

        kinks = [
            (s_t - u1 * x1 - u3 * face) / u2
            for s_t in (-t, t)
            for face in (-1.0, 1.0)
        ]
        edges = _clip_kinks(kinks)
        total = 0.0
        for i in range(len(edges) - 1):
            total += quadrature.integrate_finite(
                inner_integrand, edges[i], edges[i + 1], _SLAB_CFG_INNER
            ).value
        return math.exp(-bv * x1 * x1) * total

    kinks = [
        (s_t - u2 * f2 - u3 * f3) / u1
        for s_t in (-t, t)
        for f2 in (-1.0, 1.0)
        for f3 in (-1.0, 1.0)
    ]
    edges = _clip_kinks(kinks)
    total = 0.0
    for i in range(len(edges) - 1):
        total += quadrature.integrate_finite(
            middle_value, edges[i], edges[i + 1], _SLAB_CFG_OUTER
        ).value
    return total / norm ** 3


def slab_limit_oracle(
    n: int,
    b: ConcentrationLike,
    u: Direction,
    t_grid: Sequence[float] = SLAB_T_GRID,
    convention: str = "doubled",
) -> float:
    """The defining limit of the section measure, via the slab oracle.

    The difference quotient q(t) = slab(t) / (2t) is extrapolated to t = 0
    by polynomial extrapolation in t.  The slab measure is an even function
    of the signed half-width, but its one-sided expansion contains odd
    powers of t whenever the density of <X, u> has a kink at the origin
    (it does for n = 2), so the extrapolation must eliminate the linear
    term, not assume a pure t^2 expansion.

    ``convention="doubled"`` (default) returns 2 q(0+), directly comparable
    to the Fourier-route section values; ``convention="raw"`` returns the
    bare probability-density limit q(0+).
    """
    if convention not in ("doubled", "raw"):
        raise DomainError(f"unknown convention {convention!r}")
    ts = sorted(t_grid, reverse=True)
    if len(ts) < 2:
        raise DomainError("slab_limit_oracle needs at least two t values")
    qs = [slab_measure_oracle(n, b, u, t) / (2.0 * t) for t in ts]
    deltas = [qs[i + 1] - qs[i] for i in range(len(qs) - 1)]
    for first, second in zip(deltas, deltas[1:]):
        if first == 0.0 and second == 0.0:
            continue
        if first * second < 0.0 or abs(second) > abs(first):
            raise ExtrapolationInstabilityError(
                f"slab difference quotients are not monotone-converging: {qs}"
            )
    limit = quadrature.extrapolate_at_zero(ts, qs)
    return 2.0 * limit if convention == "doubled" else limit
