"""Trigonometry kernel for 2D worlds of constant curvature.

All positions are polar pairs (r, theta) about a fixed reference point.
Positive curvature uses the spherical law of cosines, negative curvature
the hyperbolic one, and both collapse to the planar law near zero so a
curvature sweep through 0 stays continuous.

Every function here is pure and operates on immutable values; the module
is safe to call from any number of threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

TWO_PI = 2.0 * math.pi

# Default world radius in world units; at |k_norm| = 1 the boundary circle
# is exactly the sphere's antipodal circle (see Curvature.from_normalized).
DEFAULT_BOUNDARY_RADIUS = 300.0

# Use the planar law when |k_metric| * L^2 drops below this; between here
# and exact zero the curved formulas lose all their significant digits.
PLANAR_SWITCH = 1e-12

# Radii smaller than this (world units) have no usable bearing.
_EPS_R = 1e-9


class DegenerateTriangleError(ValueError):
    """A triangle angle was requested at a vertex with no defined frame."""


def normalize_bearing(theta: float) -> float:
    """Reduce an angle to the canonical [0, 2*pi) range."""
    if not math.isfinite(theta):
        raise ValueError(f"bearing must be finite, got {theta!r}")
    theta = theta % TWO_PI
    # % can round up to the modulus itself for tiny negative inputs
    return 0.0 if theta >= TWO_PI else theta


def wrap_signed(angle: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    a = math.fmod(angle, TWO_PI)
    if a > math.pi:
        a -= TWO_PI
    elif a <= -math.pi:
        a += TWO_PI
    return a


@dataclass(frozen=True)
class Curvature:
    """World curvature with its derived metric form and length scale.

    k_norm is the user-facing dial in [-1, 1]; k_metric carries units of
    1/world-unit^2 and is what the trig kernel consumes. scale is
    sqrt(|k_metric|), i.e. 1/R for a sphere of radius R.
    """

    k_norm: float
    k_metric: float
    scale: float

    @classmethod
    def from_normalized(
        cls, k_norm: float, boundary_radius: float = DEFAULT_BOUNDARY_RADIUS
    ) -> Curvature:
        """Map the normalized dial onto a metric curvature.

        k_metric = k_norm * (pi / boundary_radius)^2, so at k_norm = 1 the
        boundary circle sits exactly at the sphere's antipodal distance.
        """
        if not math.isfinite(k_norm) or abs(k_norm) > 1.0:
            raise ValueError(f"k_norm must lie in [-1, 1], got {k_norm!r}")
        if not boundary_radius > 0.0:
            raise ValueError("boundary_radius must be positive")
        unit = math.pi / boundary_radius
        k_metric = k_norm * unit * unit
        return cls(float(k_norm), k_metric, math.sqrt(abs(k_metric)))

    @classmethod
    def from_metric(cls, k_metric: float) -> Curvature:
        """Build directly from a metric curvature.

        The normalized value is taken against the tightest boundary
        (pi / scale), which keeps k_norm at +/-1 and inside its range.
        """
        if not math.isfinite(k_metric):
            raise ValueError("k_metric must be finite")
        if k_metric == 0.0:
            return PLANAR
        return cls(math.copysign(1.0, k_metric), float(k_metric), math.sqrt(abs(k_metric)))

    @property
    def antipode_radius(self) -> float:
        """Distance to the point opposite the reference point (inf if K <= 0)."""
        if self.k_metric > 0.0:
            return math.pi / self.scale
        return math.inf

    def planar_at(self, length: float) -> bool:
        """True when the planar branch applies at this length scale."""
        return abs(self.k_metric) * length * length < PLANAR_SWITCH


PLANAR = Curvature(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class PolarPoint:
    """Position as distance r >= 0 and bearing theta in [0, 2*pi)."""

    r: float
    theta: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r) and self.r >= 0.0):
            raise ValueError(f"radius must be finite and non-negative, got {self.r!r}")
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "theta", normalize_bearing(self.theta))


class ScreenPoint(NamedTuple):
    """Cartesian screen position in pixels."""

    x: float
    y: float


def _check_finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"expected finite value, got {v!r}")


def _clamp_unit(x: float) -> float:
    # guards float drift in products of trig terms before arccos
    if x > 1.0:
        return 1.0
    if x < -1.0:
        return -1.0
    return x


def side_from_sas(a: float, b: float, gamma: float, curvature: Curvature) -> float:
    """Third side of the geodesic triangle with sides a, b and included angle gamma.

    Lengths are multiplied by the curvature scale before the curved law of
    cosines and the result divided back, so inputs and output stay in world
    units. Falls back to the planar law below the PLANAR_SWITCH threshold.
    """
    _check_finite(a, b, gamma)
    k = curvature.k_metric
    longest = a if a >= b else b
    if abs(k) * longest * longest < PLANAR_SWITCH:
        c2 = a * a + b * b - 2.0 * a * b * math.cos(gamma)
        return math.sqrt(c2) if c2 > 0.0 else 0.0
    s = curvature.scale
    sa = a * s
    sb = b * s
    if k > 0.0:
        arg = math.cos(sa) * math.cos(sb) + math.sin(sa) * math.sin(sb) * math.cos(gamma)
        return math.acos(_clamp_unit(arg)) / s
    arg = math.cosh(sa) * math.cosh(sb) - math.sinh(sa) * math.sinh(sb) * math.cos(gamma)
    return math.acosh(arg if arg > 1.0 else 1.0) / s


def angle_from_sss(a: float, b: float, c: float, curvature: Curvature) -> float:
    """Angle opposite side c in the geodesic triangle with sides a, b, c.

    Raises DegenerateTriangleError when the vertex between a and b has no
    defined frame (either side vanishing, or at the spherical antipode).
    """
    _check_finite(a, b, c)
    k = curvature.k_metric
    longest = max(a, b, c)
    if abs(k) * longest * longest < PLANAR_SWITCH:
        denom = 2.0 * a * b
        if denom <= _EPS_R * _EPS_R:
            raise DegenerateTriangleError("triangle angle undefined: a side vanishes")
        return math.acos(_clamp_unit((a * a + b * b - c * c) / denom))
    s = curvature.scale
    sa = a * s
    sb = b * s
    sc = c * s
    if k > 0.0:
        denom = math.sin(sa) * math.sin(sb)
        if abs(denom) < 1e-15:
            raise DegenerateTriangleError(
                "triangle angle undefined: vertex at the reference point or its antipode"
            )
        num = math.cos(sc) - math.cos(sa) * math.cos(sb)
    else:
        denom = math.sinh(sa) * math.sinh(sb)
        if abs(denom) < 1e-15:
            raise DegenerateTriangleError("triangle angle undefined: a side vanishes")
        num = math.cosh(sa) * math.cosh(sb) - math.cosh(sc)
    return math.acos(_clamp_unit(num / denom))


def normalize_radius(p: PolarPoint, curvature: Curvature) -> PolarPoint:
    """Close the sphere: positions past the antipode re-enter from the far side.

    Identity for planar and hyperbolic worlds. On the sphere the geodesic
    through the reference point has period 2*pi*R, so r reduces modulo that
    and anything beyond pi*R folds back with the bearing flipped.
    """
    if curvature.k_metric <= 0.0:
        return p
    half = math.pi / curvature.scale
    if p.r <= half:
        return p
    full = 2.0 * half
    r = math.fmod(p.r, full)
    theta = p.theta
    if r > half:
        r = full - r
        theta = normalize_bearing(theta + math.pi)
    return PolarPoint(r, theta)


def project_to_screen(p: PolarPoint, pixels_per_unit: float) -> ScreenPoint:
    """Azimuthal equidistant projection: the polar pair is used directly."""
    rp = p.r * pixels_per_unit
    return ScreenPoint(rp * math.cos(p.theta), rp * math.sin(p.theta))


def oracle_distance(p1: PolarPoint, p2: PolarPoint, curvature: Curvature) -> float:
    """Geodesic distance via an explicit embedding, independent of the kernel.

    Spherical worlds embed into the 2-sphere (colatitude r*scale, longitude
    theta) and use the arccos of the 3D dot product; hyperbolic worlds embed
    into the hyperboloid model and use the arccosh of the Minkowski inner
    product. Intended as a test oracle, not a hot path.
    """
    k = curvature.k_metric
    if k > 0.0:
        radius = 1.0 / curvature.scale
        a = p1.r / radius
        b = p2.r / radius
        x1, y1, z1 = math.sin(a) * math.cos(p1.theta), math.sin(a) * math.sin(p1.theta), math.cos(a)
        x2, y2, z2 = math.sin(b) * math.cos(p2.theta), math.sin(b) * math.sin(p2.theta), math.cos(b)
        dot = x1 * x2 + y1 * y2 + z1 * z2
        return radius * math.acos(_clamp_unit(dot))
    if k < 0.0:
        scale_len = 1.0 / curvature.scale
        a = p1.r / scale_len
        b = p2.r / scale_len
        x1, y1, z1 = math.sinh(a) * math.cos(p1.theta), math.sinh(a) * math.sin(p1.theta), math.cosh(a)
        x2, y2, z2 = math.sinh(b) * math.cos(p2.theta), math.sinh(b) * math.sin(p2.theta), math.cosh(b)
        minkowski = x1 * x2 + y1 * y2 - z1 * z2
        return scale_len * math.acosh(max(1.0, -minkowski))
    dx = p2.r * math.cos(p2.theta) - p1.r * math.cos(p1.theta)
    dy = p2.r * math.sin(p2.theta) - p1.r * math.sin(p1.theta)
    return math.hypot(dx, dy)
