"""Body motion along geodesics with orientation transport and the boundary wrap.

A body's velocity is a speed plus a local bearing gamma measured like the
shape module's local angles: gamma = 0 points at the world reference point,
gamma = pi points away, and positive gamma turns clockwise on screen. The
facing angle beta uses the same frame, so alpha = beta - gamma is the
offset between facing and direction of motion; a geodesic step must leave
alpha untouched for a body that is not spinning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .geometry import (
    TWO_PI,
    Curvature,
    PolarPoint,
    angle_from_sss,
    normalize_bearing,
    normalize_radius,
    side_from_sas,
)
from .shapes import Pose, Shape

# Radii below this have no usable local frame (same rule as the shape module).
_EPS_R = 1e-9


@dataclass(frozen=True)
class Velocity:
    """Speed in world units per second and local bearing of motion."""

    speed: float
    gamma: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.speed) and self.speed >= 0.0):
            raise ValueError(f"speed must be finite and non-negative, got {self.speed!r}")
        object.__setattr__(self, "speed", float(self.speed))
        object.__setattr__(self, "gamma", normalize_bearing(self.gamma))


@dataclass(frozen=True)
class Body:
    """A simulated object: pose, motion state, and shape."""

    id: str
    pose: Pose
    velocity: Velocity
    shape: Shape
    acceleration: float = 0.0
    rotation_speed: float = 0.0
    wraps: bool = True


def _step_position(
    r: float, theta: float, gamma: float, beta: float, r_p: float, curvature: Curvature
) -> tuple[float, float, float, float]:
    """One geodesic step of arc length r_p; returns (r, theta, gamma, beta).

    Solves the triangle formed by the reference point and the two body
    positions. gamma is folded into [0, pi] first; whether the explement was
    taken decides the sign of the bearing change. The new gamma is the
    supplement of the triangle's angle at the endpoint (mirrored back if the
    fold was taken), and beta moves so that beta - gamma stays constant.
    """
    alpha = beta - gamma

    if r < _EPS_R:
        # no frame at the reference point: the step leaves radially
        theta = normalize_bearing(theta + math.pi - gamma)
        gamma = math.pi
        return r_p, theta, gamma, normalize_bearing(gamma + alpha)
    if curvature.k_metric > 0.0 and curvature.antipode_radius - r < _EPS_R:
        # leaving the antipode: every path is a meridian back toward the
        # reference point; orientation mirrored relative to the origin rule
        theta = normalize_bearing(theta + math.pi + gamma)
        gamma = 0.0
        rr = curvature.antipode_radius - r_p
        if rr < 0.0:
            rr = -rr
            theta = normalize_bearing(theta + math.pi)
        r_new = normalize_radius(PolarPoint(rr, theta), curvature)
        return r_new.r, r_new.theta, gamma, normalize_bearing(gamma + alpha)

    folded = gamma > math.pi
    gamma_used = TWO_PI - gamma if folded else gamma
    r_t1 = side_from_sas(r, r_p, gamma_used, curvature)

    if r_t1 < _EPS_R:
        # landed on the reference point; keep the bearing, aim onward
        return r_t1, theta, 0.0, normalize_bearing(alpha)
    if curvature.k_metric > 0.0 and curvature.antipode_radius - r_t1 < _EPS_R:
        # landed on the antipode; gamma = 0 makes the next step continue
        # onto the far meridian
        return r_t1, theta, 0.0, normalize_bearing(alpha)

    delta_theta = angle_from_sss(r, r_t1, r_p, curvature)
    gamma_prime = angle_from_sss(r_p, r_t1, r, curvature)
    if folded:
        theta = normalize_bearing(theta - delta_theta)
        gamma = normalize_bearing(math.pi + gamma_prime)
    else:
        theta = normalize_bearing(theta + delta_theta)
        gamma = normalize_bearing(math.pi - gamma_prime)
    return r_t1, theta, gamma, normalize_bearing(gamma + alpha)


def step_body(body: Body, dt: float, curvature: Curvature) -> Body:
    """Advance a body by dt seconds.

    Order per step: thrust updates the velocity vector, the body moves along
    its geodesic with the new speed, spin is added after the transport, and
    the position is re-normalized.
    """
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    speed = body.velocity.speed
    gamma = body.velocity.gamma
    beta = body.pose.rotation

    if body.acceleration != 0.0:
        # velocity and thrust combine as plane vectors in the local frame
        push = body.acceleration * dt
        vx = speed * math.cos(gamma) + push * math.cos(beta)
        vy = speed * math.sin(gamma) + push * math.sin(beta)
        speed = math.hypot(vx, vy)
        if speed > 0.0:
            gamma = normalize_bearing(math.atan2(vy, vx))

    pos = body.pose.position
    r, theta = pos.r, pos.theta
    r_p = speed * dt
    if r_p > _EPS_R:
        r, theta, gamma, beta = _step_position(r, theta, gamma, beta, r_p, curvature)

    if body.rotation_speed != 0.0:
        beta = normalize_bearing(beta + body.rotation_speed * dt)

    new_pos = normalize_radius(PolarPoint(r, theta), curvature)
    return replace(
        body,
        pose=Pose(new_pos, beta),
        velocity=Velocity(speed, gamma),
    )


def wrap_boundary(body: Body, boundary_radius: float) -> Body:
    """Re-enter from the antipodal boundary point once the centre leaves the world.

    The bearing gains pi; gamma and beta gain pi as well, which keeps both
    the velocity direction and the facing unchanged on screen, so a planar
    trajectory continues along the translated straight line.
    """
    if not boundary_radius > 0.0:
        raise ValueError("boundary radius must be positive")
    if not body.wraps or body.pose.position.r <= boundary_radius:
        return body
    theta = normalize_bearing(body.pose.position.theta + math.pi)
    gamma = normalize_bearing(body.velocity.gamma + math.pi)
    beta = normalize_bearing(body.pose.rotation + math.pi)
    return replace(
        body,
        pose=Pose(PolarPoint(boundary_radius, theta), beta),
        velocity=Velocity(body.velocity.speed, gamma),
    )


def apply_input(body: Body, action: str, value: float) -> Body:
    """Steering input: thrust sets the acceleration, rotate the spin rate."""
    if action == "thrust":
        return replace(body, acceleration=float(value))
    if action == "rotate":
        return replace(body, rotation_speed=float(value))
    raise ValueError(f"unknown input action: {action!r}")
