"""Shape outlines: local vertices to global polar coordinates, plus edge tessellation.

A shape stores its vertices in local polar coordinates whose reference
direction points from the body toward the world reference point. Local
bearings grow clockwise on screen: a local bearing beta maps to the global
direction (theta_c + pi - beta), so beta = 0 aims at the reference point
and beta in (0, pi) lands the vertex at a greater global bearing.

Edges always follow geodesics; rendering subdivides each edge into equal
arc segments. The per-edge math is vectorized with numpy because outlines
dominate the frame budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    TWO_PI,
    Curvature,
    DegenerateTriangleError,
    PolarPoint,
    angle_from_sss,
    normalize_bearing,
    side_from_sas,
    wrap_signed,
)

DEFAULT_TESSELLATION = 16

# Below this r (world units) a pose has no usable local frame.
_EPS_R = 1e-9

# Edges shorter than this produce no intermediate points.
_EDGE_EPS = 1e-12


@dataclass(frozen=True)
class Shape:
    """Ordered local vertices, segments per edge, and the closed flag."""

    vertices: tuple[PolarPoint, ...]
    tessellation: int = DEFAULT_TESSELLATION
    closed: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(self.vertices) < 1:
            raise ValueError("a shape needs at least one vertex")
        if self.tessellation < 1:
            raise ValueError("tessellation must be >= 1")


@dataclass(frozen=True)
class Pose:
    """Global position plus the body's rotation in local coordinates."""

    position: PolarPoint
    rotation: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotation", normalize_bearing(self.rotation))


@dataclass(frozen=True)
class EdgeGeometry:
    """Geodesic edge length, bearing sweep at the reference point, and its sign.

    direction is +1.0 when walking the edge from the first vertex increases
    the global bearing, -1.0 otherwise.
    """

    d: float
    delta_theta: float
    direction: float


def _wrap_signed_arr(x: np.ndarray) -> np.ndarray:
    """Array version of wrap_signed: reduce to (-pi, pi]."""
    a = np.mod(x, TWO_PI)
    return np.where(a > math.pi, a - TWO_PI, a)


def _degenerate_frame(r: float, curvature: Curvature) -> str | None:
    """Classify poses whose toward-reference direction is undefined."""
    if r < _EPS_R:
        return "origin"
    if curvature.k_metric > 0.0 and curvature.antipode_radius - r < _EPS_R:
        return "antipode"
    return None


def vertex_global(pose: Pose, v: PolarPoint, curvature: Curvature) -> PolarPoint:
    """Global polar coordinates of one local vertex.

    beta = rotation + local bearing; when beta exceeds pi its explement is
    used and the bearing offset flips sign, which selects the correct side
    of the line through the reference point and the body.
    """
    theta_c = pose.position.theta
    if v.r < _EPS_R:
        return pose.position
    beta = normalize_bearing(pose.rotation + v.theta)
    degenerate = _degenerate_frame(pose.position.r, curvature)
    if degenerate == "origin":
        # limit of the general rule as the pose radius shrinks to zero
        return PolarPoint(v.r, normalize_bearing(theta_c + math.pi - beta))
    folded = beta > math.pi
    beta_used = TWO_PI - beta if folded else beta
    r_v = side_from_sas(pose.position.r, v.r, beta_used, curvature)
    if _degenerate_frame(r_v, curvature) is not None:
        # vertex lands on the reference point or its antipode: bearing is arbitrary
        return PolarPoint(r_v, theta_c)
    if degenerate == "antipode":
        # every direction from the antipode is a meridian; orientation is
        # mirrored relative to the origin rule
        return PolarPoint(r_v, normalize_bearing(theta_c + math.pi + beta))
    delta = angle_from_sss(pose.position.r, r_v, v.r, curvature)
    theta_v = theta_c - delta if folded else theta_c + delta
    return PolarPoint(r_v, normalize_bearing(theta_v))


def edge_geometry(
    theta_c: float, v1: PolarPoint, v2: PolarPoint, curvature: Curvature
) -> EdgeGeometry:
    """Edge length and bearing sweep between two global vertices.

    The sweep reduces theta_c - theta_i to (-pi, pi] for both endpoints;
    opposite signs mean the vertices straddle the line to the body (their
    magnitudes add), matching signs mean they fall on the same side (the
    magnitudes subtract). Both cases collapse to |wrap(theta2 - theta1)|.
    """
    d1 = wrap_signed(theta_c - v1.theta)
    d2 = wrap_signed(theta_c - v2.theta)
    sweep = wrap_signed(d1 - d2)
    delta = abs(sweep)
    direction = 1.0 if sweep >= 0.0 else -1.0
    d = side_from_sas(v1.r, v2.r, delta, curvature)
    return EdgeGeometry(d, delta, direction)


def _use_planar(curvature: Curvature, longest: float) -> bool:
    return curvature.k_metric == 0.0 or curvature.planar_at(longest)


def _batch_intermediates(
    r1: np.ndarray,
    theta1: np.ndarray,
    theta2: np.ndarray,
    d: np.ndarray,
    alpha: np.ndarray,
    direction: np.ndarray,
    n: int,
    curvature: Curvature,
) -> tuple[np.ndarray, np.ndarray]:
    """Intermediate points for a batch of curved edges, shape (edges, n - 1).

    Inputs are per-edge scalars; the arc fractions broadcast across the
    second axis. Degenerate rows (start at the reference point or its
    antipode, or zero-length edges) are patched afterwards.
    """
    k = curvature.k_metric
    s = curvature.scale
    frac = np.arange(1, n, dtype=float) / n
    d_i = d[:, None] * frac[None, :]

    at_origin = r1 < _EPS_R
    if k > 0.0:
        degenerate_start = at_origin | (curvature.antipode_radius - r1 < _EPS_R)
    else:
        degenerate_start = at_origin
    alpha = np.where(degenerate_start, 0.0, alpha)
    zero_edge = d < _EDGE_EPS

    with np.errstate(invalid="ignore", divide="ignore"):
        if k > 0.0:
            sr1 = r1 * s
            cos_r1 = np.cos(sr1)[:, None]
            sin_r1 = np.sin(sr1)[:, None]
            sd = d_i * s
            arg = cos_r1 * np.cos(sd) + sin_r1 * np.sin(sd) * np.cos(alpha)[:, None]
            sri = np.arccos(np.clip(arg, -1.0, 1.0))
            r_i = sri / s
            den = sin_r1 * np.sin(sri)
            num = np.cos(sd) - cos_r1 * np.cos(sri)
        else:
            sr1 = r1 * s
            cosh_r1 = np.cosh(sr1)[:, None]
            sinh_r1 = np.sinh(sr1)[:, None]
            sd = d_i * s
            arg = cosh_r1 * np.cosh(sd) - sinh_r1 * np.sinh(sd) * np.cos(alpha)[:, None]
            sri = np.arccosh(np.maximum(arg, 1.0))
            r_i = sri / s
            den = sinh_r1 * np.sinh(sri)
            num = cosh_r1 * np.cosh(sri) - np.cosh(sd)
        dth = np.arccos(np.clip(num / den, -1.0, 1.0))

    theta_i = np.mod(theta1[:, None] + direction[:, None] * dth, TWO_PI)
    # walking away from a degenerate start follows the target's meridian
    if degenerate_start.any():
        theta_i = np.where(degenerate_start[:, None], theta2[:, None], theta_i)
    # points that land on the reference point keep the start bearing
    hit_center = r_i < _EPS_R
    if hit_center.any():
        theta_i = np.where(hit_center, theta1[:, None], theta_i)
    if zero_edge.any():
        r_i = np.where(zero_edge[:, None], r1[:, None], r_i)
        theta_i = np.where(zero_edge[:, None], theta1[:, None], theta_i)
    return r_i, theta_i


def _batch_intermediates_planar(
    r1: np.ndarray,
    theta1: np.ndarray,
    r2: np.ndarray,
    theta2: np.ndarray,
    n: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Planar edges interpolate linearly in Cartesian coordinates."""
    frac = np.arange(1, n, dtype=float) / n
    x1 = r1 * np.cos(theta1)
    y1 = r1 * np.sin(theta1)
    x2 = r2 * np.cos(theta2)
    y2 = r2 * np.sin(theta2)
    x = x1[:, None] + (x2 - x1)[:, None] * frac[None, :]
    y = y1[:, None] + (y2 - y1)[:, None] * frac[None, :]
    r_i = np.hypot(x, y)
    theta_i = np.mod(np.arctan2(y, x), TWO_PI)
    return r_i, theta_i


def tessellate_edge(
    v1: PolarPoint,
    v2: PolarPoint,
    eg: EdgeGeometry,
    n: int,
    curvature: Curvature,
) -> list[PolarPoint]:
    """The n - 1 points that split the edge into n equal arcs.

    Endpoints are excluded so concatenated edges never duplicate vertices.
    A zero-length edge yields no points.
    """
    if n < 1:
        raise ValueError("segment count must be >= 1")
    if n == 1 or eg.d < _EDGE_EPS:
        return []
    if _use_planar(curvature, max(v1.r, v2.r, eg.d)):
        r_i, theta_i = _batch_intermediates_planar(
            np.array([v1.r]), np.array([v1.theta]), np.array([v2.r]), np.array([v2.theta]), n
        )
    else:
        try:
            alpha = angle_from_sss(v1.r, eg.d, v2.r, curvature)
        except DegenerateTriangleError:
            alpha = 0.0
        r_i, theta_i = _batch_intermediates(
            np.array([v1.r]),
            np.array([v1.theta]),
            np.array([v2.theta]),
            np.array([eg.d]),
            np.array([alpha]),
            np.array([eg.direction]),
            n,
            curvature,
        )
    return [PolarPoint(r, t) for r, t in zip(r_i[0].tolist(), theta_i[0].tolist())]


def _batch_vertices(
    r_c: np.ndarray,
    theta_c: np.ndarray,
    rotation: np.ndarray,
    v_r: np.ndarray,
    v_theta: np.ndarray,
    curvature: Curvature,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized vertex_global over per-vertex pose and local arrays."""
    k = curvature.k_metric
    s = curvature.scale
    beta = np.mod(rotation + v_theta, TWO_PI)
    folded = beta > math.pi
    beta_used = np.where(folded, TWO_PI - beta, beta)

    with np.errstate(invalid="ignore", divide="ignore"):
        if _use_planar(curvature, max(float(r_c.max(initial=0.0)), float(v_r.max(initial=0.0)))):
            r_v = np.sqrt(
                np.maximum(
                    r_c * r_c + v_r * v_r - 2.0 * r_c * v_r * np.cos(beta_used), 0.0
                )
            )
            den = 2.0 * r_c * r_v
            num = r_c * r_c + r_v * r_v - v_r * v_r
        elif k > 0.0:
            sc, sv = r_c * s, v_r * s
            arg = np.cos(sc) * np.cos(sv) + np.sin(sc) * np.sin(sv) * np.cos(beta_used)
            srv = np.arccos(np.clip(arg, -1.0, 1.0))
            r_v = srv / s
            den = np.sin(sc) * np.sin(srv)
            num = np.cos(sv) - np.cos(sc) * np.cos(srv)
        else:
            sc, sv = r_c * s, v_r * s
            arg = np.cosh(sc) * np.cosh(sv) - np.sinh(sc) * np.sinh(sv) * np.cos(beta_used)
            srv = np.arccosh(np.maximum(arg, 1.0))
            r_v = srv / s
            den = np.sinh(sc) * np.sinh(srv)
            num = np.cosh(sc) * np.cosh(srv) - np.cosh(sv)
        delta = np.arccos(np.clip(num / den, -1.0, 1.0))

    theta_v = np.mod(theta_c + np.where(folded, -delta, delta), TWO_PI)

    # patch the degenerate rows to match the scalar rules
    pose_at_origin = r_c < _EPS_R
    if k > 0.0:
        half = curvature.antipode_radius
        pose_at_antipode = (half - r_c < _EPS_R) & ~pose_at_origin
        vertex_degenerate = (r_v < _EPS_R) | (half - r_v < _EPS_R)
    else:
        pose_at_antipode = np.zeros_like(pose_at_origin)
        vertex_degenerate = r_v < _EPS_R
    if pose_at_antipode.any():
        theta_v = np.where(
            pose_at_antipode, np.mod(theta_c + math.pi + beta, TWO_PI), theta_v
        )
    if vertex_degenerate.any():
        theta_v = np.where(vertex_degenerate, theta_c, theta_v)
    if pose_at_origin.any():
        r_v = np.where(pose_at_origin, v_r, r_v)
        theta_v = np.where(
            pose_at_origin, np.mod(theta_c + math.pi - beta, TWO_PI), theta_v
        )
    zero_vertex = v_r < _EPS_R
    if zero_vertex.any():
        r_v = np.where(zero_vertex, r_c, r_v)
        theta_v = np.where(zero_vertex, theta_c, theta_v)
    return r_v, theta_v


def _edge_params(
    r1: np.ndarray,
    t1: np.ndarray,
    r2: np.ndarray,
    t2: np.ndarray,
    theta_c: np.ndarray,
    curvature: Curvature,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized edge_geometry plus the tessellation start angle.

    Returns per-edge (d, direction, alpha); same steps as the scalar ops.
    """
    d1 = _wrap_signed_arr(theta_c - t1)
    d2 = _wrap_signed_arr(theta_c - t2)
    sweep = _wrap_signed_arr(d1 - d2)
    delta = np.abs(sweep)
    direction = np.where(sweep >= 0.0, 1.0, -1.0)
    s = curvature.scale
    with np.errstate(invalid="ignore", divide="ignore"):
        if curvature.k_metric > 0.0:
            arg = np.cos(r1 * s) * np.cos(r2 * s) + np.sin(r1 * s) * np.sin(r2 * s) * np.cos(delta)
            d = np.arccos(np.clip(arg, -1.0, 1.0)) / s
            den = np.sin(r1 * s) * np.sin(d * s)
            num = np.cos(r2 * s) - np.cos(r1 * s) * np.cos(d * s)
        else:
            arg = np.cosh(r1 * s) * np.cosh(r2 * s) - np.sinh(r1 * s) * np.sinh(r2 * s) * np.cos(
                delta
            )
            d = np.arccosh(np.maximum(arg, 1.0)) / s
            den = np.sinh(r1 * s) * np.sinh(d * s)
            num = np.cosh(r1 * s) * np.cosh(d * s) - np.cosh(r2 * s)
        alpha = np.arccos(np.clip(num / den, -1.0, 1.0))
    alpha = np.where(np.isfinite(alpha), alpha, 0.0)
    return d, direction, alpha


def outline_many(
    items: list[tuple[Shape, Pose]], curvature: Curvature
) -> list[tuple[np.ndarray, np.ndarray]]:
    """Outlines for many bodies at once, batching edges across bodies.

    Bodies sharing a tessellation level share one vectorized pass, which is
    what keeps large worlds inside the frame budget; results come back in
    input order as (r, theta) array pairs.
    """
    results: list[tuple[np.ndarray, np.ndarray] | None] = [None] * len(items)
    groups: dict[int, list[int]] = {}
    for idx, (shape, _) in enumerate(items):
        groups.setdefault(shape.tessellation, []).append(idx)

    for n, idxs in groups.items():
        # resolve every vertex of every body in the group in one pass
        local_r: list[float] = []
        local_t: list[float] = []
        pose_r: list[float] = []
        pose_t: list[float] = []
        pose_rot: list[float] = []
        offsets: list[int] = []
        at = 0
        for idx in idxs:
            shape, pose = items[idx]
            offsets.append(at)
            at += len(shape.vertices)
            for v in shape.vertices:
                local_r.append(v.r)
                local_t.append(v.theta)
            pose_r.extend([pose.position.r] * len(shape.vertices))
            pose_t.extend([pose.position.theta] * len(shape.vertices))
            pose_rot.extend([pose.rotation] * len(shape.vertices))
        vr_all, vt_all = _batch_vertices(
            np.array(pose_r),
            np.array(pose_t),
            np.array(pose_rot),
            np.array(local_r),
            np.array(local_t),
            curvature,
        )

        # per-edge endpoint indices into the group vertex arrays
        edge_rows: list[tuple[int, int]] = []  # (item index, edge count)
        start_idx: list[int] = []
        end_idx: list[int] = []
        tc_parts: list[np.ndarray] = []
        for offset, idx in zip(offsets, idxs):
            shape, pose = items[idx]
            count = len(shape.vertices)
            if count == 1:
                results[idx] = (vr_all[offset : offset + 1], vt_all[offset : offset + 1])
                continue
            edge_count = count if shape.closed else count - 1
            edge_rows.append((idx, edge_count))
            start_idx.extend(range(offset, offset + edge_count))
            ends = list(range(offset + 1, offset + count))
            if shape.closed:
                ends.append(offset)
            end_idx.extend(ends[:edge_count])
            tc_parts.append(np.full(edge_count, pose.position.theta))

        if not edge_rows:
            continue
        starts = np.array(start_idx)
        ends = np.array(end_idx)
        r1, t1 = vr_all[starts], vt_all[starts]
        r2, t2 = vr_all[ends], vt_all[ends]
        total_edges = len(starts)
        grid_r = np.empty((total_edges, n))
        grid_t = np.empty((total_edges, n))
        grid_r[:, 0] = r1
        grid_t[:, 0] = t1
        if n > 1:
            if _use_planar(curvature, float(vr_all.max(initial=0.0))):
                r_i, theta_i = _batch_intermediates_planar(r1, t1, r2, t2, n)
            else:
                theta_c = np.concatenate(tc_parts)
                d, direction, alpha = _edge_params(r1, t1, r2, t2, theta_c, curvature)
                r_i, theta_i = _batch_intermediates(r1, t1, t2, d, alpha, direction, n, curvature)
            grid_r[:, 1:] = r_i
            grid_t[:, 1:] = theta_i

        flat_r = grid_r.ravel()
        flat_t = grid_t.ravel()
        row_pts = 0
        row_edges = 0
        for idx, edge_count in edge_rows:
            shape, _ = items[idx]
            span = edge_count * n
            out_r = flat_r[row_pts : row_pts + span]
            out_t = flat_t[row_pts : row_pts + span]
            if not shape.closed:
                tail = ends[row_edges + edge_count - 1]
                out_r = np.append(out_r, vr_all[tail])
                out_t = np.append(out_t, vt_all[tail])
            results[idx] = (out_r, out_t)
            row_pts += span
            row_edges += edge_count

    return results  # type: ignore[return-value]


def outline_arrays(
    shape: Shape, pose: Pose, curvature: Curvature
) -> tuple[np.ndarray, np.ndarray]:
    """Outline as parallel (r, theta) arrays; the fast path behind outline().

    Point layout interleaves each vertex with the intermediates of the edge
    that follows it, giving v * n points for closed shapes and
    (v - 1) * n + 1 for open ones.
    """
    return outline_many([(shape, pose)], curvature)[0]


def outline(shape: Shape, pose: Pose, curvature: Curvature) -> list[PolarPoint]:
    """All outline points of a shape in drawing order."""
    rs, ts = outline_arrays(shape, pose, curvature)
    return [PolarPoint(r, t) for r, t in zip(rs.tolist(), ts.tolist())]
