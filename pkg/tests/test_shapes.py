import math
import random

import pytest

from curved import (
    Curvature,
    PLANAR,
    PolarPoint,
    Pose,
    Shape,
    edge_geometry,
    oracle_distance,
    outline,
    tessellate_edge,
    vertex_global,
)

SPHERE = Curvature.from_metric(1.0)
HYPERBOLIC = Curvature.from_metric(-1.0)
ALL_K = (SPHERE, PLANAR, HYPERBOLIC)
NORMALIZED_K = tuple(Curvature.from_normalized(k, 300.0) for k in (1.0, 0.0, -1.0))

FIGURE16_SQUARE = Shape(
    vertices=tuple(PolarPoint(90.0, k * math.pi / 8) for k in (1, 3, 5, 7)),
    tessellation=16,
    closed=True,
)


def angle_close(a, b, tol=1e-9):
    diff = abs(a - b) % (2 * math.pi)
    return min(diff, 2 * math.pi - diff) < tol


class TestVertexGlobal:
    def test_toward_reference_point(self):
        pose = Pose(PolarPoint(2.0, 0.0), 0.0)
        for k in ALL_K:
            v = vertex_global(pose, PolarPoint(0.5, 0.0), k)
            assert v.r == pytest.approx(1.5, abs=1e-12)
            assert angle_close(v.theta, 0.0)

    def test_away_from_reference_point(self):
        pose = Pose(PolarPoint(2.0, 0.0), 0.0)
        for k in ALL_K:
            v = vertex_global(pose, PolarPoint(0.5, math.pi), k)
            assert v.r == pytest.approx(2.5, abs=1e-12)
            # bearing conditioning is sqrt(eps) at the collinear configuration
            assert angle_close(v.theta, 0.0, tol=1e-7)

    def test_sphere_perpendicular_vertex(self):
        pose = Pose(PolarPoint(1.0, 0.0), 0.0)
        v = vertex_global(pose, PolarPoint(0.5, math.pi / 2), SPHERE)
        assert v.r == pytest.approx(1.0767867445664643, abs=1e-9)
        assert v.theta == pytest.approx(0.5758289495618063, abs=1e-9)

    def test_zero_radius_vertex_is_the_center(self):
        pose = Pose(PolarPoint(1.0, 0.0), 0.0)
        for k in ALL_K:
            v = vertex_global(pose, PolarPoint(0.0, 2.2), k)
            assert (v.r, v.theta) == (1.0, 0.0)

    def test_round_trip_distance_equals_local_radius(self):
        rng = random.Random(97)
        for k in ALL_K:
            for _ in range(400):
                pose = Pose(
                    PolarPoint(rng.uniform(0.1, 1.5), rng.uniform(0, 2 * math.pi)),
                    rng.uniform(0, 2 * math.pi),
                )
                local = PolarPoint(rng.uniform(0.05, 1.0), rng.uniform(0, 2 * math.pi))
                v = vertex_global(pose, local, k)
                assert oracle_distance(pose.position, v, k) == pytest.approx(
                    local.r, abs=1e-9
                )

    def test_rotation_equivariance(self):
        rng = random.Random(13)
        for k in ALL_K:
            pose = Pose(PolarPoint(1.0, 0.5), 0.7)
            locals_ = [
                PolarPoint(rng.uniform(0.1, 0.8), rng.uniform(0, 2 * math.pi))
                for _ in range(6)
            ]
            delta = 0.9
            via_rotation = [
                vertex_global(Pose(pose.position, pose.rotation + delta), v, k)
                for v in locals_
            ]
            via_bearings = [
                vertex_global(pose, PolarPoint(v.r, v.theta + delta), k) for v in locals_
            ]
            for a, b in zip(via_rotation, via_bearings):
                assert a.r == pytest.approx(b.r, abs=1e-9)
                assert angle_close(a.theta, b.theta)

    def test_degenerate_pose_matches_small_radius_limit(self):
        # a pose at the reference point uses the cached bearing directly
        for k in ALL_K:
            at_zero = vertex_global(
                Pose(PolarPoint(0.0, 0.4), 0.3), PolarPoint(0.7, 1.1), k
            )
            nearby = vertex_global(
                Pose(PolarPoint(1e-7, 0.4), 0.3), PolarPoint(0.7, 1.1), k
            )
            assert at_zero.r == pytest.approx(nearby.r, abs=1e-6)
            assert angle_close(at_zero.theta, nearby.theta, tol=1e-5)


class TestEdgeGeometry:
    def test_converging_bearings(self):
        eg = edge_geometry(0.3, PolarPoint(1.0, 0.1), PolarPoint(1.0, 0.5), PLANAR)
        assert eg.delta_theta == pytest.approx(0.4)
        assert eg.d == pytest.approx(2.0 * math.sin(0.2))

    def test_same_side_bearings_subtract(self):
        # both vertices on the same side of the body's bearing
        eg = edge_geometry(0.3, PolarPoint(1.0, 0.1), PolarPoint(1.0, 0.2), PLANAR)
        assert eg.delta_theta == pytest.approx(0.1)
        assert eg.d == pytest.approx(oracle_distance(PolarPoint(1, 0.1), PolarPoint(1, 0.2), PLANAR))

    def test_coincident_vertices(self):
        v = PolarPoint(1.0, 0.7)
        eg = edge_geometry(0.0, v, v, SPHERE)
        assert eg.d == 0.0
        assert eg.delta_theta == 0.0

    def test_spherical_octant(self):
        eg = edge_geometry(
            math.pi / 4, PolarPoint(math.pi / 2, 0.0), PolarPoint(math.pi / 2, math.pi / 2), SPHERE
        )
        assert eg.d == pytest.approx(math.pi / 2)
        assert eg.delta_theta == pytest.approx(math.pi / 2)

    def test_length_matches_oracle(self):
        rng = random.Random(29)
        for k in ALL_K:
            for _ in range(300):
                v1 = PolarPoint(rng.uniform(0.05, 1.5), rng.uniform(0, 2 * math.pi))
                v2 = PolarPoint(rng.uniform(0.05, 1.5), rng.uniform(0, 2 * math.pi))
                theta_c = rng.uniform(0, 2 * math.pi)
                eg = edge_geometry(theta_c, v1, v2, k)
                assert eg.d == pytest.approx(oracle_distance(v1, v2, k), abs=1e-9)
                assert 0.0 <= eg.delta_theta <= math.pi + 1e-12

    def test_length_symmetric_exactly(self):
        rng = random.Random(41)
        for _ in range(200):
            v1 = PolarPoint(rng.uniform(0.05, 1.5), rng.uniform(0, 2 * math.pi))
            v2 = PolarPoint(rng.uniform(0.05, 1.5), rng.uniform(0, 2 * math.pi))
            for k in ALL_K:
                assert (
                    edge_geometry(1.0, v1, v2, k).d == edge_geometry(1.0, v2, v1, k).d
                )


class TestTessellateEdge:
    def test_single_segment_has_no_points(self):
        v1, v2 = PolarPoint(1.0, 0.0), PolarPoint(1.0, 1.0)
        eg = edge_geometry(0.0, v1, v2, PLANAR)
        assert tessellate_edge(v1, v2, eg, 1, PLANAR) == []

    def test_zero_length_edge(self):
        v = PolarPoint(1.0, 0.3)
        eg = edge_geometry(0.0, v, v, PLANAR)
        assert tessellate_edge(v, v, eg, 8, PLANAR) == []

    def test_planar_midpoint(self):
        v1, v2 = PolarPoint(1.0, 0.0), PolarPoint(1.0, math.pi / 2)
        eg = edge_geometry(0.0, v1, v2, PLANAR)
        (mid,) = tessellate_edge(v1, v2, eg, 2, PLANAR)
        assert mid.r == pytest.approx(math.sqrt(2) / 2)
        assert mid.theta == pytest.approx(math.pi / 4)

    def test_spherical_midpoint_bows_toward_pole(self):
        v1 = PolarPoint(1.0, 2 * math.pi - 0.3)
        v2 = PolarPoint(1.0, 0.3)
        eg = edge_geometry(0.0, v1, v2, SPHERE)
        (mid,) = tessellate_edge(v1, v2, eg, 2, SPHERE)
        assert mid.r == pytest.approx(0.979033707839985, abs=1e-9)
        assert angle_close(mid.theta, 0.0)

    def test_radial_edge_through_center(self):
        v1 = PolarPoint(1.0, 0.0)
        v2 = PolarPoint(1.0, math.pi)
        eg = edge_geometry(0.2, v1, v2, PLANAR)
        points = tessellate_edge(v1, v2, eg, 4, PLANAR)
        assert [p.r for p in points] == pytest.approx([0.5, 0.0, 0.5], abs=1e-12)

    def test_collinearity_and_equal_spacing(self):
        rng = random.Random(53)
        for k in ALL_K:
            for _ in range(60):
                v1 = PolarPoint(rng.uniform(0.1, 1.4), rng.uniform(0, 2 * math.pi))
                v2 = PolarPoint(rng.uniform(0.1, 1.4), rng.uniform(0, 2 * math.pi))
                n = rng.choice((2, 3, 5, 8))
                eg = edge_geometry(rng.uniform(0, 2 * math.pi), v1, v2, k)
                if eg.d < 1e-6:
                    continue
                points = tessellate_edge(v1, v2, eg, n, k)
                assert len(points) == n - 1
                for i, p in enumerate(points, start=1):
                    d1 = oracle_distance(v1, p, k)
                    d2 = oracle_distance(p, v2, k)
                    assert d1 + d2 - eg.d < 1e-9
                    assert d1 == pytest.approx(i / n * eg.d, abs=1e-9)


class TestOutline:
    def test_figure16_square_point_count(self):
        pose = Pose(PolarPoint(150.0, 0.0), 0.0)
        for k in NORMALIZED_K:
            points = outline(FIGURE16_SQUARE, pose, k)
            assert len(points) == 64

    def test_single_vertex_shape(self):
        shape = Shape(vertices=(PolarPoint(2.0, 0.0),), tessellation=16, closed=True)
        points = outline(shape, Pose(PolarPoint(5.0, 0.0), 0.0), PLANAR)
        assert len(points) == 1

    def test_open_two_vertex_shape(self):
        shape = Shape(
            vertices=(PolarPoint(1.0, 0.2), PolarPoint(1.0, 2.0)),
            tessellation=4,
            closed=False,
        )
        points = outline(shape, Pose(PolarPoint(3.0, 1.0), 0.0), PLANAR)
        assert len(points) == 5

    def test_matches_per_edge_composition(self):
        from curved.shapes import tessellate_edge as tess

        rng = random.Random(61)
        shape = Shape(
            vertices=tuple(
                PolarPoint(rng.uniform(0.3, 0.9), rng.uniform(0, 2 * math.pi))
                for _ in range(5)
            ),
            tessellation=6,
            closed=True,
        )
        pose = Pose(PolarPoint(1.1, 0.4), 0.2)
        for k in ALL_K:
            whole = outline(shape, pose, k)
            verts = [vertex_global(pose, v, k) for v in shape.vertices]
            rebuilt = []
            for i, v1 in enumerate(verts):
                v2 = verts[(i + 1) % len(verts)]
                rebuilt.append(v1)
                eg = edge_geometry(pose.position.theta, v1, v2, k)
                rebuilt.extend(tess(v1, v2, eg, shape.tessellation, k))
            assert len(whole) == len(rebuilt)
            for a, b in zip(whole, rebuilt):
                assert a.r == pytest.approx(b.r, abs=1e-9)
                assert angle_close(a.theta, b.theta)

    def test_vertices_keep_local_radius_for_every_curvature(self):
        pose = Pose(PolarPoint(150.0, 0.7), 0.3)
        for k in NORMALIZED_K:
            points = outline(FIGURE16_SQUARE, pose, k)
            for i in (0, 16, 32, 48):
                assert oracle_distance(pose.position, points[i], k) == pytest.approx(
                    90.0, abs=1e-9
                )

    def test_edges_bow_with_the_curvature_sign(self):
        # spherical triangles are fatter: edge midpoints sit farther from the
        # shape's center than their planar counterparts, hyperbolic ones closer
        pose = Pose(PolarPoint(150.0, 0.7), 0.3)
        sphere_k, flat_k, hyper_k = NORMALIZED_K
        mids = {}
        for name, k in (("sphere", sphere_k), ("flat", flat_k), ("hyper", hyper_k)):
            points = outline(FIGURE16_SQUARE, pose, k)
            mids[name] = [
                oracle_distance(pose.position, points[i], k) for i in (8, 24, 40, 56)
            ]
        for s, f, h in zip(mids["sphere"], mids["flat"], mids["hyper"]):
            assert s > f > h
