import math
import random

import pytest

from curved import (
    Curvature,
    DegenerateTriangleError,
    PLANAR,
    PolarPoint,
    angle_from_sss,
    normalize_bearing,
    normalize_radius,
    oracle_distance,
    project_to_screen,
    side_from_sas,
)

SPHERE = Curvature.from_metric(1.0)
HYPERBOLIC = Curvature.from_metric(-1.0)
ALL_K = (SPHERE, PLANAR, HYPERBOLIC)

# frozen from the embedding oracles (see TestOracleDistance for the oracles themselves)
SPHERE_SAS_1_05 = 1.0767867445664643
HYPER_SAS_1_05 = 1.1518300113456323


def rel_err(x, y):
    return abs(x - y) / max(abs(y), 1e-15)


class TestCurvature:
    def test_normalized_maps_boundary_to_antipode(self):
        k = Curvature.from_normalized(1.0, 300.0)
        assert k.k_metric == pytest.approx((math.pi / 300.0) ** 2)
        assert k.antipode_radius == pytest.approx(300.0)

    def test_sign_and_zero_invariants(self):
        for k_norm in (-1.0, -0.25, 0.0, 0.5, 1.0):
            k = Curvature.from_normalized(k_norm, 300.0)
            assert -1.0 <= k.k_norm <= 1.0
            assert (k.k_metric > 0) == (k_norm > 0)
            assert (k.k_metric == 0) == (k_norm == 0)
            assert k.scale == pytest.approx(math.sqrt(abs(k.k_metric)))

    def test_from_metric(self):
        assert Curvature.from_metric(0.0) == PLANAR
        k = Curvature.from_metric(-4.0)
        assert k.k_norm == -1.0
        assert k.scale == 2.0

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            Curvature.from_normalized(1.5)
        with pytest.raises(ValueError):
            Curvature.from_normalized(0.5, boundary_radius=0.0)
        with pytest.raises(ValueError):
            Curvature.from_metric(math.nan)

    def test_hyperbolic_antipode_is_infinite(self):
        assert HYPERBOLIC.antipode_radius == math.inf
        assert PLANAR.antipode_radius == math.inf


class TestNormalizeBearing:
    @pytest.mark.parametrize(
        "theta,expected",
        [
            (2 * math.pi, 0.0),
            (-math.pi / 2, 3 * math.pi / 2),
            (7 * math.pi / 2, 3 * math.pi / 2),
            (0.0, 0.0),
            (math.pi, math.pi),
        ],
    )
    def test_examples(self, theta, expected):
        assert normalize_bearing(theta) == pytest.approx(expected, abs=1e-12)

    def test_range(self):
        rng = random.Random(7)
        for _ in range(500):
            out = normalize_bearing(rng.uniform(-50.0, 50.0))
            assert 0.0 <= out < 2 * math.pi

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            normalize_bearing(math.inf)


class TestSideFromSas:
    def test_degenerate_included_angle(self):
        for k in ALL_K:
            assert side_from_sas(1.0, 0.5, 0.0, k) == pytest.approx(0.5, abs=1e-12)

    def test_planar_345(self):
        assert side_from_sas(3.0, 4.0, math.pi / 2, PLANAR) == pytest.approx(5.0)

    def test_sphere_example(self):
        c = side_from_sas(1.0, 0.5, math.pi / 2, SPHERE)
        assert c == pytest.approx(SPHERE_SAS_1_05, abs=1e-12)

    def test_hyperbolic_example(self):
        c = side_from_sas(1.0, 0.5, math.pi / 2, HYPERBOLIC)
        assert c == pytest.approx(HYPER_SAS_1_05, abs=1e-12)

    def test_symmetry_exact(self):
        rng = random.Random(11)
        for _ in range(300):
            a, b = rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)
            g = rng.uniform(0.0, math.pi)
            for k in ALL_K:
                assert side_from_sas(a, b, g, k) == side_from_sas(b, a, g, k)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            side_from_sas(math.nan, 1.0, 0.5, PLANAR)


class TestAngleFromSss:
    def test_planar_equilateral(self):
        assert angle_from_sss(1.0, 1.0, 1.0, PLANAR) == pytest.approx(math.pi / 3)

    def test_spherical_octant(self):
        q = math.pi / 2
        assert angle_from_sss(q, q, q, SPHERE) == pytest.approx(math.pi / 2)

    def test_inverse_of_sas_example(self):
        got = angle_from_sss(1.0, 0.5, SPHERE_SAS_1_05, SPHERE)
        assert got == pytest.approx(math.pi / 2, abs=1e-9)

    def test_degenerate_side_raises(self):
        with pytest.raises(DegenerateTriangleError):
            angle_from_sss(0.0, 1.0, 1.0, PLANAR)
        with pytest.raises(DegenerateTriangleError):
            angle_from_sss(math.pi, 1.0, 1.0, SPHERE)  # vertex at the antipode


class TestNormalizeRadius:
    def test_antipode_is_fixed_point(self):
        p = normalize_radius(PolarPoint(math.pi, 0.0), SPHERE)
        assert (p.r, p.theta) == (math.pi, 0.0)

    def test_fold_past_antipode(self):
        p = normalize_radius(PolarPoint(1.5 * math.pi, 0.0), SPHERE)
        assert p.r == pytest.approx(0.5 * math.pi)
        assert p.theta == pytest.approx(math.pi)

    def test_hyperbolic_identity(self):
        p = PolarPoint(10.0, 1.0)
        assert normalize_radius(p, HYPERBOLIC) is p

    def test_full_period_returns_home(self):
        p = normalize_radius(PolarPoint(2.5 * math.pi, 1.0), SPHERE)
        assert p.r == pytest.approx(0.5 * math.pi)
        assert p.theta == pytest.approx(1.0)

    def test_idempotent_and_in_range(self):
        rng = random.Random(3)
        for _ in range(300):
            p = PolarPoint(rng.uniform(0.0, 20.0), rng.uniform(0.0, 2 * math.pi))
            q = normalize_radius(p, SPHERE)
            assert 0.0 <= q.r <= math.pi + 1e-12
            assert 0.0 <= q.theta < 2 * math.pi
            again = normalize_radius(q, SPHERE)
            assert (again.r, again.theta) == (q.r, q.theta)


class TestProjectToScreen:
    def test_center(self):
        assert project_to_screen(PolarPoint(0.0, 1.23), 1.0) == (0.0, 0.0)

    def test_north(self):
        x, y = project_to_screen(PolarPoint(2.0, math.pi / 2), 1.0)
        assert x == pytest.approx(0.0, abs=1e-12)
        assert y == pytest.approx(2.0)

    def test_scaling(self):
        x, y = project_to_screen(PolarPoint(1.0, math.pi), 50.0)
        assert x == pytest.approx(-50.0)
        assert y == pytest.approx(0.0, abs=1e-9)


class TestOracleDistance:
    def test_zero_iff_same_point(self):
        p = PolarPoint(1.2, 0.7)
        for k in ALL_K:
            assert oracle_distance(p, p, k) == pytest.approx(0.0, abs=1e-12)

    def test_planar_right_angle(self):
        d = oracle_distance(PolarPoint(1, 0), PolarPoint(1, math.pi / 2), PLANAR)
        assert d == pytest.approx(math.sqrt(2.0))

    def test_spherical_octant(self):
        q = math.pi / 2
        d = oracle_distance(PolarPoint(q, 0), PolarPoint(q, q), SPHERE)
        assert d == pytest.approx(q)

    def test_symmetry(self):
        rng = random.Random(5)
        for _ in range(200):
            p1 = PolarPoint(rng.uniform(0, 2), rng.uniform(0, 2 * math.pi))
            p2 = PolarPoint(rng.uniform(0, 2), rng.uniform(0, 2 * math.pi))
            for k in ALL_K:
                assert oracle_distance(p1, p2, k) == pytest.approx(
                    oracle_distance(p2, p1, k), abs=1e-12
                )


class TestKernelProperties:
    def test_sas_matches_embedding_oracle(self):
        rng = random.Random(42)
        for k in (SPHERE, HYPERBOLIC):
            for _ in range(2000):
                a = rng.uniform(1e-3, 2.0)
                b = rng.uniform(1e-3, 2.0)
                g = rng.uniform(0.0, math.pi)
                got = side_from_sas(a, b, g, k)
                want = oracle_distance(PolarPoint(a, 0.0), PolarPoint(b, g), k)
                assert rel_err(got, want) < 1e-9

    def test_continuity_through_zero_curvature(self):
        rng = random.Random(19)
        for sign in (1.0, -1.0):
            tiny = Curvature.from_metric(sign * 1e-9)
            for _ in range(1000):
                a = rng.uniform(0.0, 10.0)
                b = rng.uniform(0.0, 10.0)
                g = rng.uniform(0.0, math.pi)
                curved_c = side_from_sas(a, b, g, tiny)
                flat_c = side_from_sas(a, b, g, PLANAR)
                assert abs(curved_c - flat_c) < 1e-6

    def test_sas_sss_round_trip(self):
        rng = random.Random(23)
        for k in ALL_K:
            for _ in range(500):
                a = rng.uniform(0.1, 1.5)
                b = rng.uniform(0.1, 1.5)
                g = rng.uniform(0.05, math.pi - 0.05)
                c = side_from_sas(a, b, g, k)
                assert angle_from_sss(a, b, c, k) == pytest.approx(g, abs=1e-9)

    def test_angle_sum_carries_curvature_sign(self):
        rng = random.Random(31)
        for _ in range(200):
            a = rng.uniform(0.1, 1.0)
            b = rng.uniform(0.1, 1.0)
            g = rng.uniform(0.3, math.pi - 0.3)
            for k in ALL_K:
                c = side_from_sas(a, b, g, k)
                total = (
                    angle_from_sss(a, b, c, k)
                    + angle_from_sss(b, c, a, k)
                    + angle_from_sss(c, a, b, k)
                )
                excess = total - math.pi
                if k.k_metric > 0:
                    assert excess > 0
                elif k.k_metric < 0:
                    assert excess < 0
                else:
                    assert abs(excess) < 1e-9
