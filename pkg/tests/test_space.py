import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import vexleb as vx
from vexleb.errors import DomainError, ValidationError


def brute_ball(space, center, r, closed=False):
    d = space.dist[center]
    return set(np.flatnonzero(d <= r if closed else d < r).tolist())


class TestBall:
    def test_zero_radius_open_is_empty(self):
        sp = vx.uniform_grid(16)
        b = vx.ball(sp, 3, 0.0)
        assert b.members.size == 0 and b.measure == 0.0

    def test_huge_radius_is_whole_space(self):
        sp = vx.uniform_grid(16)
        b = vx.ball(sp, 3, 5.0)
        assert b.members.size == 16
        assert b.measure == pytest.approx(sp.total_measure)

    def test_grid_half_ball_measure(self):
        sp = vx.uniform_grid(1024)
        b = vx.ball(sp, 0, 0.5)
        assert abs(b.measure - 0.5) <= 1.0 / 1024
        assert b.members.size == len(brute_ball(sp, 0, 0.5))

    def test_closed_flag(self):
        sp = vx.uniform_grid(9)
        r = sp.dist[0, 4]
        assert set(vx.ball(sp, 0, r, closed=True).members.tolist()) == brute_ball(sp, 0, r, True)
        assert set(vx.ball(sp, 0, r).members.tolist()) == brute_ball(sp, 0, r, False)

    def test_invalid_center(self):
        sp = vx.uniform_grid(8)
        with pytest.raises(DomainError):
            vx.ball(sp, 99, 0.5)

    @given(st.integers(2, 40), st.floats(0, 1), st.floats(0, 1))
    @settings(max_examples=50, deadline=None)
    def test_monotone_in_radius(self, n, r1, r2):
        if r1 > r2:
            r1, r2 = r2, r1
        sp = vx.uniform_grid(n)
        b1, b2 = vx.ball(sp, 0, r1), vx.ball(sp, 0, r2)
        assert set(b1.members.tolist()) <= set(b2.members.tolist())
        assert b1.measure <= b2.measure + 1e-15


class TestGeometryConstants:
    def test_metric_grid(self):
        g = vx.geometry_constants(vx.uniform_grid(64))
        assert g.a0 == pytest.approx(1.0)
        assert g.a1 <= 1.0 + 1e-9

    def test_squared_distance_doubles_a1(self):
        c = np.linspace(0, 1, 65)
        sp = vx.explicit_space(np.abs(c[:, None] - c[None, :]) ** 2, np.full(65, 1 / 65), 0, 1.0)
        # (u+v)^2 <= 2(u^2+v^2), tight at u = v; brute force over triples agrees
        g = vx.geometry_constants(sp)
        assert g.a1 == pytest.approx(2.0, abs=0.05)

    def test_asymmetric_pair(self):
        sp = vx.explicit_space([[0.0, 2.0], [1.0, 0.0]], [0.5, 0.5], 0, 2.0)
        assert vx.geometry_constants(sp).a0 == pytest.approx(2.0)

    def test_sampled_path_matches_exhaustive(self):
        # n just above the exhaustive limit uses the seeded sampler
        sp = vx.uniform_grid(520)
        g = vx.geometry_constants(sp, sample_triples=200_000)
        assert g.a0 == pytest.approx(1.0)
        assert 0.99 <= g.a1 <= 1.0 + 1e-9


class TestDoublingReverseDoubling:
    def test_grid_doubling_near_two(self):
        for n in (128, 512):
            d, _, _, _, _ = vx.doubling_reverse_doubling(vx.uniform_grid(n), 2.0)
            assert abs(d - 2.0) <= 4.0 / n

    def test_single_point_errors(self):
        sp = vx.explicit_space([[0.0]], [1.0], 0, 1.0)
        with pytest.raises(DomainError):
            vx.doubling_reverse_doubling(sp, 2.0)

    def test_grid_reverse_doubling_above_one(self):
        sp = vx.uniform_grid(256)
        _, rdc, _, wit, _ = vx.doubling_reverse_doubling(sp, 2.0)
        assert rdc > 1.0
        # minimum attained near the middle of the interval at a large radius
        x, r = wit
        assert abs(sp.coords[x] - 0.5) < 0.1 and r > 0.4


class TestAhlfors:
    def test_grid_exponent_one(self):
        c1, c2, _, _ = vx.ahlfors_regularity(vx.uniform_grid(512), 1.0)
        assert c1 == pytest.approx(2.0, abs=0.02)
        assert c2 == pytest.approx(1.0, abs=0.02)

    def test_two_point_space_no_failure(self):
        sp = vx.explicit_space([[0.0, 1.0], [1.0, 0.0]], [0.5, 0.5], 0, 1.0)
        c1, c2, _, _ = vx.ahlfors_regularity(sp, 1.0)
        assert np.isfinite(c1) and np.isfinite(c2)

    def test_cantor_measure(self):
        sp = vx.cantor_space(8)
        q = np.log(2) / np.log(3)
        c1, c2, _, _ = vx.ahlfors_regularity(sp, q)
        assert 0.3 <= c2 <= c1 <= 4.0


class TestRadialPartition:
    def test_shell_at_k_minus_one(self):
        sp = vx.uniform_grid(1024)
        part = vx.radial_partition(sp, 2.0, -1, a1=1.0)
        lo, hi = sp.d0[part.shell].min(), sp.d0[part.shell].max()
        assert 0.5 < lo <= 0.502 and hi == pytest.approx(1.0)
        assert sp.mu[part.shell].sum() == pytest.approx(0.5, abs=2 / 1024)

    def test_inner_set(self):
        sp = vx.uniform_grid(1024)
        part = vx.radial_partition(sp, 2.0, -1, a1=1.0)
        # inner radius 2^-2 * 1 / 1 = 0.25
        assert np.all(sp.d0[part.inner] < 0.25)
        assert sp.d0[part.inner].max() >= 0.25 - 2 / 1024

    def test_cover_is_exact(self):
        sp = vx.uniform_grid(257)
        for k in (-3, -1, 0, 2):
            part = vx.radial_partition(sp, 2.0, k, a1=1.0)
            union = np.union1d(np.union1d(part.inner, part.middle), part.outer)
            assert union.size == sp.n

    def test_shells_disjoint_and_cover(self):
        sp = vx.uniform_grid(200)
        shells = [vx.radial_partition(sp, 2.0, k, a1=1.0).shell for k in range(-20, 1)]
        flat = np.concatenate(shells)
        assert flat.size == np.unique(flat).size
        covered = set(flat.tolist())
        expected = set(np.flatnonzero((sp.d0 > 0) & (sp.d0 <= sp.L_eff)).tolist())
        assert covered == expected

    def test_shell_inside_middle(self):
        sp = vx.uniform_grid(128)
        for k in (-4, -2, -1):
            part = vx.radial_partition(sp, 2.0, k, a1=1.0)
            assert set(part.shell.tolist()) <= set(part.middle.tolist())

    def test_shell_vs_ball_measure_equivalence(self):
        # the shell between radii A^k and A^{k+1} has measure comparable to
        # the ball at A^k, uniformly over nonempty scales
        sp = vx.uniform_grid(1024)
        ratios = []
        for k in range(-7, 0):
            part = vx.radial_partition(sp, 2.0, k, a1=1.0)
            mb = vx.ball(sp, 0, 2.0**k * 1.0).measure
            if part.shell.size and mb > 0:
                ratios.append(sp.mu[part.shell].sum() / mb)
        c = max(max(ratios), 1 / min(ratios))
        assert c <= 1.5

    def test_collapse_flag(self):
        sp = vx.uniform_grid(64)
        part = vx.radial_partition(sp, 2.0, 8, a1=1.0)
        assert part.collapsed


class TestComparisonAnnulus:
    def test_direct_substitution(self):
        sp = vx.uniform_grid(512)
        x = int(np.argmin(np.abs(sp.coords - 0.1)))
        members, degenerate = vx.comparison_annulus(sp, x, 2.0, a1=1.0)
        dx = sp.d0[x]
        assert not degenerate
        inside = (sp.d0 >= dx / 4) & (sp.d0 <= 4 * dx)
        assert set(members.tolist()) == set(np.flatnonzero(inside).tolist())

    def test_basepoint_degenerates(self):
        sp = vx.uniform_grid(64)
        members, degenerate = vx.comparison_annulus(sp, 0, 2.0)
        assert degenerate and members.tolist() == [0]

    def test_contains_x_everywhere(self):
        sp = vx.uniform_grid(128)
        for x in range(sp.n):
            members, _ = vx.comparison_annulus(sp, x, 2.0, a1=1.0)
            assert x in set(members.tolist())

    def test_l_factor_branch(self):
        sp = vx.uniform_grid(64)
        x = 32
        plain, _ = vx.comparison_annulus(sp, x, 2.0, use_l_factor=False)
        scaled, _ = vx.comparison_annulus(sp, x, 2.0, use_l_factor=True)
        # L = 1 on the unit grid: both branches coincide
        assert plain.tolist() == scaled.tolist()


class TestSpaceValidation:
    def test_rejects_nonzero_diagonal(self):
        with pytest.raises(ValidationError):
            vx.explicit_space([[0.1, 1.0], [1.0, 0.0]], [0.5, 0.5], 0, 1.0)

    def test_rejects_nonpositive_weights(self):
        with pytest.raises(ValidationError):
            vx.explicit_space([[0.0, 1.0], [1.0, 0.0]], [0.5, 0.0], 0, 1.0)

    def test_rejects_offdiagonal_zero(self):
        with pytest.raises(ValidationError):
            vx.explicit_space([[0.0, 0.0], [0.0, 0.0]], [0.5, 0.5], 0, 1.0)

    def test_infinite_needs_truncation(self):
        with pytest.raises(ValidationError):
            vx.DiscreteSpace(dist=np.array([[0.0, 1.0], [1.0, 0.0]]),
                             mu=np.array([0.5, 0.5]), x0=0, L=np.inf)


class TestSpaceFromSpec:
    def test_generator_roundtrip(self):
        sp = vx.space_from_spec({"generator": "uniform-grid", "n": 32})
        assert sp.n == 32 and sp.L == 1.0

    def test_explicit_euclidean(self):
        spec = {
            "points": [{"id": "a", "coord": 0.0}, {"id": "b", "coord": 0.5},
                       {"id": "c", "coord": 1.0}],
            "metric": "euclidean1d",
            "mu": [0.25, 0.5, 0.25],
            "x0": "b",
            "L": 1.0,
        }
        sp = vx.space_from_spec(spec)
        assert sp.x0 == 1
        assert sp.dist[0, 2] == pytest.approx(1.0)

    def test_lebesgue_grid_rule(self):
        spec = {"points": [{"id": i, "coord": i / 3} for i in range(4)],
                "metric": "euclidean1d", "mu": "lebesgue-grid", "x0": 0, "L": 1.0}
        sp = vx.space_from_spec(spec)
        assert np.allclose(sp.mu, 0.25)

    def test_infinite_sentinel(self):
        spec = {"points": [{"id": i, "coord": float(i)} for i in range(4)],
                "metric": "euclidean1d", "mu": "lebesgue-grid", "x0": 0,
                "L": "inf", "trunc_radius": 3.0}
        sp = vx.space_from_spec(spec)
        assert sp.infinite_diameter and sp.L_eff == 3.0

    def test_explicit_row_major_table(self):
        spec = {"points": [{"id": 0}, {"id": 1}, {"id": 2}],
                "metric": "explicit",
                "dist": [0.0, 1.0, 3.0, 2.0, 0.0, 1.0, 3.0, 1.0, 0.0],
                "mu": [0.2, 0.3, 0.5], "x0": 0, "L": 3.0}
        sp = vx.space_from_spec(spec)
        assert sp.dist[0, 2] == 3.0 and sp.dist[1, 0] == 2.0
        # the worst asymmetry in the table is d(1,0)/d(0,1) = 2
        assert vx.geometry_constants(sp).a0 == pytest.approx(2.0)

    def test_unknown_metric_names_field(self):
        with pytest.raises(ValidationError, match="metric"):
            vx.space_from_spec({"points": [{"id": 0}], "metric": "hyperbolic"})
