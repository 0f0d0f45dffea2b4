import numpy as np
import pytest

import vexleb as vx
from vexleb.conditions import t_sweep
from vexleb.errors import DomainError, PreconditionError


def const(n, v, kind="exponent"):
    return vx.PointFunction.constant(n, v, kind)


def brute_hardy(space, p, q, v, w):
    """Nested-loop evaluation of the forward Hardy functional over the same
    sweep, as an independent oracle."""
    d0, mu, L = space.d0, space.mu, space.L_eff
    le = vx.local_exponents(space, p)
    e = vx.conjugate(le.ball_min_capped).values
    best = 0.0
    for t in t_sweep(space):
        total = 0.0
        for x in range(space.n):
            if not (t < d0[x] <= L):
                continue
            inner = ((w.values ** e[x]) * mu)[d0 <= t].sum()
            total += v.values[x] ** q.values[x] * inner ** (q.values[x] / e[x]) * mu[x]
        best = max(best, total)
    return best


class TestHardyCondition:
    def test_unit_weights_quarter(self):
        for n in (64, 256):
            sp = vx.uniform_grid(n)
            p = const(n, 2.0)
            one = const(n, 1.0, "weight")
            rep = vx.hardy_condition(sp, p, p, one, one)
            assert abs(rep.value - 0.25) <= 2.0 / n
            assert rep.argmax_t == pytest.approx(0.5, abs=2.0 / n)

    def test_zero_v(self):
        n = 64
        sp = vx.uniform_grid(n)
        rep = vx.hardy_condition(sp, const(n, 2.0), const(n, 2.0),
                                 const(n, 0.0, "test"), const(n, 1.0, "weight"))
        assert rep.value == 0.0

    def test_linear_weight_closed_form(self):
        # inner integral of w^2 is t^3/3; sup of (1-t) t^3/3 is 9/256 at t = 3/4
        n = 1024
        sp = vx.uniform_grid(n)
        p = const(n, 2.0)
        one = const(n, 1.0, "weight")
        wlin = vx.PointFunction(sp.d0.copy(), "test")
        rep = vx.hardy_condition(sp, p, p, one, wlin)
        assert rep.value == pytest.approx(9.0 / 256.0, abs=3.0 / n)
        assert rep.argmax_t == pytest.approx(0.75, abs=3.0 / n)

    def test_brute_force_oracle(self):
        rng = np.random.default_rng(0)
        n = 36
        sp = vx.uniform_grid(n)
        p = vx.PointFunction(rng.uniform(1.4, 2.4, n), "exponent")
        q = vx.PointFunction(p.values + rng.uniform(0.0, 1.0, n), "exponent")
        v = vx.PointFunction(rng.uniform(0.2, 1.5, n), "weight")
        w = vx.PointFunction(rng.uniform(0.2, 1.5, n), "weight")
        rep = vx.hardy_condition(sp, p, q, v, w)
        assert rep.value == pytest.approx(brute_hardy(sp, p, q, v, w), rel=1e-12)

    def test_ordering_precondition(self):
        n = 32
        sp = vx.uniform_grid(n)
        p = const(n, 3.0)
        q = const(n, 2.0)  # below the ball minimum of p
        with pytest.raises(PreconditionError):
            vx.hardy_condition(sp, p, q, const(n, 1.0, "weight"), const(n, 1.0, "weight"))

    def test_curve_max_is_value(self):
        n = 128
        sp = vx.uniform_grid(n)
        rep = vx.hardy_condition(sp, const(n, 2.0), const(n, 2.0),
                                 const(n, 1.0, "weight"), const(n, 1.0, "weight"))
        assert rep.value == rep.curve.max()
        assert rep.ts[int(rep.curve.argmax())] == rep.argmax_t


class TestHardyTailCondition:
    def test_unit_weights(self):
        n = 256
        sp = vx.uniform_grid(n)
        p = const(n, 2.0)
        one = const(n, 1.0, "weight")
        rep = vx.hardy_tail_condition(sp, p, p, one, one)
        assert abs(rep.value - 0.25) <= 2.0 / n

    def test_zero_w(self):
        n = 64
        sp = vx.uniform_grid(n)
        rep = vx.hardy_tail_condition(sp, const(n, 2.0), const(n, 2.0),
                                      const(n, 1.0, "weight"), const(n, 0.0, "test"))
        assert rep.value == 0.0

    def test_mirror_symmetry(self):
        # the tail functional equals the forward one seen from the far end
        n = 512
        sp = vx.uniform_grid(n)
        p = const(n, 2.0)
        rng = np.random.default_rng(1)
        v = vx.PointFunction(rng.uniform(0.3, 1.2, n), "weight")
        w = vx.PointFunction(rng.uniform(0.3, 1.2, n), "weight")
        tail = vx.hardy_tail_condition(sp, p, p, v, w)
        spR = vx.DiscreteSpace(dist=sp.dist, mu=sp.mu, x0=n - 1, L=1.0, coords=sp.coords)
        fwd = vx.hardy_condition(spR, p, p, v, w)
        assert tail.value == pytest.approx(fwd.value, rel=1e-9)


class TestPotentialConditions:
    def test_zero_v(self):
        n = 64
        sp = vx.uniform_grid(n)
        b, t = vx.potential_conditions(sp, const(n, 2.0), const(n, 4.0),
                                       const(n, 0.0, "test"), const(n, 1.0, "weight"), 0.25)
        assert b.value == 0.0 and t.value == 0.0

    def test_alpha_gate(self):
        n = 16
        sp = vx.uniform_grid(n)
        with pytest.raises(DomainError):
            vx.potential_conditions(sp, const(n, 2.0), const(n, 4.0),
                                    const(n, 1.0, "weight"), const(n, 1.0, "weight"), 0.5)

    def test_power_pair_stable(self):
        pair = vx.power_weight_pair(2.0, 0.25, 0.25)
        assert pair.gamma_min == pytest.approx(0.25)
        vals = []
        for n in (256, 512):
            sp = vx.uniform_grid(n)
            dre = sp.radial_distances()
            v = vx.PointFunction(pair.v_profile(dre), "weight")
            w = vx.PointFunction(pair.w_profile(dre), "weight")
            b, _ = vx.potential_conditions(sp, const(n, 2.0), const(n, 4.0), v, w, 0.25)
            vals.append(b.value)
        assert abs(vals[1] / vals[0] - 1.0) <= 0.05

    def test_linear_weight_tail_diverges(self):
        # w(y) = y makes the tail integrand w^{-2} ~ y^{-2}: value doubles
        # with each resolution doubling
        vals = []
        for n in (128, 256, 512):
            sp = vx.uniform_grid(n)
            w = vx.PointFunction(sp.radial_distances(), "weight")
            _, tail = vx.potential_conditions(sp, const(n, 2.0), const(n, 4.0),
                                              const(n, 1.0, "weight"), w, 0.25)
            vals.append(tail.value)
        assert vals[1] / vals[0] >= 2.0 and vals[2] / vals[1] >= 2.0

    def test_brute_force_ball_part(self):
        rng = np.random.default_rng(2)
        n = 32
        sp = vx.uniform_grid(n)
        p = const(n, 2.0)
        q = const(n, 4.0)
        v = vx.PointFunction(rng.uniform(0.2, 1.0, n), "weight")
        w = vx.PointFunction(rng.uniform(0.5, 1.5, n), "weight")
        alpha = 0.25
        ball_rep, _ = vx.potential_conditions(sp, p, q, v, w, alpha)
        d0, mu = sp.d0, sp.mu
        muB0 = np.array([vx.ball(sp, 0, d).measure for d in d0])
        best = 0.0
        for t in t_sweep(sp):
            total = 0.0
            for x in range(n):
                if not (t < d0[x] <= 1.0):
                    continue
                inner = ((w.values ** -2.0) * mu)[d0 <= t].sum()
                total += (v.values[x] * muB0[x] ** (alpha - 1)) ** 4 * inner**2 * mu[x]
            best = max(best, total)
        assert ball_rep.value == pytest.approx(best, rel=1e-12)


class TestDistancePotentialConditions:
    def test_constant_weights_finite_stable(self):
        # the tail part converges like n^(-1/4), so the stability window
        # needs the larger resolutions
        vals = []
        for n in (1024, 2048):
            sp = vx.uniform_grid(n)
            p = const(n, 3.0)
            q = const(n, 6.0)
            al = const(n, 1 / 6, "alpha")
            one = const(n, 1.0, "weight")
            b, t = vx.distance_potential_conditions(sp, p, q, one, one, al)
            assert np.isfinite(b.value) and np.isfinite(t.value)
            vals.append((b.value, t.value))
        assert vals[1][0] / vals[0][0] <= 1.25
        assert vals[1][1] / vals[0][1] <= 1.25

    def test_comparable_to_ball_version(self):
        # mu B(x0, t) is within [t/2, 2t] on the grid, so the two conditions
        # agree within the factor 2^{(1-alpha) q_max}
        n = 256
        sp = vx.uniform_grid(n)
        p = const(n, 3.0)
        q = const(n, 6.0)
        alpha = 1 / 6
        one = const(n, 1.0, "weight")
        d_rep, _ = vx.distance_potential_conditions(sp, p, q, one, one,
                                                    const(n, alpha, "alpha"))
        b_rep, _ = vx.potential_conditions(sp, p, q, one, one, alpha)
        factor = 2 ** ((1 - alpha) * 6)
        ratio = d_rep.value / b_rep.value
        assert 1.0 / factor <= ratio <= factor

    def test_reports_ahlfors_constant(self):
        n = 64
        sp = vx.uniform_grid(n)
        b, _ = vx.distance_potential_conditions(sp, const(n, 3.0), const(n, 6.0),
                                                const(n, 1.0, "weight"),
                                                const(n, 1.0, "weight"),
                                                const(n, 1 / 6, "alpha"))
        assert b.meta["ahlfors_upper_c1"] == pytest.approx(2.0, abs=0.1)


class TestRadialCondition:
    def test_power_pair_finite_stable(self):
        pair = vx.power_weight_pair(2.0, 0.25, 0.25)
        vals = []
        for n in (256, 512):
            sp = vx.uniform_grid(n)
            rep = vx.radial_condition(sp, const(n, 2.0), pair.v_profile, pair.w_profile,
                                      "potential", alpha=0.25, q=const(n, 4.0))
            vals.append(rep.value)
        assert abs(vals[1] / vals[0] - 1.0) <= 0.05

    def test_zero_profile(self):
        n = 64
        sp = vx.uniform_grid(n)
        rep = vx.radial_condition(sp, const(n, 2.0), lambda t: 0.0 * np.asarray(t),
                                  lambda t: np.ones_like(np.asarray(t)), "maximal")
        assert rep.value == 0.0

    def test_log_pair_value_finite(self):
        pair = vx.log_adjusted_weight_pair(2.0, 1.0)
        n = 256
        sp = vx.uniform_grid(n)
        p = vx.PointFunction(2.0 + sp.d0, "exponent")  # min at the basepoint
        rep = vx.radial_condition(sp, p, pair.v_profile, pair.w_profile,
                                  "maximal-basepoint", require_monotone=False)
        assert 0 < rep.value < 10

    def test_log_pair_trips_monotone_gate(self):
        pair = vx.log_adjusted_weight_pair(2.0, 1.0)
        n = 128
        sp = vx.uniform_grid(n)
        p = vx.PointFunction(2.0 + sp.d0, "exponent")
        with pytest.raises(PreconditionError) as err:
            vx.radial_condition(sp, p, pair.v_profile, pair.w_profile, "maximal-basepoint")
        assert err.value.witness is not None  # the offending t-pair

    def test_basepoint_exponent_variant_matches_brute(self):
        n = 40
        sp = vx.uniform_grid(n)
        p = vx.PointFunction(2.0 + sp.d0, "exponent")
        vprof = lambda t: np.asarray(t) ** 0.5
        wprof = lambda t: np.asarray(t) ** 0.25
        rep = vx.radial_condition(sp, p, vprof, wprof, "maximal-basepoint")
        d0, mu = sp.d0, sp.mu
        dre = sp.radial_distances()
        muB0 = np.array([vx.ball(sp, 0, d).measure for d in d0])
        pp0 = 2.0  # conjugate of p at the basepoint
        best = 0.0
        for t in t_sweep(sp):
            total = 0.0
            for x in range(n):
                if not (t < d0[x] <= 1.0) or muB0[x] == 0:
                    continue
                inner = (wprof(dre) ** -pp0 * mu)[d0 <= t].sum()
                total += (vprof(dre[x]) / muB0[x]) ** p.values[x] \
                    * inner ** (p.values[x] / pp0) * mu[x]
            best = max(best, total)
        assert rep.value == pytest.approx(best, rel=1e-12)

    def test_unknown_variant(self):
        sp = vx.uniform_grid(8)
        with pytest.raises(DomainError):
            vx.radial_condition(sp, const(8, 2.0), lambda t: t, lambda t: t, "nope")


class TestVariableOrderConditions:
    def test_matches_constant_order_exactly(self):
        pair = vx.power_weight_pair(2.0, 0.25, 0.25)
        n = 256
        sp = vx.uniform_grid(n)
        p = const(n, 2.0)
        q = const(n, 4.0)
        dre = sp.radial_distances()
        v = vx.PointFunction(pair.v_profile(dre), "weight")
        w = vx.PointFunction(pair.w_profile(dre), "weight")
        P1, P2 = vx.potential_conditions(sp, p, q, v, w, 0.25)
        with pytest.warns(UserWarning):
            I1, I2 = vx.variable_order_conditions(sp, p, q, v, pair.w_profile,
                                                  const(n, 0.25, "alpha"))
        assert I1.value == pytest.approx(P1.value, rel=1e-9)
        assert I2.value == pytest.approx(P2.value, rel=1e-9)

    def test_zero_v(self):
        n = 64
        sp = vx.uniform_grid(n)
        with pytest.warns(UserWarning):
            I1, I2 = vx.variable_order_conditions(
                sp, const(n, 2.0), const(n, 4.0), const(n, 0.0, "test"),
                lambda t: np.ones_like(np.asarray(t)), const(n, 0.25, "alpha"))
        assert I1.value == 0.0 and I2.value == 0.0

    def test_stated_regime_emits_no_warning(self):
        import warnings
        n = 64
        sp = vx.uniform_grid(n)
        p = const(n, 1.5)
        q = const(n, 15.0)
        al = const(n, 0.8, "alpha")  # 0.8 > 1/1.5
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            vx.variable_order_conditions(sp, p, q, const(n, 1.0, "weight"),
                                         lambda t: np.ones_like(np.asarray(t)), al)

    def test_variable_order_brute_force(self):
        rng = np.random.default_rng(3)
        n = 28
        sp = vx.uniform_grid(n)
        p = const(n, 2.0)
        q = const(n, 4.0)
        v = vx.PointFunction(rng.uniform(0.2, 1.0, n), "weight")
        al = vx.PointFunction(rng.uniform(0.55, 0.9, n), "alpha")
        wprof = lambda t: np.asarray(t) ** 0.3 + 0.1
        I1, I2 = vx.variable_order_conditions(sp, p, q, v, wprof, al)
        d0, mu = sp.d0, sp.mu
        dre = sp.radial_distances()
        muB0 = np.array([vx.ball(sp, 0, d).measure for d in d0])
        best1 = best2 = 0.0
        for t in t_sweep(sp):
            tot1 = tot2 = 0.0
            for x in range(n):
                ax, qx = al.values[x], q.values[x]
                if t < d0[x] <= 1.0 and muB0[x] > 0:
                    inner = (wprof(dre) ** -2.0 * mu)[d0 <= t].sum()
                    tot1 += (v.values[x] * muB0[x] ** (ax - 1)) ** qx * inner ** (qx / 2) * mu[x]
                if d0[x] <= t:
                    sel = (d0 > t) & (d0 <= 1.0) & (muB0 > 0)
                    inner = ((wprof(dre[sel]) * muB0[sel] ** (1 - ax)) ** -2.0 * mu[sel]).sum()
                    tot2 += v.values[x] ** qx * inner ** (qx / 2) * mu[x]
            best1, best2 = max(best1, tot1), max(best2, tot2)
        assert I1.value == pytest.approx(best1, rel=1e-12)
        assert I2.value == pytest.approx(best2, rel=1e-12)


class TestMaximalSingularConditions:
    def test_unit_weights_stable(self):
        vals = []
        for n in (256, 512):
            sp = vx.uniform_grid(n)
            one = const(n, 1.0, "weight")
            ball, tail = vx.maximal_singular_conditions(sp, const(n, 2.0), one, one)
            vals.append(ball.value)
            assert np.isfinite(tail.value)
        # the sup sits at small t where the running integral of muB0^-2
        # approaches its series limit; it stays put under refinement
        assert 1.0 <= vals[0] <= 1.8
        assert abs(vals[1] / vals[0] - 1.0) <= 0.05

    def test_zero_v(self):
        n = 64
        sp = vx.uniform_grid(n)
        ball, tail = vx.maximal_singular_conditions(sp, const(n, 2.0),
                                                    const(n, 0.0, "test"),
                                                    const(n, 1.0, "weight"))
        assert ball.value == 0.0 and tail.value == 0.0

    def test_log_pair_specialization_finite(self):
        pair = vx.log_adjusted_weight_pair(2.0, 1.0)
        n = 256
        sp = vx.uniform_grid(n)
        p = vx.PointFunction(2.0 + sp.d0, "exponent")
        dre = sp.radial_distances()
        v = vx.PointFunction(pair.v_profile(dre), "weight")
        w = vx.PointFunction(pair.w_profile(dre), "weight")
        ball, _ = vx.maximal_singular_conditions(sp, p, v, w)
        assert 0 < ball.value < 10


class TestWeightComparison:
    def test_equal_weights(self):
        n = 64
        sp = vx.uniform_grid(n)
        one = const(n, 1.0, "weight")
        b1, b2, skipped = vx.annulus_weight_comparison(sp, one, one, 2.0)
        assert b1 == 1.0 and b2 == 1.0 and skipped == 0

    def test_radial_power_ratio(self):
        n = 512
        sp = vx.uniform_grid(n)
        w = vx.PointFunction(sp.radial_distances() ** 0.5, "weight")
        b1, _, _ = vx.annulus_weight_comparison(sp, w, w, 2.0)
        # monotone profile: the sup ratio is (A^2 a1)^0.5 = 2
        assert b1 == pytest.approx(2.0, abs=0.05)

    def test_degenerate_weight_rejected(self):
        n = 16
        sp = vx.uniform_grid(n)
        with pytest.raises(DomainError):
            vx.annulus_weight_comparison(sp, const(n, 1.0, "test"),
                                         const(n, 0.0, "test"), 2.0)


class TestMuckenhoupt:
    def test_unit_weight(self):
        sp = vx.uniform_grid(128)
        assert vx.muckenhoupt_ar(sp, const(128, 1.0, "weight"), 2.0) == pytest.approx(1.0)

    def test_dichotomy(self):
        stable, blowing = [], []
        for n in (64, 256, 1024):
            sp = vx.uniform_grid(n)
            dre = sp.radial_distances()
            stable.append(vx.muckenhoupt_ar(sp, vx.PointFunction(dre**0.5, "weight"), 2.0))
            blowing.append(vx.muckenhoupt_ar(sp, vx.PointFunction(dre**1.5, "weight"), 2.0))
        assert stable[2] / stable[1] <= 1.25
        assert blowing[1] / blowing[0] >= 2.0 and blowing[2] / blowing[1] >= 2.0

    def test_needs_r_above_one(self):
        sp = vx.uniform_grid(16)
        with pytest.raises(DomainError):
            vx.muckenhoupt_ar(sp, const(16, 1.0, "weight"), 1.0)

    def test_brute_force_oracle(self):
        rng = np.random.default_rng(4)
        n = 40
        sp = vx.uniform_grid(n)
        w = vx.PointFunction(rng.uniform(0.2, 3.0, n), "weight")
        r = 2.5
        got = vx.muckenhoupt_ar(sp, w, r)
        rp = r / (r - 1)
        best = 0.0
        for x in range(n):
            for rad in np.unique(sp.dist[x]):
                b = vx.ball(sp, x, rad, closed=True)
                m = b.measure
                a1 = (w.values[b.members] * sp.mu[b.members]).sum() / m
                a2 = (w.values[b.members] ** (1 - rp) * sp.mu[b.members]).sum() / m
                best = max(best, a1 * a2 ** (r - 1))
        assert got == pytest.approx(best, rel=1e-12)


class TestWeightFamilies:
    def test_power_pair_gamma_formula(self):
        pair = vx.power_weight_pair(2.0, 0.25, 0.25)
        assert pair.admissible
        assert pair.gamma_min == pytest.approx(
            max(0.0, 1 - 0.25 - 0.25 - (-0.25 + 0.5)))

    def test_power_pair_beta_gate(self):
        pair = vx.power_weight_pair(2.0, 0.25, 0.6)
        assert not pair.admissible and "beta" in pair.reason

    def test_log_pair_profiles(self):
        pair = vx.log_adjusted_weight_pair(2.0, 1.0)
        t = np.array([0.25])
        assert pair.v_profile(t)[0] == pytest.approx(0.5)
        assert pair.w_profile(t)[0] == pytest.approx(0.5 * np.log(8.0))

    def test_hardy_composition(self):
        n = 64
        sp = vx.uniform_grid(n)
        dre = sp.radial_distances()
        v = vx.PointFunction(dre**0.25, "weight")
        w = vx.PointFunction(dre**0.25, "weight")
        v1, w1 = vx.potential_to_hardy_weights(sp, v, w, 0.25)
        assert np.all(v1.values > 0) and np.all(np.isfinite(v1.values))
        assert np.allclose(w1.values, dre**-0.25)


class TestFunctionalInvariants:
    def test_scaling_in_v(self):
        n = 128
        sp = vx.uniform_grid(n)
        p = const(n, 2.0)
        q = const(n, 2.0)
        one = const(n, 1.0, "weight")
        base = vx.hardy_condition(sp, p, q, one, one).value
        for lam in (2.0, 10.0):
            scaled = vx.hardy_condition(sp, p, q, const(n, lam, "weight"), one).value
            assert scaled == pytest.approx(lam**2 * base, rel=1e-9)

    def test_monotone_in_weights(self):
        rng = np.random.default_rng(5)
        n = 96
        sp = vx.uniform_grid(n)
        p = const(n, 2.0)
        q = const(n, 3.0)
        v = vx.PointFunction(rng.uniform(0.2, 1.0, n), "weight")
        w = vx.PointFunction(rng.uniform(0.2, 1.0, n), "weight")
        bigger_v = vx.PointFunction(v.values * rng.uniform(1.0, 2.0, n), "weight")
        bigger_w = vx.PointFunction(w.values * rng.uniform(1.0, 2.0, n), "weight")
        base = vx.hardy_condition(sp, p, q, v, w).value
        assert vx.hardy_condition(sp, p, q, bigger_v, w).value >= base
        assert vx.hardy_condition(sp, p, q, v, bigger_w).value >= base


class TestTrendRule:
    def test_stable(self):
        assert vx.finite_hint([1.0, 1.1, 1.15]) is True

    def test_divergent(self):
        assert vx.finite_hint([1.0, 2.5, 6.0]) is False

    def test_undecided(self):
        assert vx.finite_hint([1.0, 1.6, 1.7]) is None
        assert vx.finite_hint([3.0]) is None

    def test_classify(self):
        assert vx.classify_trend([1, 1, 1]) == "bounded"
        assert vx.classify_trend([1, 2, 4.5]) == "divergent"
        assert vx.classify_trend([1, 1.9]) == "undecided"


class TestRadialPointwiseAgreement:
    def test_radial_equals_composed_pointwise(self):
        # composing the profiles into pointwise fields and running the
        # pointwise pair must reproduce the radial functional exactly
        pair = vx.power_weight_pair(2.0, 0.25, 0.25)
        n = 128
        sp = vx.uniform_grid(n)
        p = const(n, 2.0)
        q = const(n, 4.0)
        radial = vx.radial_condition(sp, p, pair.v_profile, pair.w_profile,
                                     "potential", alpha=0.25, q=q)
        dre = sp.radial_distances()
        v = vx.PointFunction(pair.v_profile(dre), "weight")
        w = vx.PointFunction(pair.w_profile(dre), "weight")
        ball, _ = vx.potential_conditions(sp, p, q, v, w, 0.25)
        assert radial.value == pytest.approx(ball.value, rel=1e-12)


class TestVariableOrderExtras:
    def test_constant_fields_high_order_finite(self):
        # p = 1.5 with order 0.6 sits inside the stated regime (0.6 < 1/1.5
        # fails: 1/p_min = 2/3 > 0.6, so a warning fires) and the target
        # q = p/(1 - alpha p) = 15 stays legal; values must come out finite
        n = 128
        sp = vx.uniform_grid(n)
        p = const(n, 1.5)
        q = const(n, 15.0)
        one = const(n, 1.0, "weight")
        with pytest.warns(UserWarning):
            I1, I2 = vx.variable_order_conditions(
                sp, p, q, one, lambda t: np.ones_like(np.asarray(t)),
                const(n, 0.6, "alpha"))
        assert np.isfinite(I1.value) and np.isfinite(I2.value)

    def test_matches_radial_variant_at_constant_order(self):
        # order 0.6 with p = 2 leaves the sufficient regime of the radial
        # functional, which must still evaluate (warned) and agree exactly
        n = 128
        sp = vx.uniform_grid(n)
        p = const(n, 2.0)
        q = const(n, 4.0)
        wprof = lambda t: np.asarray(t) ** 0.3
        v = vx.PointFunction(np.ones(n), "weight")
        # order 0.6 > 1/p_min = 0.5: inside the variable-order regime
        I1, _ = vx.variable_order_conditions(sp, p, q, v, wprof,
                                             const(n, 0.6, "alpha"))
        with pytest.warns(UserWarning):
            radial = vx.radial_condition(sp, p, lambda t: np.ones_like(np.asarray(t)),
                                         wprof, "potential", alpha=0.6, q=q)
        assert I1.value == pytest.approx(radial.value, rel=1e-9)


class TestHardyCompositionRoutes:
    def test_maximal_pair_via_hardy_machinery(self):
        # composing (v/muB0, 1/w) and (v, 1/(w muB0)) into the Hardy
        # functionals reproduces the directly evaluated pair exactly
        rng = np.random.default_rng(6)
        n = 96
        sp = vx.uniform_grid(n)
        p = const(n, 2.0)
        v = vx.PointFunction(rng.uniform(0.2, 1.5, n), "weight")
        w = vx.PointFunction(rng.uniform(0.2, 1.5, n), "weight")
        direct_ball, direct_tail = vx.maximal_singular_conditions(sp, p, v, w)
        (vf, wf), (vt, wt) = vx.maximal_to_hardy_weights(sp, v, w)
        via_ball = vx.hardy_condition(sp, p, p, vf, wf)
        via_tail = vx.hardy_tail_condition(sp, p, p, vt, wt)
        assert via_ball.value == pytest.approx(direct_ball.value, rel=1e-12)
        assert via_tail.value == pytest.approx(direct_tail.value, rel=1e-12)

    def test_potential_pair_via_hardy_machinery(self):
        # same consistency for the potential composition at constant order
        rng = np.random.default_rng(7)
        n = 96
        sp = vx.uniform_grid(n)
        p = const(n, 2.0)
        q = const(n, 4.0)
        alpha = 0.25
        v = vx.PointFunction(rng.uniform(0.2, 1.5, n), "weight")
        w = vx.PointFunction(rng.uniform(0.2, 1.5, n), "weight")
        direct_ball, _ = vx.potential_conditions(sp, p, q, v, w, alpha)
        v1, w1 = vx.potential_to_hardy_weights(sp, v, w, alpha)
        via_ball = vx.hardy_condition(sp, p, q, v1, w1)
        assert via_ball.value == pytest.approx(direct_ball.value, rel=1e-12)
