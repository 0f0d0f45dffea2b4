"""Two-weight sufficient-condition functionals and weight families.

Every functional here has the shape

    sup over t in [0, L] of
        sum over an outer region in x of  base(x) * (inner sum over y)**g(x)

where the outer region is {t < d0 <= L} or {d0 <= t}, the inner sum runs over
the complementary region, and the per-point exponents come from the
basepoint-local minima of the exponent field.  The sup is discretized over
the distinct basepoint distances plus midpoints, which samples every step of
the piecewise-constant curve exactly; region boundaries use the half-open
convention {d0 <= t} / {t < d0} throughout, so mirror and constant-order
consistency identities hold exactly on discrete data.

Values are reported with the full per-t curve and the attaining t.
Finiteness is a refinement trend, never a boolean at one resolution; see
``finite_hint``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError, PreconditionError
from .exponents import PointFunction, conjugate, local_exponents
from .space import DiscreteSpace, comparison_annulus

__all__ = [
    "ConditionReport",
    "ProfilePair",
    "t_sweep",
    "finite_hint",
    "classify_trend",
    "hardy_condition",
    "hardy_tail_condition",
    "potential_conditions",
    "distance_potential_conditions",
    "radial_condition",
    "variable_order_conditions",
    "maximal_singular_conditions",
    "annulus_weight_comparison",
    "muckenhoupt_ar",
    "power_weight_pair",
    "log_adjusted_weight_pair",
    "potential_to_hardy_weights",
    "maximal_to_hardy_weights",
    "RADIAL_VARIANTS",
]

RADIAL_VARIANTS = ("potential", "potential-basepoint", "distance-potential",
                   "maximal", "maximal-basepoint")


@dataclass
class ConditionReport:
    name: str
    value: float
    argmax_t: float
    ts: np.ndarray
    curve: np.ndarray
    resolution: int
    finite_hint: Optional[bool] = None
    meta: dict = field(default_factory=dict)

    @property
    def per_t_curve(self):
        return list(zip(self.ts.tolist(), self.curve.tolist()))


def finite_hint(values: Sequence[float]) -> Optional[bool]:
    """Two-resolution trend rule: all successive ratios <= 1.25 -> True
    (stable), the last two ratios >= 2 -> False (divergent), else None."""
    vals = [float(v) for v in values]
    if len(vals) < 2:
        return None
    ratios = []
    for a, b in zip(vals, vals[1:]):
        if a == 0 and b == 0:
            ratios.append(1.0)
        elif a == 0:
            ratios.append(np.inf)
        else:
            ratios.append(b / a)
    if all(r <= 1.25 for r in ratios):
        return True
    if len(ratios) >= 2 and ratios[-1] >= 2 and ratios[-2] >= 2:
        return False
    return None


def classify_trend(values: Sequence[float]) -> str:
    hint = finite_hint(values)
    return "bounded" if hint else ("divergent" if hint is False else "undecided")


def t_sweep(space: DiscreteSpace) -> np.ndarray:
    """Sweep knots: 0, the distinct basepoint distances within [0, L],
    midpoints between consecutive ones, and L itself."""
    L = space.L_eff
    d = np.unique(space.d0)
    d = d[d <= L]
    mids = 0.5 * (d[:-1] + d[1:]) if d.size > 1 else np.array([])
    return np.unique(np.concatenate([[0.0], d, mids, [L]]))


def _nonneg(space, f: PointFunction, what: str) -> np.ndarray:
    if len(f) != space.n:
        raise DomainError(f"{what} does not match the space")
    if np.any(f.values < 0):
        raise DomainError(f"{what} must be nonnegative")
    return f.values


def _positive(space, f: PointFunction, what: str) -> np.ndarray:
    if len(f) != space.n or f.kind != "weight" or np.any(f.values <= 0):
        raise DomainError(f"{what} must be a strictly positive weight field")
    return f.values


def _muB0(space: DiscreteSpace) -> np.ndarray:
    """Open-ball measures mu B(x0, d0(x)) per point (0 at the basepoint)."""
    d0 = space.d0
    order = np.argsort(d0, kind="stable")
    prefix = np.concatenate([[0.0], np.cumsum(space.mu[order])])
    return prefix[np.searchsorted(d0[order], d0, side="left")]


def _sup_functional(space: DiscreteSpace, name: str, outer_base: np.ndarray,
                    outer_tail: bool, inner, gamma: np.ndarray,
                    inner_head: bool, meta: Optional[dict] = None) -> ConditionReport:
    """Evaluate one sup-functional over the sweep.

    ``inner`` is either an array (x-independent inner integrand including mu)
    or a callable x -> array.  ``gamma`` is the per-x outer power applied to
    the inner sum.  Non-finite inner entries (basepoint atoms of singular
    radial profiles) are zeroed and counted.
    """
    L = space.L_eff
    d0 = space.d0
    cap = d0 <= L * (1 + 1e-12)
    O = np.where(cap, outer_base, 0.0)
    order = np.argsort(d0, kind="stable")
    ds = d0[order]
    ts = t_sweep(space)
    head_count = np.searchsorted(ds, ts, side="right")
    curve = np.zeros(ts.size)
    skipped = 0

    def w_of_t(yvals: np.ndarray) -> np.ndarray:
        csum = np.concatenate([[0.0], np.cumsum(yvals[order])])
        head = csum[head_count]
        return head if inner_head else csum[-1] - head

    def clean(yvals: np.ndarray) -> np.ndarray:
        nonlocal skipped
        yvals = np.where(cap, yvals, 0.0)
        bad = ~np.isfinite(yvals)
        if bad.any():
            skipped += int(bad.sum())
            yvals = np.where(bad, 0.0, yvals)
        return yvals

    # x contributes at sweep index k when outer_tail: k < cut(x); else k >= cut(x)
    cut = np.searchsorted(ts, d0, side="left")
    gamma = np.broadcast_to(np.asarray(gamma, dtype=float), (space.n,)).astype(float)

    def powW(W: np.ndarray, g: float) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.where(W > 0, W ** g, 0.0)

    if isinstance(inner, np.ndarray):
        W = w_of_t(clean(inner))
        if np.ptp(gamma) <= 1e-13 * max(1.0, abs(float(gamma[0]))):
            # outer sums per sweep index via a histogram over cut values
            H = np.zeros(ts.size + 1)
            np.add.at(H, cut, O)
            cumH = np.cumsum(H)[: ts.size]
            R = (float(O.sum()) - cumH) if outer_tail else cumH
            curve = powW(W, float(gamma[0])) * R
        else:
            for x in np.flatnonzero(O > 0):
                sl = slice(0, cut[x]) if outer_tail else slice(cut[x], None)
                curve[sl] += O[x] * powW(W[sl], gamma[x])
    else:
        for x in np.flatnonzero(O > 0):
            W = w_of_t(clean(inner(x)))
            sl = slice(0, cut[x]) if outer_tail else slice(cut[x], None)
            curve[sl] += O[x] * powW(W[sl], gamma[x])

    j = int(curve.argmax())
    meta = dict(meta or {})
    meta["skipped_inner"] = skipped
    return ConditionReport(name, float(curve[j]), float(ts[j]), ts, curve,
                           resolution=space.n, meta=meta)


def _ordering_check(name: str, lower: PointFunction, upper: PointFunction):
    bad = np.flatnonzero(lower.values > upper.values * (1 + 1e-12))
    if bad.size:
        raise PreconditionError(
            f"{name}: local exponent exceeds the target exponent", witness=int(bad[0]))


def _pow_inner(wv: np.ndarray, e: np.ndarray, mu: np.ndarray):
    """Inner integrand w**e(x) mu, collapsed to an array when e is constant.
    Infinite entries (zero base, negative exponent) are left for the sweep
    evaluator to zero out and count."""
    if np.ptp(e) <= 1e-13 * max(1.0, abs(float(e[0]))):
        with np.errstate(divide="ignore"):
            return wv ** e[0] * mu

    def inner(x):
        with np.errstate(divide="ignore"):
            return wv ** e[x] * mu

    return inner


def hardy_condition(space: DiscreteSpace, p: PointFunction, q: PointFunction,
                    v: PointFunction, w: PointFunction,
                    a: Optional[float] = None) -> ConditionReport:
    """Forward Hardy functional: sup over t of

        sum_{t < d0(x) <= L} v(x)**q(x)
            (sum_{d0(y) <= t} w(y)**e(x) mu(y))**(q(x)/e(x)) mu(x)

    where e is the conjugate of the capped ball-minimum of p.  Requires the
    ordering capped-ball-min(p) <= q pointwise.
    """
    vv = _nonneg(space, v, "v")
    wv = _nonneg(space, w, "w")
    le = local_exponents(space, p, a)
    _ordering_check("hardy condition", le.ball_min_capped, q)
    e = conjugate(le.ball_min_capped).values
    O = vv ** q.values * space.mu
    return _sup_functional(space, "hardy", O, True, _pow_inner(wv, e, space.mu),
                           q.values / e, True)


def hardy_tail_condition(space: DiscreteSpace, p: PointFunction, q: PointFunction,
                         v: PointFunction, w: PointFunction,
                         a: Optional[float] = None) -> ConditionReport:
    """Tail Hardy functional: outer region {d0 <= t}, inner region
    {t < d0 <= L}, with e the conjugate of the capped tail-minimum of p."""
    vv = _nonneg(space, v, "v")
    wv = _nonneg(space, w, "w")
    le = local_exponents(space, p, a)
    _ordering_check("hardy tail condition", le.tail_min_capped, q)
    e = conjugate(le.tail_min_capped).values
    O = vv ** q.values * space.mu
    return _sup_functional(space, "hardy-tail", O, False, _pow_inner(wv, e, space.mu),
                           q.values / e, False)


def _alpha_gate(alpha_vals: np.ndarray, p: PointFunction):
    p_plus = float(p.values.max())
    if np.any(alpha_vals <= 0) or np.any(alpha_vals >= 1.0 / p_plus):
        raise DomainError(
            f"order must lie in (0, 1/p_max) = (0, {1.0 / p_plus:.6g})")


def potential_conditions(space: DiscreteSpace, p: PointFunction, q: PointFunction,
                         v: PointFunction, w: PointFunction, alpha: float,
                         a: Optional[float] = None):
    """Ball-potential pair of functionals for constant order alpha.

    ball part : outer {t < d0 <= L} with base (v / muB0**(1-alpha))**q,
                inner {d0 <= t} of w**(-e0(x)) mu
    tail part : outer {d0 <= t} with base v**q,
                inner {t < d0 <= L} of (w muB0**(1-alpha))**(-e1(x)) mu

    e0/e1 are the conjugates of the capped ball/tail minima of p.
    Returns (ball_report, tail_report).
    """
    vv = _nonneg(space, v, "v")
    wv = _positive(space, w, "w")
    _alpha_gate(np.array([alpha]), p)
    le = local_exponents(space, p, a)
    e0 = conjugate(le.ball_min_capped).values
    e1 = conjugate(le.tail_min_capped).values
    muB0 = _muB0(space)
    mu = space.mu

    with np.errstate(divide="ignore"):
        O1 = np.where(muB0 > 0, (vv * np.where(muB0 > 0, muB0, 1.0) ** (alpha - 1.0))
                      ** q.values * mu, 0.0)
    r1 = _sup_functional(space, "potential-ball", O1, True,
                         _pow_inner(wv, -e0, mu), q.values / e0, True)

    O2 = vv ** q.values * mu
    base2 = wv * muB0 ** (1.0 - alpha)
    r2 = _sup_functional(space, "potential-tail", O2, False,
                         _pow_inner(base2, -e1, mu), q.values / e1, False)
    return r1, r2


def distance_potential_conditions(space: DiscreteSpace, p: PointFunction, q: PointFunction,
                                  v: PointFunction, w: PointFunction, alpha: PointFunction,
                                  a: Optional[float] = None):
    """Distance-potential pair for variable order (upper Ahlfors 1-regular
    spaces): the ball part uses base (v / d0**(1-alpha(x)))**q with inner
    w**(-e0(x)); the tail part uses inner (w(y) d0(y)**(1-alpha(y)))**(-e1(x)).
    Returns (ball_report, tail_report); the space's upper-Ahlfors constant is
    attached to both reports' meta.
    """
    vv = _nonneg(space, v, "v")
    wv = _positive(space, w, "w")
    _alpha_gate(alpha.values, p)
    from .space import ahlfors_regularity
    c1, _, _, _ = ahlfors_regularity(space, 1.0)
    meta = {"ahlfors_upper_c1": c1}
    le = local_exponents(space, p, a)
    e0 = conjugate(le.ball_min).values
    e1 = conjugate(le.tail_min).values
    d0 = space.d0
    mu = space.mu

    with np.errstate(divide="ignore"):
        O1 = np.where(d0 > 0, (vv * np.where(d0 > 0, d0, 1.0)
                               ** (alpha.values - 1.0)) ** q.values * mu, 0.0)
    r1 = _sup_functional(space, "distance-ball", O1, True,
                         _pow_inner(wv, -e0, mu), q.values / e0, True, meta=meta)

    O2 = vv ** q.values * mu
    base2 = wv * np.where(d0 > 0, d0, 1.0) ** (1.0 - alpha.values)
    base2 = np.where(d0 > 0, base2, np.inf)  # basepoint atom never enters the tail
    r2 = _sup_functional(space, "distance-tail", O2, False,
                         _pow_inner(base2, -e1, mu), q.values / e1, False, meta=meta)
    return r1, r2


def _check_profile(space: DiscreteSpace, profile: Callable, what: str,
                   require_monotone: bool):
    ts = t_sweep(space)
    grid = np.unique(np.append(ts[ts > 0], 2.0 * space.L_eff))
    vals = np.asarray(profile(grid), dtype=float)
    if np.any(vals < 0) or not np.all(np.isfinite(vals)):
        j = int(np.flatnonzero((vals < 0) | ~np.isfinite(vals))[0])
        raise PreconditionError(f"{what} profile must be nonnegative and finite",
                                witness=float(grid[j]))
    if require_monotone:
        diffs = np.diff(vals)
        bad = np.flatnonzero(diffs < -1e-12 * max(1.0, float(np.abs(vals).max())))
        if bad.size:
            j = int(bad[0])
            raise PreconditionError(
                f"{what} profile must be nondecreasing on (0, 2L]",
                witness=(float(grid[j]), float(grid[j + 1])))


def radial_condition(space: DiscreteSpace, p: PointFunction, v_profile: Callable,
                     w_profile: Callable, variant: str, alpha: Optional[float] = None,
                     q: Optional[PointFunction] = None, a: Optional[float] = None,
                     require_monotone: bool = True) -> ConditionReport:
    """Sup-functional for radially composed weights v(d0(x)), w(d0(y)).

    Variants (all with outer region {t < d0 <= L} and inner {d0 <= t}):

      "potential"           base (v(d0)/muB0**(1-alpha))**q, inner exponent
                            -e0(x), power q(x)/e0(x)
      "potential-basepoint" same base, inner exponent -p'(x0), power q/p'(x0)
      "distance-potential"  base (v(d0)/d0**(1-alpha))**q, inner -e0(x) with
                            the uncapped ball minimum
      "maximal"             base (v(d0)/muB0)**p, inner -e0(x), power p/e0
      "maximal-basepoint"   base (v(d0)/muB0)**p, inner -p'(x0), power p/p'(x0)

    Profiles must be positive and nondecreasing on the swept grid
    (``require_monotone=False`` skips the monotonicity gate; some admissible
    log-corrected weights fail it away from 0 yet still yield finite values).
    The basepoint atom of the profiles is evaluated at half the smallest
    positive distance, the quadrature reading of the improper integral.
    """
    if variant not in RADIAL_VARIANTS:
        raise DomainError(f"unknown radial variant {variant!r}")
    _check_profile(space, v_profile, "v", require_monotone)
    _check_profile(space, w_profile, "w", require_monotone)
    needs_q = variant in ("potential", "potential-basepoint", "distance-potential")
    if needs_q:
        if alpha is None or q is None:
            raise DomainError(f"variant {variant!r} needs alpha and q")
        if not 0.0 < alpha < 1.0:
            raise DomainError("order must lie in (0, 1)")
        if alpha >= 1.0 / float(p.values.max()):
            warnings.warn("order leaves the sufficient regime (alpha >= 1/p_max); "
                          "functional evaluated anyway", stacklevel=2)
        out_exp = q.values
    else:
        out_exp = p.values

    dre = space.radial_distances()
    vr = np.asarray(v_profile(dre), dtype=float)
    wr = np.asarray(w_profile(dre), dtype=float)
    if np.any(wr <= 0) or not np.all(np.isfinite(wr)):
        raise PreconditionError("w profile must be positive on the swept distances")
    le = local_exponents(space, p, a)
    mu = space.mu
    muB0 = _muB0(space)
    d0 = space.d0
    p_conj_x0 = float(p.values[space.x0] / (p.values[space.x0] - 1.0))

    if variant in ("potential", "potential-basepoint"):
        denom = np.where(muB0 > 0, muB0, 1.0) ** (1.0 - alpha)
        O = np.where(muB0 > 0, (vr / denom) ** out_exp * mu, 0.0)
    elif variant == "distance-potential":
        denom = np.where(d0 > 0, d0, 1.0) ** (1.0 - alpha)
        O = np.where(d0 > 0, (vr / denom) ** out_exp * mu, 0.0)
    else:
        O = np.where(muB0 > 0, (vr / np.where(muB0 > 0, muB0, 1.0)) ** out_exp * mu, 0.0)

    if variant in ("potential-basepoint", "maximal-basepoint"):
        e = np.full(space.n, p_conj_x0)
    elif variant == "distance-potential":
        e = conjugate(le.ball_min).values
    else:
        e = conjugate(le.ball_min_capped).values

    return _sup_functional(space, f"radial-{variant}", O, True,
                           _pow_inner(wr, -e, mu), out_exp / e, True)


def variable_order_conditions(space: DiscreteSpace, p: PointFunction, q: PointFunction,
                              v: PointFunction, w_profile: Callable, alpha: PointFunction,
                              a: Optional[float] = None,
                              require_monotone: bool = True):
    """Variable-order pair with a radial w: the ball part has base
    (v/muB0**(1-alpha(x)))**q and inner w(d0(y))**(-e0(x)); the tail part has
    base v**q and inner (w(d0(y)) muB0(y)**(1-alpha(x)))**(-e1(x)), where the
    order of the *outer* point enters the inner integrand.

    The stated regime 1/p_min < alpha is surfaced as a warning, not a gate:
    the functionals are evaluated for any order field in (0, 1).
    """
    vv = _nonneg(space, v, "v")
    _check_profile(space, w_profile, "w", require_monotone)
    p_min = float(p.values.min())
    if not np.all(alpha.values > 1.0 / p_min):
        warnings.warn("order field leaves the stated regime (min order <= 1/p_min); "
                      "functionals evaluated anyway", stacklevel=2)
    le = local_exponents(space, p, a)
    e0 = conjugate(le.ball_min).values
    e1 = conjugate(le.tail_min).values
    mu = space.mu
    muB0 = _muB0(space)
    dre = space.radial_distances()
    wr = np.asarray(w_profile(dre), dtype=float)
    if np.any(wr <= 0) or not np.all(np.isfinite(wr)):
        raise PreconditionError("w profile must be positive on the swept distances")
    av = alpha.values

    with np.errstate(divide="ignore"):
        O1 = np.where(muB0 > 0,
                      (vv * np.where(muB0 > 0, muB0, 1.0) ** (av - 1.0)) ** q.values * mu,
                      0.0)
    r1 = _sup_functional(space, "variable-order-ball", O1, True,
                         _pow_inner(wr, -e0, mu), q.values / e0, True)

    O2 = vv ** q.values * mu
    muB0_safe = np.where(muB0 > 0, muB0, np.inf)

    def inner2(x):
        return (wr * muB0_safe ** (1.0 - av[x])) ** (-e1[x]) * mu

    r2 = _sup_functional(space, "variable-order-tail", O2, False, inner2,
                         q.values / e1, False)
    return r1, r2


def maximal_singular_conditions(space: DiscreteSpace, p: PointFunction,
                                v: PointFunction, w: PointFunction,
                                a: Optional[float] = None):
    """The maximal/singular pair: ball part with base (v/muB0)**p and inner
    w**(-e0(x)); tail part with base v**p and inner (w muB0)**(-e1(x)).
    Returns (ball_report, tail_report).

    The tail integrand multiplies the weight by the ball measure: it is the
    tail-Hardy functional of the composed pair (v, 1/(w muB0)), and the
    order-zero limit of the potential tail part.
    """
    vv = _nonneg(space, v, "v")
    wv = _positive(space, w, "w")
    le = local_exponents(space, p, a)
    e0 = conjugate(le.ball_min_capped).values
    e1 = conjugate(le.tail_min_capped).values
    mu = space.mu
    muB0 = _muB0(space)

    O1 = np.where(muB0 > 0, (vv / np.where(muB0 > 0, muB0, 1.0)) ** p.values * mu, 0.0)
    r1 = _sup_functional(space, "maximal-ball", O1, True,
                         _pow_inner(wv, -e0, mu), p.values / e0, True)

    O2 = vv ** p.values * mu
    base2 = wv * muB0  # zero at the basepoint: masked, and outside the region
    r2 = _sup_functional(space, "maximal-tail", O2, False,
                         _pow_inner(base2, -e1, mu), p.values / e1, False)
    return r1, r2


def annulus_weight_comparison(space: DiscreteSpace, v: PointFunction, w: PointFunction,
                              A: float, a1: float = 1.0, use_l_factor: bool = False):
    """Comparability of v over the distance-comparable annulus with w at the
    point: b1 = sup_x max(v on F_x) / w(x), b2 = sup_x v(x) / min(w on F_x).
    Points with empty annuli are skipped and counted."""
    vv = _nonneg(space, v, "v")
    wv = _positive(space, w, "w")
    b1 = b2 = 0.0
    skipped = 0
    for x in range(space.n):
        members, _ = comparison_annulus(space, x, A, a1=a1, use_l_factor=use_l_factor)
        if members.size == 0:
            skipped += 1
            continue
        b1 = max(b1, float(vv[members].max() / wv[x]))
        b2 = max(b2, float(vv[x] / wv[members].min()))
    return b1, b2, skipped


def muckenhoupt_ar(space: DiscreteSpace, w: PointFunction, r: float) -> float:
    """Muckenhoupt constant: sup over centered balls of
    (avg of w) * (avg of w**(1-r'))**(r-1)."""
    if r <= 1:
        raise DomainError("Muckenhoupt exponent must exceed 1")
    wv = _positive(space, w, "w")
    rp = r / (r - 1.0)
    best = 0.0
    mu = space.mu
    for x in range(space.n):
        d = space.dist[x]
        order = np.argsort(d, kind="stable")
        ds = d[order]
        cmu = np.cumsum(mu[order])
        cw = np.cumsum((wv * mu)[order])
        cwr = np.cumsum((wv ** (1.0 - rp) * mu)[order])
        ends = np.searchsorted(ds, np.unique(ds), side="right") - 1
        vals = (cw[ends] / cmu[ends]) * (cwr[ends] / cmu[ends]) ** (r - 1.0)
        best = max(best, float(vals.max()))
    return best


# ---------------------------------------------------------------------------
# weight families


@dataclass(frozen=True)
class ProfilePair:
    """A radial weight pair (v, w) with its admissibility data."""

    v_profile: Callable[[np.ndarray], np.ndarray]
    w_profile: Callable[[np.ndarray], np.ndarray]
    admissible: bool
    gamma_min: float
    reason: str = ""


def power_weight_pair(p_value: float, alpha: float, beta: float,
                      gamma: Optional[float] = None) -> ProfilePair:
    """Power pair v(t) = t**g, w(t) = t**beta for a constant exponent.

    Requires 0 <= beta < 1/p'; the smallest admissible g is
    max(0, 1 - alpha - 1/q - (-beta + 1/p')) with q = p/(1 - alpha p).
    When gamma is omitted the minimal one is used.
    """
    if p_value <= 1:
        raise DomainError("exponent must exceed 1")
    if not 0 < alpha < 1.0 / p_value:
        raise DomainError("order must lie in (0, 1/p)")
    p_conj = p_value / (p_value - 1.0)
    q_value = p_value / (1.0 - alpha * p_value)
    gamma_min = max(0.0, 1.0 - alpha - 1.0 / q_value - (-beta + 1.0 / p_conj))
    if not 0 <= beta < 1.0 / p_conj:
        return ProfilePair(lambda t: np.asarray(t) ** 0.0, lambda t: np.asarray(t) ** 0.0,
                           False, gamma_min,
                           reason=f"beta={beta:g} outside [0, 1/p') = [0, {1.0 / p_conj:g})")
    g = gamma_min if gamma is None else float(gamma)
    if g < gamma_min - 1e-12:
        return ProfilePair(lambda t: np.asarray(t) ** g, lambda t: np.asarray(t) ** beta,
                           False, gamma_min, reason=f"gamma={g:g} below minimum {gamma_min:g}")
    return ProfilePair(lambda t: np.asarray(t, dtype=float) ** g,
                       lambda t: np.asarray(t, dtype=float) ** beta, True, gamma_min)


def log_adjusted_weight_pair(p_conj_at_base: float, L: float) -> ProfilePair:
    """Log-corrected pair v(t) = t**(1/p'(x0)), w(t) = t**(1/p'(x0)) log(2L/t).

    w increases only near 0 (its maximum sits at t = 2 L exp(-p'(x0))), so
    condition evaluations must relax the monotonicity gate.
    """
    if p_conj_at_base <= 1:
        raise DomainError("conjugate exponent must exceed 1")
    if L <= 0:
        raise DomainError("L must be positive")
    g = 1.0 / p_conj_at_base

    def v(t):
        return np.asarray(t, dtype=float) ** g

    def w(t):
        t = np.asarray(t, dtype=float)
        return t ** g * np.log(2.0 * L / t)

    return ProfilePair(v, w, True, 0.0)


def potential_to_hardy_weights(space: DiscreteSpace, v: PointFunction,
                               w: PointFunction, alpha: float):
    """Compose the outer-weight potential inequality into Hardy form:
    (v muB0**(alpha-1), 1/w).  The basepoint's zero ball measure is floored
    to half its own weight (its quadrature cell)."""
    vv = _nonneg(space, v, "v")
    wv = _positive(space, w, "w")
    muB0 = np.maximum(_muB0(space), 0.5 * space.mu[space.x0])
    return (PointFunction(vv * muB0 ** (alpha - 1.0), "weight"),
            PointFunction(1.0 / wv, "weight"))


def maximal_to_hardy_weights(space: DiscreteSpace, v: PointFunction, w: PointFunction):
    """Compose the outer-weight maximal/singular inequality into Hardy form.

    Returns ``((v/muB0, 1/w), (v, 1/(w muB0)))``: the first pair drives the
    forward transform, the second the tail transform.  Evaluating the Hardy
    functionals on these pairs reproduces the directly evaluated
    maximal/singular pair exactly (the floored basepoint values never enter
    the regions).
    """
    vv = _nonneg(space, v, "v")
    wv = _positive(space, w, "w")
    muB0 = np.maximum(_muB0(space), 0.5 * space.mu[space.x0])
    forward = (PointFunction(np.where(vv > 0, vv / muB0, 0.0), "test"),
               PointFunction(1.0 / wv, "weight"))
    tail = (v, PointFunction(1.0 / (wv * muB0), "weight"))
    return forward, tail
