"""Empirical boundedness checks: norm-ratio probes, nonlinear power
iteration for constant exponents, the explicit necessity test functions, and
refinement studies pairing condition values with ratios.

Every ratio reported here is a lower bound on the true operator norm between
the weighted spaces; claims are therefore framed as trends across
resolutions, never as exact norms.  All sampling is seeded and the probe
order is fixed, so results are bit-reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from .conditions import classify_trend
from .errors import DomainError, PreconditionError
from .exponents import PointFunction, conjugate
from .norms import luxemburg_norm
from .space import DiscreteSpace

__all__ = [
    "NormEstimate",
    "empirical_ratio",
    "power_iteration_pq",
    "necessity_probe",
    "refinement_study",
    "StudyReport",
    "PROBE_VARIANTS",
]

PROBE_VARIANTS = ("hardy", "potential-ball", "potential-tail", "maximal")

# radial power profiles mixed into the probe family
_PROBE_POWERS = np.round(np.arange(-0.4, 0.95, 0.1), 10)
_MAX_BALL_PROBES = 64


@dataclass
class NormEstimate:
    ratio: float
    best_f: Optional[PointFunction]
    method: str
    trials: int
    history: List[float] = field(default_factory=list)
    discarded: int = 0
    converged: bool = True


def _ratio(space, op, p, q, v, w, f_vals: np.ndarray) -> Optional[float]:
    den = luxemburg_norm(space, p, PointFunction(w.values * f_vals, "test")).value
    if den == 0.0:
        return None
    out = op(f_vals)
    num = luxemburg_norm(space, q, PointFunction(v.values * out, "test")).value
    return num / den


def empirical_ratio(space: DiscreteSpace, op: Callable[[np.ndarray], np.ndarray],
                    p: PointFunction, q: PointFunction, v: PointFunction,
                    w: PointFunction, trials: int = 32, seed: int = 0) -> NormEstimate:
    """Best ratio ||v Op f||_q / ||w f||_p over the fixed probe family plus
    seeded random fields.

    Probes, in order: indicators of closed basepoint balls at up to 64
    quantile radii, radial powers d0**s for s in -0.4..0.9, the conjugate
    weight functions w**(-p'(.)) cut to the same balls, then ``trials``
    random nonnegative mixtures of ball indicators, powers and point masses.
    Probes with vanishing weighted norm are discarded and counted.
    """
    if trials < 1:
        raise DomainError("need at least one trial")
    d0 = space.d0
    radii = np.unique(d0)
    if radii.size > _MAX_BALL_PROBES:
        qs = np.linspace(0.0, 1.0, _MAX_BALL_PROBES)
        radii = np.quantile(radii, qs, method="nearest")
        radii = np.unique(radii)
    dre = space.radial_distances()

    probes: List[np.ndarray] = []
    for r in radii:
        probes.append((d0 <= r).astype(float))
    for s in _PROBE_POWERS:
        probes.append(dre ** s)
    if np.all(w.values > 0):
        pc = conjugate(p).values
        wconj = w.values ** (-pc)
        for r in radii:
            probes.append(wconj * (d0 <= r))

    rng = np.random.default_rng(seed)
    n = space.n
    for _ in range(trials):
        f = rng.uniform(0.0, 1.0) * (d0 <= rng.choice(radii)).astype(float)
        f = f + rng.uniform(0.0, 1.0) * dre ** rng.choice(_PROBE_POWERS)
        masses = rng.integers(0, n, size=3)
        f[masses] += rng.uniform(0.5, 2.0, size=3)
        probes.append(f)

    best, best_f, discarded = 0.0, None, 0
    for f_vals in probes:
        r = _ratio(space, op, p, q, v, w, f_vals)
        if r is None:
            discarded += 1
            continue
        if r > best:
            best, best_f = r, f_vals
    return NormEstimate(best, None if best_f is None else PointFunction(best_f, "test"),
                        "probe", len(probes), discarded=discarded)


def power_iteration_pq(space: DiscreteSpace, kernel: np.ndarray, p_const: float,
                       q_const: float, iters: int = 200, tol: float = 1e-12) -> NormEstimate:
    """Nonlinear power iteration for the L^p -> L^q norm of a nonnegative
    kernel operator K f(x) = sum k(x,y) f(y) mu(y).

    The iteration alternates the operator with the duality maps of the two
    norms; for positive kernels it converges to the norm, and for
    p = q = 2 it reduces to the classical power method on the normal matrix.
    Non-convergence within ``iters`` returns the best iterate, flagged.
    """
    if not (1.0 < p_const < np.inf and 1.0 < q_const < np.inf):
        raise DomainError("constant exponents must lie in (1, inf)")
    k = np.asarray(kernel, dtype=float)
    if k.shape != (space.n, space.n) or np.any(k < 0):
        raise DomainError("kernel must be a nonnegative matrix matching the space")
    mu = space.mu

    def norm(vals: np.ndarray, expo: float) -> float:
        return float((np.abs(vals) ** expo * mu).sum() ** (1.0 / expo))

    f = np.ones(space.n)
    f /= norm(f, p_const)
    sigma_prev, sigma = -1.0, 0.0
    history = []
    it = 0
    for it in range(1, iters + 1):
        u = k @ (f * mu)
        nu = norm(u, q_const)
        if nu == 0.0:
            return NormEstimate(0.0, PointFunction(f, "test"), "power-iteration", it, history)
        sigma = nu / norm(f, p_const)
        history.append(sigma)
        if abs(sigma - sigma_prev) <= tol * max(sigma, 1e-300):
            return NormEstimate(float(sigma), PointFunction(f, "test"),
                                "power-iteration", it, history)
        sigma_prev = sigma
        h = (u / nu) ** (q_const - 1.0)
        z = k.T @ (h * mu)
        f = z ** (1.0 / (p_const - 1.0))
        nf = norm(f, p_const)
        if nf == 0.0:
            break
        f /= nf
    return NormEstimate(float(sigma), PointFunction(f, "test"), "power-iteration",
                        it, history, converged=False)


def _const(space, value, kind="exponent"):
    return PointFunction.constant(space.n, value, kind)


def necessity_probe(space: DiscreteSpace, variant: str, p_const: float, q_const: float,
                    v: PointFunction, w: PointFunction, t: float):
    """Evaluate the explicit necessity test function of a condition at cut t.

    Returns (probe_ratio, condition_value_at_t).  The probe is the conjugate
    weight function cut at the ball (or its tail companion); for a condition
    whose value diverges under refinement, the probe ratio must diverge too.

    Variants:
      "hardy"          f = w**-p' on {d0 <= t}; ratio ||v H f||_q / ||w f||_p
                       with H the unweighted forward Hardy sum; condition is
                       the hardy functional of (v, 1/w) at t.
      "potential-ball" the same f through the ball potential of order
                       alpha = 1/p - 1/q; condition is the ball part at t.
      "potential-tail" f = w**-p' muB0**((alpha-1)(p'-1)) on {d0 > t};
                       condition is the tail part at t.
      "maximal"        the ball probe through the maximal function with
                       q = p; condition is the maximal ball part at t.
    """
    if variant not in PROBE_VARIANTS:
        raise DomainError(f"unknown probe variant {variant!r}")
    if p_const <= 1 or q_const < p_const:
        raise DomainError("need constant exponents 1 < p <= q")
    if np.any(w.values <= 0):
        raise DomainError("probe weight must be positive on its support")
    from .conditions import _muB0
    from .operators import ball_potential, hardy_transform, maximal_function

    mu = space.mu
    d0 = space.d0
    pp = p_const / (p_const - 1.0)
    head = d0 <= t
    tail = ~head
    p_pf, q_pf = _const(space, p_const), _const(space, q_const)
    ones = _const(space, 1.0, "weight")

    def lux(expo, vals):
        return luxemburg_norm(space, expo, PointFunction(vals, "test")).value

    if variant == "hardy":
        f = w.values ** (-pp) * head
        Hf = hardy_transform(space, ones, ones, PointFunction(f, "test")).values.values
        num, den = lux(q_pf, v.values * Hf), lux(p_pf, w.values * f)
        inner = float((w.values ** (-pp) * mu)[head].sum())
        cond = float(((v.values ** q_const * mu)[tail & (d0 <= space.L_eff)]).sum()
                     * inner ** (q_const / pp))
        return (0.0 if den == 0 else num / den), cond

    alpha = 1.0 / p_const - 1.0 / q_const
    muB0 = _muB0(space)
    if variant == "potential-ball":
        if alpha <= 0:
            raise DomainError("ball-potential probe needs q > p")
        f = w.values ** (-pp) * head
        Tf = ball_potential(space, _const(space, alpha, "alpha"),
                            PointFunction(f, "test")).values.values
        num, den = lux(q_pf, v.values * Tf), lux(p_pf, w.values * f)
        inner = float((w.values ** (-pp) * mu)[head].sum())
        outer = tail & (d0 <= space.L_eff) & (muB0 > 0)
        cond = float(((v.values[outer] * muB0[outer] ** (alpha - 1.0)) ** q_const
                      * mu[outer]).sum() * inner ** (q_const / pp))
        return (0.0 if den == 0 else num / den), cond

    if variant == "potential-tail":
        if alpha <= 0:
            raise DomainError("tail-potential probe needs q > p")
        safe = np.where(muB0 > 0, muB0, np.inf)
        f = w.values ** (-pp) * safe ** ((alpha - 1.0) * (pp - 1.0)) * tail
        Tf = ball_potential(space, _const(space, alpha, "alpha"),
                            PointFunction(f, "test")).values.values
        num, den = lux(q_pf, v.values * Tf), lux(p_pf, w.values * f)
        sel = tail & (d0 <= space.L_eff) & (muB0 > 0)
        inner = float((((w.values[sel] * muB0[sel] ** (1.0 - alpha)) ** (-pp)) * mu[sel]).sum())
        cond = float(((v.values ** q_const * mu)[head]).sum() * inner ** (q_const / pp))
        return (0.0 if den == 0 else num / den), cond

    # maximal: q = p
    f = w.values ** (-pp) * head
    Mf = maximal_function(space, PointFunction(f, "test")).values.values
    num, den = lux(p_pf, v.values * Mf), lux(p_pf, w.values * f)
    inner = float((w.values ** (-pp) * mu)[head].sum())
    outer = tail & (d0 <= space.L_eff) & (muB0 > 0)
    cond = float(((v.values[outer] / muB0[outer]) ** p_const * mu[outer]).sum()
                 * inner ** (p_const / pp))
    return (0.0 if den == 0 else num / den), cond


@dataclass
class StudyReport:
    resolutions: List[int]
    condition_values: dict
    ratios: List[Optional[float]]
    geometry: List[dict]
    condition_trends: dict
    ratio_trend: str

    def to_dict(self) -> dict:
        return {
            "resolutions": list(self.resolutions),
            "condition_values": {k: list(v) for k, v in self.condition_values.items()},
            "ratios": list(self.ratios),
            "geometry": list(self.geometry),
            "condition_trends": dict(self.condition_trends),
            "ratio_trend": self.ratio_trend,
        }


def refinement_study(scenario, resolutions: Sequence[int]) -> StudyReport:
    """Re-run a scenario's conditions and empirical ratio across strictly
    increasing resolutions and classify each series as bounded / divergent /
    undecided by the two-resolution trend rule."""
    res = [int(r) for r in resolutions]
    if len(res) < 3 or any(b <= a for a, b in zip(res, res[1:])):
        raise PreconditionError("resolutions must be strictly increasing with >= 3 entries")
    cond_values: dict = {}
    ratios: List[Optional[float]] = []
    geometry: List[dict] = []
    for n in res:
        mat = scenario.materialize(n)
        for name, rep in mat.evaluate_conditions().items():
            cond_values.setdefault(name, []).append(rep.value)
        ratios.append(mat.evaluate_ratio())
        geometry.append(mat.geometry_summary())
    cond_trends = {k: classify_trend(v) for k, v in cond_values.items()}
    ratio_vals = [r for r in ratios if r is not None]
    ratio_trend = classify_trend(ratio_vals) if len(ratio_vals) >= 2 else "undecided"
    return StudyReport(res, cond_values, ratios, geometry, cond_trends, ratio_trend)
