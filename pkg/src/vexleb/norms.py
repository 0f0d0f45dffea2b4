"""Modular, Luxemburg norm, and the norm inequalities they satisfy.

The modular of f is sum |f(x)|**p(x) mu(x); the norm is the smallest lambda
with modular(f / lambda) <= 1.  Variable exponents admit no closed form, but
lambda -> modular(f / lambda) is strictly decreasing where positive, so the
norm is found by bisection with a guaranteed bracket.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .exponents import PointFunction, conjugate, extrema_over
from .space import DiscreteSpace

__all__ = ["NormResult", "modular", "luxemburg_norm", "holder_check"]

REL_TOL = 1e-10
MAX_ITERS = 200


@dataclass(frozen=True)
class NormResult:
    value: float
    modular_at_value: float
    bisection_iters: int
    bracket: tuple
    converged: bool = True


def _subset_mask(space: DiscreteSpace, subset) -> Optional[np.ndarray]:
    if subset is None:
        return None
    idx = np.asarray(subset)
    if idx.dtype == bool:
        return idx
    mask = np.zeros(space.n, dtype=bool)
    mask[idx] = True
    return mask


def _modular_arrays(fv: np.ndarray, pv: np.ndarray, mu: np.ndarray) -> float:
    fv = np.abs(fv)
    out = np.zeros_like(fv)
    pos = fv > 0
    with np.errstate(over="ignore"):
        out[pos] = fv[pos] ** pv[pos]
    return float((out * mu).sum())


def modular(space: DiscreteSpace, p: PointFunction, f: PointFunction, subset=None) -> float:
    """sum over the subset of |f(x)|**p(x) mu(x); zero values contribute 0."""
    if p.kind != "exponent":
        raise DomainError("modular needs an exponent field")
    mask = _subset_mask(space, subset)
    fv, pv, mu = f.values, p.values, space.mu
    if mask is not None:
        fv, pv, mu = fv[mask], pv[mask], mu[mask]
    return _modular_arrays(fv, pv, mu)


def luxemburg_norm(space: DiscreteSpace, p: PointFunction, f: PointFunction,
                   subset=None) -> NormResult:
    """Smallest lambda with modular(f / lambda) <= 1, to relative tolerance 1e-10.

    The initial upper bracket max(1, modular(f)) already satisfies the
    constraint (the modular scales at least like lambda**-p_min past 1); it
    is still grown geometrically as a guard, and the lower end is shrunk
    until the modular exceeds 1.
    """
    if p.kind != "exponent":
        raise DomainError("Luxemburg norm needs an exponent field")
    mask = _subset_mask(space, subset)
    fv, pv, mu = f.values, p.values, space.mu
    if mask is not None:
        fv, pv, mu = fv[mask], pv[mask], mu[mask]
    if not np.any(fv != 0):
        return NormResult(0.0, 0.0, 0, (0.0, 0.0))

    def S(lam: float) -> float:
        return _modular_arrays(fv / lam, pv, mu)

    hi = min(max(1.0, _modular_arrays(fv, pv, mu)), 1e300)
    grow = 0
    while S(hi) > 1.0 and grow < 200:
        hi *= 2.0
        grow += 1
    lo = hi
    shrink = 0
    while S(lo) <= 1.0 and shrink < 2000:
        lo /= 8.0
        shrink += 1
    iters = 0
    while hi - lo > REL_TOL * hi and iters < MAX_ITERS:
        mid = np.sqrt(lo * hi)
        if S(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
        iters += 1
    return NormResult(float(hi), S(hi), iters, (float(lo), float(hi)),
                      converged=hi - lo <= REL_TOL * hi)


def holder_check(space: DiscreteSpace, p: PointFunction, f: PointFunction,
                 g: PointFunction, subset=None):
    """Evaluate both sides of the variable-exponent Hoelder inequality on a set:

        sum_E |f g| mu  <=  (1/p_min(E) + 1/p'_min(E)) ||f||_{p,E} ||g||_{p',E}

    Returns (lhs, rhs, holds) with a 1e-9 relative slack on the comparison.
    """
    if p.kind != "exponent":
        raise DomainError("Hoelder check needs an exponent field")
    mask = _subset_mask(space, subset)
    full = np.ones(space.n, dtype=bool) if mask is None else mask
    lhs = float((np.abs(f.values * g.values) * space.mu)[full].sum())
    pc = conjugate(p)
    p_min, _ = extrema_over(space, p, np.flatnonzero(full))
    pc_min, _ = extrema_over(space, pc, np.flatnonzero(full))
    fE = PointFunction(np.where(full, f.values, 0.0), "test")
    gE = PointFunction(np.where(full, g.values, 0.0), "test")
    rhs = (1.0 / p_min + 1.0 / pc_min) \
        * luxemburg_norm(space, p, fE).value * luxemburg_norm(space, pc, gE).value
    return lhs, float(rhs), bool(lhs <= rhs * (1.0 + 1e-9))
