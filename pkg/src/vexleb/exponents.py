"""Exponent and weight fields on a discrete space.

Exponent fields p(.) live in (1, inf), order fields in (0, 1), weights are
strictly positive.  This module computes local extrema over sets, pointwise
conjugates, the basepoint-local exponents used by the Hardy-type conditions,
the fractional-order target exponent, and the sup-constants of the
oscillation and log-Hoelder regularity classes.

Class membership is asymptotic and invisible at one resolution, so checks
report the sup-constant plus the attaining witness; finiteness hints come
from comparing constants across resolutions (see ``conditions.finite_hint``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, PreconditionError, ValidationError
from .space import DiscreteSpace, _ball_measures, _sorted_row, sweep_radii

__all__ = [
    "PointFunction",
    "ClassReport",
    "LocalExponents",
    "extrema_over",
    "conjugate",
    "local_exponents",
    "sobolev_exponent",
    "class_check",
    "field_from_spec",
]

_KINDS = ("exponent", "alpha", "weight", "test")


@dataclass(frozen=True)
class PointFunction:
    """One real value per point of a space.

    kind: "exponent" (values in (1, inf)), "alpha" (fractional order, values
    in (0, 1)), "weight" (positive), or "test" (any finite values).
    """

    values: np.ndarray
    kind: str = "test"

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if self.kind not in _KINDS:
            raise DomainError(f"unknown field kind {self.kind!r}")
        if not np.all(np.isfinite(v)):
            raise DomainError(f"{self.kind} field must be finite everywhere")
        if self.kind == "exponent" and np.any(v <= 1):
            raise DomainError("exponent field must be > 1 everywhere")
        if self.kind == "alpha" and (np.any(v <= 0) or np.any(v >= 1)):
            raise DomainError("order field must lie in (0, 1)")
        if self.kind == "weight" and np.any(v <= 0):
            raise DomainError("weight field must be positive")

    @classmethod
    def constant(cls, n: int, value: float, kind: str = "test") -> "PointFunction":
        return cls(np.full(n, float(value)), kind)

    def __len__(self) -> int:
        return self.values.size


def _check_len(space: DiscreteSpace, *fields: PointFunction):
    for f in fields:
        if len(f) != space.n:
            raise DomainError("field length does not match the space")


def extrema_over(space: DiscreteSpace, p: PointFunction, subset=None):
    """(min, max) of the field over the subset of point ids (all points when
    subset is None).  An empty subset is a domain error."""
    _check_len(space, p)
    if subset is None:
        vals = p.values
    else:
        idx = np.asarray(subset)
        if idx.dtype == bool:
            idx = np.flatnonzero(idx)
        if idx.size == 0:
            raise DomainError("extrema over an empty set are undefined")
        vals = p.values[idx]
    if vals.size == 0:
        raise DomainError("extrema over an empty set are undefined")
    return float(vals.min()), float(vals.max())


def conjugate(p: PointFunction) -> PointFunction:
    """Pointwise conjugate exponent p / (p - 1)."""
    if np.any(p.values <= 1):
        raise DomainError("conjugate needs values > 1 everywhere")
    return PointFunction(p.values / (p.values - 1.0), "exponent")


@dataclass(frozen=True)
class LocalExponents:
    """Basepoint-local minima of an exponent field.

    ball_min(x)  : min of p over the closed ball of radius d0(x)
    tail_min(x)  : min of p over {y : d0(x) <= d0(y) <= a}
    *_capped     : the same, spliced to the constant tail value beyond
                   radius a (identical to the plain versions when the
                   diameter is finite, where a is forced to L).
    """

    ball_min: PointFunction
    tail_min: PointFunction
    ball_min_capped: PointFunction
    tail_min_capped: PointFunction
    cap_radius: float
    tail_value: Optional[float]


def local_exponents(space: DiscreteSpace, p: PointFunction, a: Optional[float] = None) -> LocalExponents:
    """Running minima of p along the basepoint-distance ordering.

    On a finite-diameter space ``a`` is forced to the diameter.  On a
    truncated infinite model ``a`` is required and p must be constant beyond
    radius a (checked; the offending point is reported).
    """
    _check_len(space, p)
    if p.kind != "exponent":
        raise DomainError("local exponents are defined for exponent fields")
    if space.infinite_diameter:
        if a is None or a <= 0:
            raise PreconditionError("truncated infinite model needs a positive cap radius a")
        tail = space.d0 > a
        p_c = None
        if tail.any():
            tail_vals = p.values[tail]
            p_c = float(tail_vals[0])
            bad = np.flatnonzero(tail)[np.abs(tail_vals - p_c) > 1e-12]
            if bad.size:
                raise PreconditionError(
                    "exponent must be constant beyond the cap radius", witness=int(bad[0]))
    else:
        a = space.L_eff
        p_c = None

    d0 = space.d0
    order = np.argsort(d0, kind="stable")
    ds = d0[order]
    pv = p.values[order]

    # closed-ball prefix minima; equal distances share one closed ball
    prefix = np.minimum.accumulate(pv)
    # index of the last element of each point's tie group
    group_end = np.searchsorted(ds, ds, side="right") - 1
    ball_min_sorted = prefix[group_end]
    ball_min = np.empty_like(ball_min_sorted)
    ball_min[order] = ball_min_sorted

    # suffix minima restricted to d0 <= a, from each tie group's start
    masked = np.where(ds <= a, pv, np.inf)
    suffix = np.full(ds.size + 1, np.inf)
    suffix[:-1] = np.minimum.accumulate(masked[::-1])[::-1]
    group_start = np.searchsorted(ds, ds, side="left")
    tail_min_sorted = suffix[group_start]
    fallback = p_c if p_c is not None else np.nan
    tail_min_sorted = np.where(np.isinf(tail_min_sorted), fallback, tail_min_sorted)
    tail_min = np.empty_like(tail_min_sorted)
    tail_min[order] = tail_min_sorted

    if space.infinite_diameter and p_c is not None:
        beyond = space.d0 > a
        ball_capped = np.where(beyond, p_c, ball_min)
        tail_capped = np.where(beyond, p_c, tail_min)
    else:
        ball_capped, tail_capped = ball_min, tail_min
    mk = lambda v: PointFunction(v, "exponent")
    return LocalExponents(mk(ball_min), mk(tail_min), mk(ball_capped), mk(tail_capped),
                          float(a), p_c)


def sobolev_exponent(p: PointFunction, alpha: PointFunction) -> PointFunction:
    """Target exponent q = p / (1 - alpha p); satisfies 1/q = 1/p - alpha."""
    ap = alpha.values * p.values
    bad = np.flatnonzero(ap >= 1.0)
    if bad.size:
        raise DomainError(f"alpha * p must stay below 1 (fails at point {int(bad[0])})")
    return PointFunction(p.values / (1.0 - ap), "exponent")


@dataclass
class ClassReport:
    tag: str
    constant_c: float
    radius_b: float
    worst_witness: tuple
    satisfied_hint: Optional[bool] = None
    excluded: int = 0


def _muB_pair_matrix(space: DiscreteSpace) -> np.ndarray:
    """Matrix of open-ball measures mu B(x, d(x, y))."""
    out = np.empty((space.n, space.n))
    mu = space.mu
    for x in range(space.n):
        d = space.dist[x]
        order = np.argsort(d, kind="stable")
        prefix = np.concatenate([[0.0], np.cumsum(mu[order])])
        out[x] = prefix[np.searchsorted(d[order], d, side="left")]
    return out


def class_check(space: DiscreteSpace, p: PointFunction, cls: str, N: float = 1.0,
                at: Optional[int] = None, b: Optional[float] = None) -> ClassReport:
    """Sup-constant of a regularity class over the swept domain.

    cls is one of:
      "oscillation"          : sup over x (or the fixed x) and r <= b of
                               mu B(x, N r) ** (p_min(B(x,r)) - p_max(B(x,r)))
      "log-holder"           : sup of |p(x)-p(y)| * (-log mu B(x, d(x,y)))
                               over pairs with d(x,y) <= b and ball measure < 1
      "log-holder-distance"  : sup of |p(x)-p(y)| * (-log d(x,y)) over pairs
                               with d(x,y) <= b and d(x,y) < 1

    ``at`` restricts x to one point (the "at a point" variants).  Pairs or
    radii excluded by the smallness gates are counted, not failed; if nothing
    is admissible the report carries constant 0 and the exclusion count.
    """
    _check_len(space, p)
    if b is None:
        b = 0.5 * space.L_eff
    if b <= 0:
        raise DomainError("sweep radius b must be positive")
    centers = range(space.n) if at is None else [at]
    if at is not None and not (0 <= at < space.n):
        raise DomainError(f"point id {at} out of range")

    if cls == "oscillation":
        if N < 1:
            raise DomainError("oscillation class needs N >= 1")
        best, wit = 0.0, ()
        excluded = 0
        for x in centers:
            ds, prefix, order = _sorted_row(space, x)
            pv = p.values[order]
            radii = sweep_radii(space, x, r_cap=b, include_whole=False)
            if radii.size == 0:
                excluded += 1
                continue
            idx = np.searchsorted(ds, radii, side="left")
            run_min = np.minimum.accumulate(pv)
            run_max = np.maximum.accumulate(pv)
            mN = _ball_measures(ds, prefix, N * radii)
            ok = (idx > 0) & (mN > 0)
            excluded += int((~ok).sum())
            if not ok.any():
                continue
            osc = run_min[idx[ok] - 1] - run_max[idx[ok] - 1]
            vals = mN[ok] ** osc
            j = int(vals.argmax())
            if vals[j] > best:
                best, wit = float(vals[j]), (x, float(radii[ok][j]))
        return ClassReport(cls, best, float(b), wit, excluded=excluded)

    if cls in ("log-holder", "log-holder-distance"):
        dp = np.abs(p.values[:, None] - p.values[None, :])
        if cls == "log-holder":
            gate = _muB_pair_matrix(space)
        else:
            gate = space.dist
        d = space.dist
        admissible = (d > 0) & (d <= b) & (gate > 0) & (gate < 1)
        if at is not None:
            keep = np.zeros_like(admissible)
            keep[at] = admissible[at]
            admissible = keep
        excluded = int(((d > 0) & (d <= b)).sum() - admissible.sum())
        if not admissible.any():
            return ClassReport(cls, 0.0, float(b), (), excluded=excluded)
        with np.errstate(divide="ignore"):
            vals = np.where(admissible, dp * (-np.log(gate, where=admissible,
                                                      out=np.ones_like(gate))), 0.0)
        flat = int(vals.argmax())
        wit = tuple(int(i) for i in np.unravel_index(flat, vals.shape))
        return ClassReport(cls, float(vals.max()), float(b), wit, excluded=excluded)

    raise DomainError(f"unknown regularity class {cls!r}")


# ---------------------------------------------------------------------------
# field construction from structured specs

_EXPR_RE = re.compile(r"^\s*([a-z0-9-]+)\s*(?:\(\s*x0\s*(?:,\s*([^)]*))?\))?\s*(.*)$")


def field_from_spec(space: DiscreteSpace, spec: dict) -> PointFunction:
    """Build a field from ``{"kind": ..., "expr": ... | "values": [...]}``.

    Recognized expressions (all radial ones use the basepoint distance, with
    the basepoint atom floored to half the nearest-neighbor distance):

      "const c"                   constant c
      "affine-in-dist(x0, b, s)"  b + s * d0
      "power-of-dist(x0, g)"      d0 ** g
      "log-power(x0, g)"          d0 ** g * log(2 L / d0)
    """
    if not isinstance(spec, dict):
        raise ValidationError("field spec must be a mapping")
    kind = spec.get("kind", "test")
    if "values" in spec:
        return PointFunction(np.asarray(spec["values"], dtype=float), kind)
    expr = spec.get("expr")
    if not isinstance(expr, str):
        raise ValidationError("field spec needs 'expr' or 'values'")
    m = _EXPR_RE.match(expr)
    if not m:
        raise ValidationError(f"cannot parse field expression {expr!r}")
    name, args_str, tail = m.group(1), m.group(2), m.group(3)
    args = [float(a) for a in args_str.split(",")] if args_str else []
    d = space.radial_distances()
    if name == "const":
        try:
            c = float(tail if tail else args[0])
        except (ValueError, IndexError):
            raise ValidationError(f"const expression needs a value: {expr!r}") from None
        return PointFunction.constant(space.n, c, kind)
    if name == "affine-in-dist":
        if len(args) != 2:
            raise ValidationError("affine-in-dist(x0, base, slope) needs two parameters")
        return PointFunction(args[0] + args[1] * space.d0, kind)
    if name == "power-of-dist":
        if len(args) != 1:
            raise ValidationError("power-of-dist(x0, g) needs one parameter")
        return PointFunction(d ** args[0], kind)
    if name == "log-power":
        if len(args) != 1:
            raise ValidationError("log-power(x0, g) needs one parameter")
        return PointFunction(d ** args[0] * np.log(2.0 * space.L_eff / d), kind)
    raise ValidationError(f"unknown field expression {name!r}")
