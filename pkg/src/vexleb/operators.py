"""The operators under study: Hardy-type transforms, the centered maximal
function, ball and distance potentials, and truncated singular integrals.

All of them are pure per-point sums over the space; the non-atomic diagonal
of the continuum is handled by excluding y = x (potentials) or by the
truncation radius (singular integrals), and refinement studies are expected
to confirm the exclusion is harmless.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, ValidationError
from .exponents import PointFunction
from .space import DiscreteSpace

__all__ = [
    "OperatorOutput",
    "KernelSpec",
    "hardy_transform",
    "hardy_tail_transform",
    "maximal_function",
    "ball_potential",
    "distance_potential",
    "singular_integral",
    "kernel_regularity_check",
    "hilbert_kernel",
    "power_dist_kernel",
    "explicit_kernel",
    "power_modulus",
    "table_modulus",
    "kernel_from_spec",
]


@dataclass(frozen=True)
class OperatorOutput:
    """Values of an operator applied to one test function."""

    values: PointFunction
    truncation_eps: Optional[float] = None
    skipped: int = 0


def _as_output(values: np.ndarray, eps: Optional[float] = None, skipped: int = 0) -> OperatorOutput:
    return OperatorOutput(PointFunction(values, "test"), eps, skipped)


def _radial_sums(space: DiscreteSpace, integrand: np.ndarray):
    """Prefix machinery over the basepoint-distance ordering.

    Returns (d0, total, strict_below, strict_above) where strict_below[x]
    sums the integrand over {y : d0(y) < d0(x)} and strict_above over
    {y : d0(y) > d0(x)}.
    """
    d0 = space.d0
    order = np.argsort(d0, kind="stable")
    ds = d0[order]
    csum = np.concatenate([[0.0], np.cumsum(integrand[order])])
    below = csum[np.searchsorted(ds, d0, side="left")]
    above = csum[-1] - csum[np.searchsorted(ds, d0, side="right")]
    return d0, float(csum[-1]), below, above


def hardy_transform(space: DiscreteSpace, v: PointFunction, w: PointFunction,
                    f: PointFunction) -> OperatorOutput:
    """v(x) * sum of f w mu over the open ball {y : d0(y) < d0(x)}.

    At the basepoint the ball is empty, so the value there is 0.
    """
    integrand = f.values * w.values * space.mu
    _, _, below, _ = _radial_sums(space, integrand)
    return _as_output(v.values * below)


def hardy_tail_transform(space: DiscreteSpace, v: PointFunction, w: PointFunction,
                         f: PointFunction) -> OperatorOutput:
    """v(x) * sum of f w mu over the tail {y : d0(y) > d0(x)}."""
    integrand = f.values * w.values * space.mu
    _, _, _, above = _radial_sums(space, integrand)
    return _as_output(v.values * above)


def maximal_function(space: DiscreteSpace, f: PointFunction) -> OperatorOutput:
    """Centered maximal function: per point, the largest ball average of |f|
    over the radius sweep (each distinct distance, plus the whole space)."""
    out = np.empty(space.n)
    absf_mu = np.abs(f.values) * space.mu
    mu = space.mu
    for x in range(space.n):
        d = space.dist[x]
        order = np.argsort(d, kind="stable")
        ds = d[order]
        num = np.cumsum(absf_mu[order])
        den = np.cumsum(mu[order])
        # closed balls are realized at the last index of each tie group
        ends = np.searchsorted(ds, np.unique(ds), side="right") - 1
        out[x] = float(np.max(num[ends] / den[ends]))
    return _as_output(out)


def _ball_measure_rows(space: DiscreteSpace, x: int):
    """mu B(x, d(x, y)) for all y, with the open-ball convention."""
    d = space.dist[x]
    order = np.argsort(d, kind="stable")
    ds = d[order]
    prefix = np.concatenate([[0.0], np.cumsum(space.mu[order])])
    return prefix[np.searchsorted(ds, d, side="left")]


def ball_potential(space: DiscreteSpace, alpha: PointFunction, f: PointFunction) -> OperatorOutput:
    """Potential with kernel (mu B(x, d(x,y)))**(alpha(x) - 1), diagonal excluded."""
    if alpha.kind not in ("alpha", "test"):
        raise DomainError("order field must be alpha-kind")
    out = np.zeros(space.n)
    skipped = 0
    fmu = f.values * space.mu
    for x in range(space.n):
        m = _ball_measure_rows(space, x)
        sel = np.arange(space.n) != x
        ok = sel & (m > 0)
        skipped += int((sel & ~ok).sum())
        out[x] = float((fmu[ok] * m[ok] ** (alpha.values[x] - 1.0)).sum())
    return _as_output(out, skipped=skipped)


def distance_potential(space: DiscreteSpace, alpha: PointFunction, f: PointFunction) -> OperatorOutput:
    """Potential with kernel d(x, y)**(alpha(x) - 1), diagonal excluded.

    Meant for spaces whose measure is upper Ahlfors 1-regular, where it is
    pointwise comparable to the ball potential.
    """
    if alpha.kind not in ("alpha", "test"):
        raise DomainError("order field must be alpha-kind")
    out = np.zeros(space.n)
    fmu = f.values * space.mu
    for x in range(space.n):
        d = space.dist[x]
        ok = d > 0
        out[x] = float((fmu[ok] * d[ok] ** (alpha.values[x] - 1.0)).sum())
    return _as_output(out)


# ---------------------------------------------------------------------------
# singular integrals


@dataclass(frozen=True)
class KernelSpec:
    """A kernel on off-diagonal pairs plus its claimed regularity data.

    ``row(space, x)`` returns the vector k(x, .); entries at d(x, .) = 0 are
    unused (the truncation removes them).  ``omega`` is the smoothness
    modulus on (0, inf); ``cz_c`` and ``s`` are the claimed size constant and
    a boundedness exponent, carried for reporting.
    """

    row: Callable[[DiscreteSpace, int], np.ndarray]
    omega: Callable[[np.ndarray], np.ndarray]
    cz_c: float = 1.0
    s: float = 2.0
    name: str = "kernel"


def hilbert_kernel() -> KernelSpec:
    """k(x, y) = 1 / (coord(x) - coord(y)) on coordinate-labelled spaces."""

    def row(space: DiscreteSpace, x: int) -> np.ndarray:
        if space.coords is None:
            raise DomainError("Hilbert kernel needs coordinate labels")
        diff = space.coords[x] - space.coords
        with np.errstate(divide="ignore"):
            return np.where(diff != 0, 1.0 / np.where(diff != 0, diff, 1.0), 0.0)

    return KernelSpec(row, power_modulus(1.0), cz_c=2.0, s=2.0, name="hilbert")


def power_dist_kernel(exponent: float) -> KernelSpec:
    """k(x, y) = d(x, y)**exponent (positive, distance-driven)."""

    def row(space: DiscreteSpace, x: int) -> np.ndarray:
        d = space.dist[x]
        with np.errstate(divide="ignore"):
            return np.where(d > 0, d ** exponent, 0.0)

    return KernelSpec(row, power_modulus(1.0), name=f"power-dist({exponent:g})")


def explicit_kernel(matrix: np.ndarray, omega=None) -> KernelSpec:
    k = np.asarray(matrix, dtype=float)

    def row(space: DiscreteSpace, x: int) -> np.ndarray:
        if k.shape != (space.n, space.n):
            raise DomainError("kernel table does not match the space")
        return k[x]

    return KernelSpec(row, omega or power_modulus(1.0), name="explicit")


def power_modulus(a: float) -> Callable[[np.ndarray], np.ndarray]:
    """omega(t) = t**a (nondecreasing for a > 0, Dini-summable for a > 0)."""
    if a <= 0:
        raise DomainError("modulus power must be positive")
    return lambda t: np.asarray(t, dtype=float) ** a


def table_modulus(ts, vals) -> Callable[[np.ndarray], np.ndarray]:
    """Piecewise-linear modulus through the given knots, constant outside."""
    ts = np.asarray(ts, dtype=float)
    vals = np.asarray(vals, dtype=float)
    if ts.ndim != 1 or ts.shape != vals.shape or np.any(np.diff(ts) <= 0):
        raise DomainError("modulus table needs strictly increasing knots")
    return lambda t: np.interp(np.asarray(t, dtype=float), ts, vals)


def singular_integral(space: DiscreteSpace, kernel: KernelSpec, f: PointFunction,
                      eps: float) -> OperatorOutput:
    """Truncated singular integral: sum over {y : d(x, y) > eps} of
    k(x, y) f(y) mu(y).  The principal value is approached by shrinking eps."""
    if eps <= 0:
        raise DomainError("truncation radius must be positive")
    out = np.zeros(space.n)
    fmu = f.values * space.mu
    for x in range(space.n):
        mask = space.dist[x] > eps
        if mask.any():
            out[x] = float((kernel.row(space, x)[mask] * fmu[mask]).sum())
    return _as_output(out, eps=eps)


def kernel_regularity_check(space: DiscreteSpace, kernel: KernelSpec, sample_pairs: int,
                            seed: int = 0, a1: Optional[float] = None):
    """Sampled size/smoothness constants of a kernel plus the Dini sum.

    size_c   : sup over sampled pairs of |k(x,y)| mu B(x, d(x,y))
    smooth_c : sup over sampled triples (x1, x2, y), gated at
               d(x2, y) >= 2 a1 d(x1, x2), of
               (|k(x1,y)-k(x2,y)| + |k(y,x1)-k(y,x2)|) mu B(x2, d(x2,y))
               / omega(d(x2,x1) / d(x2,y))
    dini_sum : sum over j = 1..40 of omega(2**-j) log 2, the dyadic proxy of
               the integral of omega(t)/t over (0, 1).
    """
    if sample_pairs < 1:
        raise DomainError("need at least one sampled pair")
    if a1 is None:
        from .space import geometry_constants
        a1 = geometry_constants(space).a1
    rng = np.random.default_rng(seed)
    n = space.n
    rows = {}

    def krow(x: int) -> np.ndarray:
        if x not in rows:
            rows[x] = kernel.row(space, x)
        return rows[x]

    size_c = 0.0
    xs = rng.integers(0, n, sample_pairs)
    ys = rng.integers(0, n, sample_pairs)
    for x in np.unique(xs):
        m = _ball_measure_rows(space, x)
        yy = ys[xs == x]
        yy = yy[space.dist[x][yy] > 0]
        if yy.size:
            size_c = max(size_c, float(np.max(np.abs(krow(x)[yy]) * m[yy])))

    smooth_c = 0.0
    x1s = rng.integers(0, n, sample_pairs)
    x2s = rng.integers(0, n, sample_pairs)
    for x1, x2 in zip(x1s, x2s):
        dx = space.dist[x2, x1]
        if dx <= 0:
            continue
        d2 = space.dist[x2]
        gate = d2 >= 2.0 * a1 * dx
        gate &= d2 > 0
        if not gate.any():
            continue
        m2 = _ball_measure_rows(space, x2)
        num = np.abs(krow(x1) - krow(x2))
        # transposed differences k(y, x1) - k(y, x2), gathered column-wise
        col1 = np.array([krow(y)[x1] for y in np.flatnonzero(gate)])
        col2 = np.array([krow(y)[x2] for y in np.flatnonzero(gate)])
        quot = (num[gate] + np.abs(col1 - col2)) * m2[gate] / kernel.omega(dx / d2[gate])
        quot = quot[np.isfinite(quot)]
        if quot.size:
            smooth_c = max(smooth_c, float(quot.max()))

    j = np.arange(1, 41)
    dini_sum = float((kernel.omega(2.0 ** -j) * np.log(2.0)).sum())
    return size_c, smooth_c, dini_sum


def kernel_from_spec(spec: dict) -> KernelSpec:
    """Kernel spec: {"type": "hilbert" | "explicit-table" | "power-dist",
    "exponent": g, "table": [[...]], "omega": {"type": "power", "a": 1.0} |
    {"type": "table", "t": [...], "value": [...]}}."""
    if not isinstance(spec, dict):
        raise ValidationError("kernel spec must be a mapping")
    omega_spec = spec.get("omega", {"type": "power", "a": 1.0})
    if omega_spec.get("type") == "power":
        omega = power_modulus(float(omega_spec.get("a", 1.0)))
    elif omega_spec.get("type") == "table":
        omega = table_modulus(omega_spec["t"], omega_spec["value"])
    else:
        raise ValidationError(f"unknown modulus type {omega_spec.get('type')!r}")
    ktype = spec.get("type")
    if ktype == "hilbert":
        k = hilbert_kernel()
    elif ktype == "power-dist":
        if "exponent" not in spec:
            raise ValidationError("power-dist kernel needs 'exponent'")
        k = power_dist_kernel(float(spec["exponent"]))
    elif ktype == "explicit-table":
        if "table" not in spec:
            raise ValidationError("explicit-table kernel needs 'table'")
        k = explicit_kernel(np.asarray(spec["table"], dtype=float))
    else:
        raise ValidationError(f"unknown kernel type {ktype!r}")
    return KernelSpec(k.row, omega, cz_c=float(spec.get("cz_c", k.cz_c)),
                      s=float(spec.get("s", k.s)), name=k.name)
