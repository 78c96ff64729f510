"""Threshold distributions and their survival functions.

A label applies to a point x when the random threshold is at least the
distance from x to the prototype, so the quantity everything else is built
on is the survival function ``survival(d) = P(eps >= d)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

QUAD_ABS_TOL = 1e-10
BISECT_TOL = 1e-12
NORMALISATION_TOL = 1e-9


def _out(a):
    a = np.asarray(a, dtype=float)
    return float(a) if a.ndim == 0 else a


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


class ThresholdDist:
    """Base class; subclasses provide ``lo``, ``hi`` and the four kernels below."""

    lo: float
    hi: float

    def density(self, e):
        raise NotImplementedError

    def survival(self, d):
        raise NotImplementedError

    def quantile(self, u):
        """Smallest e in [lo, hi] with cdf(e) >= u."""
        raise NotImplementedError

    def cdf(self, e):
        return _out(1.0 - np.asarray(self.survival(e)))

    def inverse_survival(self, p):
        p = np.asarray(p, dtype=float)
        if np.any((p < 0) | (p > 1)) or np.any(np.isnan(p)):
            raise ValueError("inverse_survival takes probabilities in [0, 1]")
        # p == 1 is met already at d = 0
        q = np.asarray(self.quantile(np.clip(1.0 - p, 0.0, 1.0)))
        return _out(np.where(p >= 1.0, 0.0, q))

    def sample(self, seed=None, size=None):
        """Inverse-cdf sampling; ``seed`` is an int or a numpy Generator."""
        u = _as_rng(seed).random(size)
        return self.quantile(u)

    def to_json(self) -> dict:
        raise TypeError(f"{type(self).__name__} has no JSON form")


def _check_support(lo, hi):
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("threshold support must be bounded")
    if lo < 0:
        raise ValueError(f"threshold support must lie in [0, inf), got lo={lo}")
    if not lo < hi:
        raise ValueError(f"threshold support needs lo < hi, got [{lo}, {hi}]")


def _check_distance(d):
    d = np.asarray(d, dtype=float)
    if np.any(d < 0) or np.any(np.isnan(d)):
        raise ValueError("survival is only defined for distances d >= 0")
    return d


@dataclass(frozen=True)
class Uniform(ThresholdDist):
    lo: float
    hi: float

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        _check_support(self.lo, self.hi)

    def density(self, e):
        e = np.asarray(e, dtype=float)
        inside = (e >= self.lo) & (e <= self.hi)
        return _out(np.where(inside, 1.0 / (self.hi - self.lo), 0.0))

    def survival(self, d):
        d = _check_distance(d)
        return _out(np.clip((self.hi - d) / (self.hi - self.lo), 0.0, 1.0))

    def quantile(self, u):
        u = np.clip(np.asarray(u, dtype=float), 0.0, 1.0)
        return _out(self.lo + u * (self.hi - self.lo))

    def to_json(self):
        return {"dist": "uniform", "lo": self.lo, "hi": self.hi}


@dataclass(frozen=True)
class PiecewiseLinear(ThresholdDist):
    """Density linear between knots ``(e_i, delta_i)``, zero outside them."""

    knots: tuple

    def __post_init__(self):
        knots = tuple((float(e), float(v)) for e, v in self.knots)
        if len(knots) < 2:
            raise ValueError("piecewise density needs at least two knots")
        es = np.array([k[0] for k in knots])
        vs = np.array([k[1] for k in knots])
        if np.any(np.diff(es) <= 0):
            raise ValueError("knot positions must be strictly increasing")
        if np.any(vs < 0) or not np.all(np.isfinite(vs)):
            raise ValueError("density values must be finite and nonnegative")
        _check_support(es[0], es[-1])
        seg = 0.5 * (vs[1:] + vs[:-1]) * np.diff(es)
        total = seg.sum()
        if abs(total - 1.0) > NORMALISATION_TOL:
            raise ValueError(f"piecewise density integrates to {total}, not 1")
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "_es", es)
        object.__setattr__(self, "_vs", vs)
        object.__setattr__(self, "_cum", np.concatenate([[0.0], np.cumsum(seg)]) / total)

    @property
    def lo(self):
        return self._es[0]

    @property
    def hi(self):
        return self._es[-1]

    def density(self, e):
        e = np.asarray(e, dtype=float)
        return _out(np.interp(e, self._es, self._vs, left=0.0, right=0.0))

    def cdf(self, e):
        e = np.asarray(e, dtype=float)
        es, vs, cum = self._es, self._vs, self._cum
        i = np.clip(np.searchsorted(es, e, side="right") - 1, 0, len(es) - 2)
        t = np.clip(e - es[i], 0.0, es[i + 1] - es[i])
        slope = (vs[i + 1] - vs[i]) / (es[i + 1] - es[i])
        f = cum[i] + vs[i] * t + 0.5 * slope * t * t
        f = np.where(e <= es[0], 0.0, np.where(e >= es[-1], 1.0, f))
        return _out(np.clip(f, 0.0, 1.0))

    def survival(self, d):
        d = _check_distance(d)
        return _out(np.clip(1.0 - np.asarray(self.cdf(d)), 0.0, 1.0))

    def quantile(self, u):
        u = np.clip(np.asarray(u, dtype=float), 0.0, 1.0)
        es, vs, cum = self._es, self._vs, self._cum
        i = np.clip(np.searchsorted(cum[1:], u, side="left"), 0, len(es) - 2)
        r = np.maximum(u - cum[i], 0.0)
        h = es[i + 1] - es[i]
        slope = (vs[i + 1] - vs[i]) / h
        # stable root of vs*t + slope/2*t^2 = r
        disc = np.sqrt(np.maximum(vs[i] ** 2 + 2.0 * slope * r, 0.0))
        denom = vs[i] + disc
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(r > 0, 2.0 * r / denom, 0.0)
        t = np.clip(np.nan_to_num(t, nan=0.0, posinf=h), 0.0, h)
        return _out(es[i] + t)

    def to_json(self):
        return {"dist": "piecewise", "knots": [list(k) for k in self.knots]}


class CustomDensity(ThresholdDist):
    """User-supplied density on an explicitly declared support [lo, hi]."""

    def __init__(self, density: Callable[[float], float], lo: float, hi: float):
        _check_support(float(lo), float(hi))
        self.lo, self.hi = float(lo), float(hi)
        self._density = density
        total, _ = integrate.quad(density, self.lo, self.hi, epsabs=QUAD_ABS_TOL, limit=200)
        if abs(total - 1.0) > NORMALISATION_TOL:
            raise ValueError(f"custom density integrates to {total}, not 1")

    def density(self, e):
        e = np.asarray(e, dtype=float)
        vals = np.vectorize(lambda v: float(self._density(v)) if self.lo <= v <= self.hi else 0.0)(e)
        return _out(vals)

    def _survival_scalar(self, d):
        if d <= self.lo:
            return 1.0
        if d >= self.hi:
            return 0.0
        tail, _ = integrate.quad(self._density, d, self.hi, epsabs=QUAD_ABS_TOL, limit=200)
        return min(max(tail, 0.0), 1.0)

    def survival(self, d):
        d = _check_distance(d)
        return _out(np.vectorize(self._survival_scalar, otypes=[float])(d))

    def _quantile_scalar(self, u):
        if u <= 0.0:
            return self.lo
        if u >= 1.0:
            return self.hi
        lo, hi = self.lo, self.hi
        while hi - lo > BISECT_TOL:
            mid = 0.5 * (lo + hi)
            if 1.0 - self._survival_scalar(mid) >= u:
                hi = mid
            else:
                lo = mid
        return hi

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        return _out(np.vectorize(self._quantile_scalar, otypes=[float])(u))


def survival(t: ThresholdDist, d):
    return t.survival(d)


def density(t: ThresholdDist, e):
    return t.density(e)


def inverse_survival(t: ThresholdDist, p):
    return t.inverse_survival(p)


def quantile(t: ThresholdDist, u):
    return t.quantile(u)


def sample(t: ThresholdDist, seed=None, size=None):
    return t.sample(seed, size)


def from_json(spec: dict) -> ThresholdDist:
    kind = spec.get("dist")
    if kind == "uniform":
        return Uniform(spec["lo"], spec["hi"])
    if kind == "piecewise":
        return PiecewiseLinear(tuple(tuple(k) for k in spec["knots"]))
    raise ValueError(f"unknown threshold distribution {kind!r}")


def triangular(lo: float, mode: float, hi: float) -> PiecewiseLinear:
    """Triangular density as a three-knot piecewise-linear density."""
    return PiecewiseLinear(((lo, 0.0), (mode, 2.0 / (hi - lo)), (hi, 0.0)))

