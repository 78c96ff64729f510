"""Brute-force checks for the hedge closed forms.

Nothing here uses the logarithmic identities: the Monte-Carlo estimators
simulate the conditioned thresholds directly, and the quadrature routines
integrate the joint threshold density.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .classical import Trapezoid, _resemblance_params, bosc_concentrate, bosc_dilate
from .label import Label
from .space import PointLike

CHUNK = 1 << 17
# truncation integrals stop this far short of a singular endpoint
ENDPOINT_OFFSET = 1e-12
REJECT_REPORT = 1e-3


@dataclass(frozen=True)
class OracleConfig:
    samples: int = 1_000_000
    seed: int = 0
    quad_tol: float = 1e-10
    chain_depth: int = 2
    batches: int = 50

    def __post_init__(self):
        if self.samples < 10_000:
            raise ValueError("oracle runs need at least 1e4 samples")
        if not 0 < self.quad_tol <= 1e-6:
            raise ValueError("quad_tol must be in (0, 1e-6]")
        if self.chain_depth < 1 or self.batches < 2:
            raise ValueError("chain_depth >= 1 and batches >= 2 required")


def _streams(cfg: OracleConfig, n_parts: int, salt: int = 0):
    ss = np.random.SeedSequence([cfg.seed, salt])
    return [np.random.default_rng(s) for s in ss.spawn(n_parts)]


def _chunks(total, size=CHUNK):
    sizes = [size] * (total // size)
    if total % size:
        sizes.append(total % size)
    return sizes


def _conditioned_draws(t, kind, rng, n):
    """Draw (eps1, eps2) with eps2 from the threshold law truncated to
    [eps1, inf) (dilate) or [0, eps1] (concentrate), by inverse cdf."""
    eps1 = np.asarray(t.quantile(rng.random(n)))
    mass = np.asarray(t.survival(eps1)) if kind == "dilate" else np.asarray(t.cdf(eps1))
    bad = mass <= 0
    rejected = int(bad.sum())
    for _ in range(100):
        if not bad.any():
            break
        eps1[bad] = t.quantile(rng.random(int(bad.sum())))
        mass = np.asarray(t.survival(eps1)) if kind == "dilate" else np.asarray(t.cdf(eps1))
        bad = mass <= 0
        rejected += int(bad.sum())
    u = rng.random(n)
    if kind == "dilate":
        eps2 = np.asarray(t.inverse_survival(np.clip(u * mass, 0.0, 1.0)))
    else:
        eps2 = np.asarray(t.quantile(u * mass))
    return eps1, eps2, rejected


def _fraction_at_least(sorted_eps, d):
    d = np.asarray(d, dtype=float)
    return len(sorted_eps) - np.searchsorted(sorted_eps, d, side="left")


def _mc_pair_curve(L: Label, xs, kind, cfg: OracleConfig):
    t = L.threshold
    d = np.array([L.distance(x) for x in xs])
    count = np.zeros(len(d))
    rejected = 0
    sizes = _chunks(cfg.samples)
    for rng, n in zip(_streams(cfg, len(sizes), salt=1 if kind == "dilate" else 2), sizes):
        _, eps2, rej = _conditioned_draws(t, kind, rng, n)
        rejected += rej
        count += _fraction_at_least(np.sort(eps2), d)
    if rejected > REJECT_REPORT * cfg.samples:
        warnings.warn(f"{rejected} degenerate truncations resampled out of {cfg.samples}", stacklevel=3)
    est = count / cfg.samples
    se = np.sqrt(est * (1.0 - est) / cfg.samples)
    return est, se


def mc_dilation_curve(L: Label, xs, cfg: OracleConfig = OracleConfig()):
    """Monte-Carlo 'quite L' over many points from one shared sample set."""
    return _mc_pair_curve(L, xs, "dilate", cfg)


def mc_concentration_curve(L: Label, xs, cfg: OracleConfig = OracleConfig()):
    return _mc_pair_curve(L, xs, "concentrate", cfg)


def mc_dilation(L: Label, x: PointLike, cfg: OracleConfig = OracleConfig()):
    """(estimate, std_error) of P(d(x, P) <= eps2) with eps2 >= eps1."""
    est, se = _mc_pair_curve(L, [x], "dilate", cfg)
    return float(est[0]), float(se[0])


def mc_concentration(L: Label, x: PointLike, cfg: OracleConfig = OracleConfig()):
    est, se = _mc_pair_curve(L, [x], "concentrate", cfg)
    return float(est[0]), float(se[0])


def _pool_step(pool_sorted, ranks, kind, rng):
    # next threshold: drawn from the current marginal (the pool) truncated at the current value
    n = len(pool_sorted)
    u = rng.random(len(ranks))
    if kind == "dilate":
        idx = ranks + np.floor(u * (n - ranks)).astype(np.int64)
    else:
        idx = np.floor(u * (ranks + 1)).astype(np.int64)
    return pool_sorted[np.minimum(idx, n - 1)]


def _chain_batch(t, kind, n_levels, rng, m):
    _, eps, _ = _conditioned_draws(t, kind, rng, m)
    for _ in range(n_levels - 2):
        order = np.argsort(eps, kind="stable")
        pool = eps[order]
        ranks = np.empty(m, dtype=np.int64)
        ranks[order] = np.arange(m)
        eps = _pool_step(pool, ranks, kind, rng)
    return np.sort(eps)


def mc_chain_curve(L: Label, xs, kind: str, n: int, cfg: OracleConfig = OracleConfig()):
    """Monte-Carlo estimate of L hedged n times by the same hedge.

    The chain has thresholds eps_1 .. eps_{n+1}, eps_1 belonging to L.
    Each later threshold is drawn from the marginal law of the previous
    one, truncated at its value.  Beyond eps_1 that marginal is not known
    to the oracle, so from eps_3 on it is taken from the empirical pool of
    the previous level's draws.  The sample is split into independent
    batches and the standard error comes from the spread of the batch
    means.
    """
    if n < 1:
        raise ValueError("chain depth must be a positive integer")
    if kind not in ("dilate", "concentrate"):
        raise ValueError(f"kind must be 'dilate' or 'concentrate', got {kind!r}")
    d = np.array([L.distance(x) for x in xs])
    m = cfg.samples // cfg.batches
    means = []
    for rng in _streams(cfg, cfg.batches, salt=10 + n + (0 if kind == "dilate" else 100)):
        eps_n = _chain_batch(L.threshold, kind, n + 1, rng, m)
        means.append(_fraction_at_least(eps_n, d) / m)
    means = np.array(means)
    return means.mean(axis=0), means.std(axis=0, ddof=1) / np.sqrt(cfg.batches)


def mc_chain(L: Label, x: PointLike, kind: str, n: int, cfg: OracleConfig = OracleConfig()):
    est, se = mc_chain_curve(L, [x], kind, n, cfg)
    return float(est[0]), float(se[0])


def _breaks(t, lo, hi):
    knots = getattr(t, "knots", ())
    return [e for e, _ in knots if lo < e < hi] or None


def quad_dilation(L: Label, x: PointLike, cfg: OracleConfig = OracleConfig()) -> float:
    """Split integral  m * int_0^d delta/S  +  int_d^inf delta,  by quadrature."""
    t = L.threshold
    d = L.distance(x)
    if d >= t.hi:
        return 0.0
    tail, _ = integrate.quad(t.density, max(d, t.lo), t.hi, epsabs=cfg.quad_tol, limit=200,
                             points=_breaks(t, max(d, t.lo), t.hi))
    upper = min(d, t.hi - ENDPOINT_OFFSET)
    if upper <= t.lo:
        return min(tail, 1.0)
    hazard, _ = integrate.quad(lambda e: t.density(e) / t.survival(e), t.lo, upper,
                               epsabs=cfg.quad_tol, limit=200, points=_breaks(t, t.lo, upper))
    return tail * hazard + tail


def quad_concentration(L: Label, x: PointLike, cfg: OracleConfig = OracleConfig()) -> float:
    """m - (1 - m) int_d^inf delta / (1 - S),  by quadrature."""
    t = L.threshold
    d = L.distance(x)
    if d <= t.lo:
        return 1.0
    if d >= t.hi:
        return 0.0
    tail, _ = integrate.quad(t.density, d, t.hi, epsabs=cfg.quad_tol, limit=200, points=_breaks(t, d, t.hi))
    lower = max(d, t.lo + ENDPOINT_OFFSET)
    rev, _ = integrate.quad(lambda e: t.density(e) / t.cdf(e), lower, t.hi,
                            epsabs=cfg.quad_tol, limit=200, points=_breaks(t, lower, t.hi))
    return tail - (1.0 - tail) * rev


def nested_quad(L: Label, x: PointLike, kind: str, cfg: OracleConfig = OracleConfig()) -> float:
    """Integrate the joint density of (eps1, eps2) over {eps2 >= d} directly."""
    t = L.threshold
    d = L.distance(x)
    lo, hi = t.lo, t.hi

    if kind == "dilate":
        def inner(e1):
            s = t.survival(e1)
            if s <= 0:
                return 0.0
            a = max(e1, d)
            if a >= hi:
                return 0.0
            v, _ = integrate.quad(t.density, a, hi, epsabs=cfg.quad_tol, points=_breaks(t, a, hi))
            return t.density(e1) * v / s
    elif kind == "concentrate":
        def inner(e1):
            f = t.cdf(e1)
            if f <= 0 or e1 <= d:
                return 0.0
            v, _ = integrate.quad(t.density, max(d, lo), e1, epsabs=cfg.quad_tol, points=_breaks(t, max(d, lo), e1))
            return t.density(e1) * v / f
    else:
        raise ValueError(f"kind must be 'dilate' or 'concentrate', got {kind!r}")

    pts = sorted({p for p in [d] + [e for e, _ in getattr(t, "knots", ())] if lo < p < hi}) or None
    val, _ = integrate.quad(inner, lo, hi, epsabs=cfg.quad_tol, limit=400, points=pts)
    return min(max(val, 0.0), 1.0)


def goedel(a, b):
    return np.where(a <= b, 1.0, b)


def bosc_supinf(F: Trapezoid, Z: Trapezoid, s, r, mode: str):
    """Sampled sup-min dilation or inf-Goedel concentration of F on grid s,
    taking the sup/inf over grid r."""
    s = np.asarray(s, dtype=float)[:, None]
    r = np.asarray(r, dtype=float)[None, :]
    Fr = F.membership(r)
    E = Z.membership(s - r)
    if mode == "dilate":
        return np.max(np.minimum(Fr, E), axis=1)
    if mode == "concentrate":
        return np.min(goedel(E, Fr), axis=1)
    raise ValueError(f"mode must be 'dilate' or 'concentrate', got {mode!r}")


def bosc_supinf_check(F: Trapezoid, Z: Trapezoid, grid=None, mode: str = "dilate") -> float:
    """Max |sampled sup/inf modifier - corner-arithmetic trapezoid| on a grid."""
    z, alpha = _resemblance_params(Z)
    target = bosc_dilate(F, Z) if mode == "dilate" else bosc_concentrate(F, Z)
    if grid is None:
        margin = z + alpha + 1.0
        grid = np.arange(F.A - margin, F.D + margin + 1e-9, 0.005)
    grid = np.asarray(grid, dtype=float)
    if len(grid) > 1 and np.max(np.diff(grid)) > 0.01 + 1e-12:
        raise ValueError("bosc sup/inf check needs grid resolution <= 0.01")
    got = bosc_supinf(F, Z, grid, grid, mode)
    return float(np.max(np.abs(got - target.membership(grid))))
