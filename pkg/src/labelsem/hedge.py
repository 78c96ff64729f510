"""Hedges as transformations of a label's threshold.

"quite" (dilation) draws a second threshold conditioned to be at least the
first, "very" (concentration) one conditioned to be at most the first.
With both thresholds sharing a marginal the hedged appropriateness is a
fixed function of the original one:

    dilate_mu(m)      = m - m ln m
    concentrate_mu(m) = m + (1 - m) ln(1 - m)

The generalisations swap the prototype, put the inequality against f(eps),
or make the dependence deterministic (eps' = f(eps), "rescale").  On the
survival function S(d) = P(eps >= d) of the current threshold these act as

    dilate / concentrate        S'(d) = G(S(d))
    dilate_f / concentrate_f    S'(d) = G(S_f(d))
    rescale                     S'(d) = S_f(d)

with S_f(d) = P(f(eps) >= d), i.e. S(f^-1(d)) for increasing f and
1 - S(f^-1(d)) for decreasing f.  A chain folds these in order, and the
hedged label is evaluated at the distance to the last prototype given.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .label import Label
from .space import PointLike, PrototypeSet, as_prototype, set_distance
from .threshold import BISECT_TOL

INVERSE_TOL = 1e-10

_SERIES_CUTOFF = 0.25
_SERIES_TERMS = 40


def _out(a):
    a = np.asarray(a, dtype=float)
    return float(a) if a.ndim == 0 else a


def _check_prob(m, what):
    m = np.asarray(m, dtype=float)
    if np.any(np.isnan(m)) or np.any((m < 0) | (m > 1)):
        raise ValueError(f"{what} takes appropriateness values in [0, 1]")
    return m


def dilate_mu(m):
    """m - m ln m, with 0 ln 0 = 0."""
    m = _check_prob(m, "dilate_mu")
    with np.errstate(divide="ignore", invalid="ignore"):
        out = m * (1.0 - np.log(m))
    return _out(np.clip(np.where(m > 0, out, 0.0), 0.0, 1.0))


def _concentrate_series(m):
    # m + (1-m) ln(1-m) = sum_{j>=2} m^j / (j (j-1)); avoids the cancellation near 0
    acc = np.zeros_like(m)
    for j in range(_SERIES_TERMS + 1, 1, -1):
        acc = acc * m + 1.0 / (j * (j - 1))
    return acc * m * m


def concentrate_mu(m):
    """m + (1 - m) ln(1 - m), with the value 1 at m = 1."""
    m = _check_prob(m, "concentrate_mu")
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = m + (1.0 - m) * np.log1p(-m)
    out = np.where(m < _SERIES_CUTOFF, _concentrate_series(m), direct)
    return _out(np.clip(np.where(m >= 1.0, 1.0, out), 0.0, 1.0))


_MAPS = {"dilate": dilate_mu, "concentrate": concentrate_mu}


class MonotoneFn:
    """Strictly monotone map of thresholds with a usable inverse.

    Either ``inverse`` is given in closed form or it is found by bisection
    on ``bracket``.  ``image`` (the range of f over its domain) bounds
    where the inverse is meaningful: outside it the inverse is reported as
    -inf / +inf, which saturates the survival function.
    """

    def __init__(
        self,
        forward: Callable[[float], float],
        inverse: Optional[Callable[[float], float]] = None,
        *,
        bracket: Optional[tuple] = None,
        domain: Optional[tuple] = None,
        increasing: Optional[bool] = None,
        name: str = "custom",
        params: Optional[dict] = None,
    ):
        if inverse is None and bracket is None:
            raise ValueError("a MonotoneFn needs a closed-form inverse or a bisection bracket")
        self._forward = forward
        self._inverse = inverse
        self.bracket = tuple(float(v) for v in bracket) if bracket is not None else None
        self.domain = tuple(float(v) for v in domain) if domain is not None else self.bracket
        self.name = name
        self.params = dict(params or {})
        if increasing is None:
            if self.domain is None:
                raise ValueError("cannot infer monotonicity without a domain")
            a, b = self.domain
            fa, fb = forward(a), forward(b)
            if fa == fb:
                raise ValueError("f is not strictly monotone on its domain")
            increasing = fb > fa
        self.increasing = bool(increasing)
        if self.domain is not None:
            ends = sorted((forward(self.domain[0]), forward(self.domain[1])))
            self.image = (float(ends[0]), float(ends[1]))
        else:
            self.image = None

    def __repr__(self):
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"MonotoneFn({self.name}{', ' if args else ''}{args})"

    def __call__(self, e: float) -> float:
        return self.forward(e)

    def forward(self, e: float) -> float:
        if self.domain is not None and not (self.domain[0] <= e <= self.domain[1]):
            raise ValueError(f"{self.name} is only defined on [{self.domain[0]}, {self.domain[1]}], got {e}")
        return float(self._forward(e))

    def inverse(self, d: float) -> float:
        if math.isinf(d):
            up = (d > 0) == self.increasing
            return math.inf if up else -math.inf
        if self.image is not None:
            lo, hi = self.image
            if d < lo:
                return -math.inf if self.increasing else math.inf
            if d > hi:
                return math.inf if self.increasing else -math.inf
        if self._inverse is not None:
            return float(self._inverse(d))
        return self._bisect(d)

    def _bisect(self, d):
        a, b = self.bracket
        fa = self._forward(a)
        if (fa - d) * (self._forward(b) - d) > 0:
            raise ValueError(f"{d} is not bracketed by f on [{a}, {b}]")
        while b - a > BISECT_TOL:
            mid = 0.5 * (a + b)
            if (self._forward(mid) - d) * (fa - d) > 0:
                a, fa = mid, self._forward(mid)
            else:
                b = mid
        return 0.5 * (a + b)

    def support_image(self, lo: float, hi: float) -> tuple:
        """Image of a threshold support [lo, hi] under f."""
        ends = sorted((self.forward(lo), self.forward(hi)))
        return ends[0], ends[1]

    def check_on(self, lo: float, hi: float, n: int = 101):
        """Verify strict monotonicity and inverse(forward(e)) = e on [lo, hi]."""
        grid = np.linspace(lo, hi, n)
        try:
            vals = np.array([self.forward(e) for e in grid])
        except ValueError as exc:
            raise ValueError(f"f non-invertible on the threshold support [{lo}, {hi}]: {exc}") from None
        steps = np.diff(vals)
        if not (np.all(steps > 0) if self.increasing else np.all(steps < 0)):
            raise ValueError(f"f is not strictly monotone on [{lo}, {hi}]")
        back = np.array([self.inverse(v) for v in vals])
        err = np.max(np.abs(back - grid))
        if not err <= INVERSE_TOL * max(1.0, abs(lo), abs(hi)):
            raise ValueError(f"f non-invertible on [{lo}, {hi}]: round-trip error {err:.3g}")

    def to_json(self) -> dict:
        if self.name == "custom":
            raise TypeError("custom threshold functions have no JSON form")
        return {"kind": self.name, **self.params}


def linear_scale(k: float) -> MonotoneFn:
    """f(e) = k e."""
    k = float(k)
    if not k > 0:
        raise ValueError(f"linear scale needs k > 0, got {k}")
    return MonotoneFn(lambda e: k * e, lambda d: d / k, increasing=True, name="linear", params={"k": k})


def affine(k: float, b: float = 0.0) -> MonotoneFn:
    """f(e) = k e + b; decreasing when k < 0."""
    k, b = float(k), float(b)
    if k == 0:
        raise ValueError("affine threshold function needs k != 0")
    return MonotoneFn(
        lambda e: k * e + b, lambda d: (d - b) / k, increasing=k > 0, name="affine", params={"k": k, "b": b}
    )


HEDGE_KINDS = ("dilate", "concentrate", "dilate_f", "concentrate_f", "rescale")


@dataclass(frozen=True)
class HedgeSpec:
    kind: str
    f: Optional[MonotoneFn] = None
    prototype: Optional[PrototypeSet] = None

    def __post_init__(self):
        if self.kind not in HEDGE_KINDS:
            raise ValueError(f"unknown hedge kind {self.kind!r}")
        needs_f = self.kind in ("dilate_f", "concentrate_f", "rescale")
        if needs_f and self.f is None:
            raise ValueError(f"{self.kind} hedge needs a threshold function f")
        if not needs_f and self.f is not None:
            raise ValueError(f"{self.kind} hedge takes no threshold function")
        if self.prototype is not None:
            object.__setattr__(self, "prototype", as_prototype(self.prototype))

    @property
    def mu_map(self):
        if self.kind.startswith("dilate"):
            return dilate_mu
        if self.kind.startswith("concentrate"):
            return concentrate_mu
        return None

    def describe(self) -> str:
        name = {"dilate": "quite", "concentrate": "very"}.get(self.kind, self.kind)
        if self.f is not None:
            name += f"[{self.f.name}]"
        return name


def quite(prototype=None, f=None) -> HedgeSpec:
    return HedgeSpec("dilate_f" if f is not None else "dilate", f, prototype)


def very(prototype=None, f=None) -> HedgeSpec:
    return HedgeSpec("concentrate_f" if f is not None else "concentrate", f, prototype)


def rescale(f, prototype=None) -> HedgeSpec:
    """Deterministic hedge eps' = f(eps); a bare number k means f(e) = k e."""
    if not isinstance(f, MonotoneFn):
        f = linear_scale(f)
    return HedgeSpec("rescale", f, prototype)


def _base_survival(L: Label, v: float) -> float:
    if v == math.inf:
        return 0.0
    if v <= 0.0:
        # every threshold is nonnegative
        return 1.0
    return float(L.threshold.survival(v))


@dataclass(frozen=True)
class StepTrace:
    kind: str
    argument: float
    survival: float
    clamped: bool


@dataclass(frozen=True)
class HedgedLabel:
    """A base label followed by hedges applied in order."""

    base: Label
    chain: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "chain", tuple(self.chain))

    @property
    def prototype(self) -> PrototypeSet:
        for h in reversed(self.chain):
            if h.prototype is not None:
                return h.prototype
        return self.base.prototype

    @property
    def dim(self) -> int:
        return self.prototype.dim

    @property
    def name(self) -> str:
        return " ".join([h.describe() for h in reversed(self.chain)] + [self.base.name or "L"])

    def supports(self) -> list:
        """Threshold support at each level, base first."""
        lo, hi = self.base.threshold.lo, self.base.threshold.hi
        out = [(lo, hi)]
        for h in self.chain:
            if h.f is not None:
                lo, hi = h.f.support_image(lo, hi)
            out.append((lo, hi))
        return out

    def distance(self, x: PointLike) -> float:
        return set_distance(self.base.metric, x, self.prototype)

    def trace(self, d: float) -> list:
        """Survival at distance d, level by level (base first), with
        ``clamped`` set where the argument fell outside that level's
        threshold support."""
        supports = self.supports()
        args = [float(d)]
        for h in reversed(self.chain):
            v = args[-1]
            args.append(h.f.inverse(v) if h.f is not None else v)
        args.reverse()
        s = _base_survival(self.base, args[0])
        lo, hi = supports[0]
        steps = [StepTrace("base", args[0], s, not lo <= args[0] <= hi)]
        for i, h in enumerate(self.chain, start=1):
            if h.f is not None and not h.f.increasing:
                s = 1.0 - s
            if h.mu_map is not None:
                s = float(h.mu_map(s))
            lo, hi = supports[i - 1]
            arg = args[i - 1]
            steps.append(StepTrace(h.kind, args[i], s, h.f is not None and not lo <= arg <= hi))
        return steps

    def survival(self, d: float) -> float:
        return self.trace(d)[-1].survival

    def appropriateness(self, x: PointLike) -> float:
        return self.survival(self.distance(x))

    __call__ = appropriateness

    def then(self, h: HedgeSpec) -> "HedgedLabel":
        return apply(h, self)


def apply(h: HedgeSpec, L) -> HedgedLabel:
    HL = L if isinstance(L, HedgedLabel) else HedgedLabel(L)
    if h.prototype is not None and h.prototype.dim != HL.base.dim:
        raise ValueError(f"prototype override is {h.prototype.dim}-D, label is {HL.base.dim}-D")
    if h.f is not None:
        lo, hi = HL.supports()[-1]
        h.f.check_on(lo, hi)
    return HedgedLabel(HL.base, HL.chain + (h,))


def apply_chain(chain, L) -> HedgedLabel:
    HL = L if isinstance(L, HedgedLabel) else HedgedLabel(L)
    for h in chain:
        HL = apply(h, HL)
    return HL


def hedged_appropriateness(HL, x: PointLike) -> float:
    return HL.appropriateness(x)


def rescale_n(L, f, n: int) -> HedgedLabel:
    """n deterministic hedges eps_{i+1} = f(eps_i) on top of L."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not isinstance(f, MonotoneFn):
        f = linear_scale(f)
    return apply_chain([rescale(f)] * n, L)


def compose_n(kind: str, m0: float, n: int) -> float:
    """n-fold application of the dilation or concentration map to m0."""
    if kind not in _MAPS:
        raise ValueError(f"kind must be 'dilate' or 'concentrate', got {kind!r}")
    if n < 1:
        raise ValueError("n must be a positive integer")
    g = _MAPS[kind]
    m = float(_check_prob(m0, "compose_n"))
    for _ in range(n):
        m = g(m)
    return m


def limit_profile(kind: str, m0: float) -> float:
    """Limit of infinitely repeated dilation (1 off the zero set) or
    concentration (0 off the core)."""
    m0 = float(_check_prob(m0, "limit_profile"))
    if kind == "dilate":
        return 1.0 if m0 > 0 else 0.0
    if kind == "concentrate":
        return 1.0 if m0 >= 1 else 0.0
    raise ValueError(f"kind must be 'dilate' or 'concentrate', got {kind!r}")


class ConvergenceError(RuntimeError):
    def __init__(self, msg, value, steps):
        super().__init__(msg)
        self.value = value
        self.steps = steps


def iterate_to_limit(kind: str, m0: float, tol: float = 1e-6, max_iter: int = 10_000, history: bool = False):
    """Iterate the hedge map until within ``tol`` of the limit.

    Returns ``(value, steps)``, or ``(value, steps, sequence)`` when
    ``history`` is set.  Raises ConvergenceError after ``max_iter`` steps.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    target = limit_profile(kind, m0)
    g = _MAPS[kind]
    m = float(m0)
    seq = [m]
    steps = 0
    while abs(m - target) >= tol:
        if steps >= max_iter:
            raise ConvergenceError(f"no convergence after {max_iter} steps (last value {m!r})", m, steps)
        m = g(m)
        steps += 1
        seq.append(m)
    return (m, steps, seq) if history else (m, steps)
