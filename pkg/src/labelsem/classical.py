"""Classical hedge models and their translation into threshold hedges.

Covers Zadeh's powering and shifting modifiers, Novak's horizon shifting
(linear case) and the trapezoidal dilation/concentration of Bosc et al.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .hedge import MonotoneFn, apply, rescale
from .label import Label
from .space import PointLike
from .threshold import Uniform


@dataclass(frozen=True)
class Trapezoid:
    """Corners keep their numeric type, so Fraction input gives exact corner arithmetic."""

    A: float
    B: float
    C: float
    D: float

    def __post_init__(self):
        if not (self.A <= self.B <= self.C <= self.D):
            raise ValueError(f"trapezoid corners must satisfy A <= B <= C <= D, got {self.astuple()}")

    def astuple(self) -> tuple:
        return (self.A, self.B, self.C, self.D)

    def __iter__(self):
        return iter(self.astuple())

    def membership(self, x):
        x = np.asarray(x, dtype=float)
        A, B, C, D = (float(v) for v in self.astuple())
        with np.errstate(divide="ignore", invalid="ignore"):
            up = np.where(B > A, (x - A) / (B - A), 1.0)
            down = np.where(D > C, (D - x) / (D - C), 1.0)
        mu = np.where((x >= B) & (x <= C), 1.0, np.where(x < B, up, down))
        mu = np.where((x < A) | (x > D), 0.0, mu)
        mu = np.clip(mu, 0.0, 1.0)
        return float(mu) if mu.ndim == 0 else mu

    __call__ = membership

    def to_json(self) -> list:
        return list(self.astuple())


def resemblance(z: float, alpha: float) -> Trapezoid:
    """Approximate-equality kernel Z = (-z-alpha, -z, z, z+alpha)."""
    if z < 0 or alpha < 0:
        raise ValueError("resemblance parameters must be nonnegative")
    return Trapezoid(-z - alpha, -z, z, z + alpha)


def _resemblance_params(Z: Trapezoid) -> tuple:
    if Z.A != -Z.D or Z.B != -Z.C:
        raise ValueError(f"resemblance trapezoid must be symmetric about 0, got {Z.astuple()}")
    z = Z.C
    return z, Z.D - z


def power_hedge(m, k: float):
    """Zadeh powering modifier m**k (k=2 concentration, k=1/2 dilation)."""
    if not k > 0:
        raise ValueError("power hedge needs k > 0")
    m = np.asarray(m, dtype=float)
    if np.any((m < 0) | (m > 1)):
        raise ValueError("power hedge takes appropriateness values in [0, 1]")
    out = np.power(m, k)
    return float(out) if out.ndim == 0 else out


def shift_hedge(L: Label, a: PointLike) -> Label:
    """Shifting modifier: mu'(x) = mu(x - a), done by translating the prototype."""
    return L.shifted(a)


@dataclass(frozen=True)
class HorizonModel:
    """Novak's linear 'small' with certainty bound c, upper limit a, shift sigma."""

    c: float
    a: float
    sigma: float = 1.0

    def __post_init__(self):
        if not (0 <= self.c < self.a):
            raise ValueError(f"horizon model needs 0 <= c < a, got c={self.c}, a={self.a}")
        if not self.sigma > 0:
            raise ValueError("horizon shift sigma must be positive")


def novak_mu(h: HorizonModel, x: float, hedged: bool = False) -> float:
    if x < 0:
        raise ValueError("horizon model is defined on x >= 0")
    s = h.sigma if hedged else 1.0
    c, a = s * h.c, s * h.a
    if x <= c:
        return 1.0
    if x <= a:
        return 1.0 - (x - c) / (s * (h.a - h.c))
    return 0.0


def novak_label(c: float, a: float) -> Label:
    """Label with prototype 0 and threshold U[c, a]; equal to Novak's linear model on x >= 0."""
    return Label(0.0, Uniform(c, a), name="small")


def novak_equivalence_deviation(c: float, a: float, k: float, grid) -> float:
    hl = apply(rescale(k), novak_label(c, a))
    h = HorizonModel(c, a, k)
    return max(abs(hl.appropriateness(x) - novak_mu(h, x, hedged=True)) for x in grid)


def novak_equivalence_check(c: float, a: float, k: float, grid=None, tol: float = 1e-9) -> bool:
    """Does eps' = k eps on (P=0, U[c, a]) reproduce Novak's hedge with sigma = k?"""
    if grid is None:
        grid = np.linspace(0.0, 2.0 * max(k, 1.0) * a, 500)
    return novak_equivalence_deviation(c, a, k, grid) <= tol


def bosc_dilate(F: Trapezoid, Z: Trapezoid) -> Trapezoid:
    """sup-min dilation of a trapezoid by a symmetric resemblance relation."""
    z, alpha = _resemblance_params(Z)
    return Trapezoid(F.A - z - alpha, F.B - z, F.C + z, F.D + z + alpha)


def bosc_concentrate(F: Trapezoid, Z: Trapezoid) -> Trapezoid:
    """inf-Goedel concentration; needs C - B >= 2z so the core survives."""
    z, alpha = _resemblance_params(Z)
    if F.C - F.B < 2 * z:
        raise ValueError(f"concentration needs C - B >= 2z, got C - B = {F.C - F.B}, z = {z}")
    if alpha > F.B - F.A or alpha > F.D - F.C:
        raise ValueError("resemblance ramp is wider than the trapezoid's ramps")
    return Trapezoid(F.A + z + alpha, F.B + z, F.C - z, F.D - z - alpha)


def bosc_equivalence_params(k: float, c: float, a: float, mode: str) -> tuple:
    """(z, alpha) for which the Bosc modifier maps (P-a, P-c, P+c, P+a) to
    (P-ka, P-kc, P+kc, P+ka)."""
    if not c < a:
        raise ValueError("need c < a")
    if mode == "dilate":
        if not k >= 1:
            raise ValueError("dilation equivalence needs k >= 1")
        z, alpha = (k - 1) * c, (k - 1) * (a - c)
        if not c < z:
            warnings.warn(f"resemblance core z={z} does not exceed c={c}", stacklevel=2)
    elif mode == "concentrate":
        if not 0 < k <= 1:
            raise ValueError("concentration equivalence needs 0 < k <= 1")
        z, alpha = (1 - k) * c, (1 - k) * (a - c)
    else:
        raise ValueError(f"mode must be 'dilate' or 'concentrate', got {mode!r}")
    return z, alpha


def label_trapezoid(P: float, c: float, a: float) -> Trapezoid:
    """Trapezoid of a 1-D label with point prototype P and threshold U[c, a]."""
    return Trapezoid(P - a, P - c, P + c, P + a)


def power_as_threshold_fn(b: float, k: float) -> MonotoneFn:
    """f(e) = b - (b^(k-1) (b - e))^(1/k) on [0, b].

    For a threshold U[0, b], rescaling by this f turns mu into mu**k.
    """
    b, k = float(b), float(k)
    if not (b > 0 and k > 0):
        raise ValueError("power threshold function needs b > 0 and k > 0")

    def forward(e):
        return b - (b ** (k - 1) * (b - e)) ** (1.0 / k)

    def inverse(d):
        return b - (b - d) ** k / b ** (k - 1)

    return MonotoneFn(forward, inverse, domain=(0.0, b), increasing=True, name="power", params={"b": b, "k": k})

