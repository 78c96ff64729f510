"""Oracle suites run by ``labelsem verify``."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import classical, hedge, oracle
from .classical import Trapezoid
from .label import Label
from .threshold import Uniform, triangular

QUAD_LIMIT = 1e-6
SIGMAS = 3.0
EXACT_LIMIT = 1e-9
BOSC_GRID_LIMIT = 1e-2


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    limit: float
    passed: bool

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.name}: {self.value:.3g} (limit {self.limit:g})"


def standard_labels():
    return {
        "U[0,3]": Label(5.0, Uniform(0, 3)),
        "U[1,2]": Label(5.0, Uniform(1, 2)),
        "tri(0,1,2)": Label(5.0, triangular(0.0, 1.0, 2.0)),
    }


def standard_grid():
    return np.linspace(1.0, 9.0, 161)


def _z_scores(closed, est, se, n):
    """|closed - est| / se, with se floored at the binomial error under the
    closed-form value (a batch spread of 0 only means the event was never seen)."""
    closed, est, se = map(np.asarray, (closed, est, se))
    se = np.maximum(se, np.sqrt(closed * (1.0 - closed) / n))
    diff = np.abs(closed - est)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(diff == 0, 0.0, diff / se)
    return np.nan_to_num(z, nan=np.inf)


def pair_suite(kind: str, cfg: oracle.OracleConfig, labels=None, grid=None) -> list:
    labels = labels or standard_labels()
    grid = standard_grid() if grid is None else grid
    g = hedge.dilate_mu if kind == "dilate" else hedge.concentrate_mu
    quad = oracle.quad_dilation if kind == "dilate" else oracle.quad_concentration
    mc = oracle.mc_dilation_curve if kind == "dilate" else oracle.mc_concentration_curve
    checks = []
    for name, L in labels.items():
        closed = np.array([g(L(x)) for x in grid])
        q = np.array([quad(L, x, cfg) for x in grid])
        dev = float(np.max(np.abs(closed - q)))
        checks.append(Check(f"{kind} {name} |closed - quad|", dev, QUAD_LIMIT, dev <= QUAD_LIMIT))
        est, se = mc(L, grid, cfg)
        zmax = float(np.max(_z_scores(closed, est, se, cfg.samples)))
        checks.append(Check(f"{kind} {name} max |closed - mc| / se", zmax, SIGMAS, zmax <= SIGMAS))
    return checks


def chain_suite(cfg: oracle.OracleConfig, depths=(2, 3), xs=(5.5, 6.0, 6.5, 7.0, 7.5)) -> list:
    L = Label(5.0, Uniform(0, 3))
    checks = []
    for kind in ("dilate", "concentrate"):
        for n in depths:
            est, se = oracle.mc_chain_curve(L, xs, kind, n, cfg)
            closed = [hedge.compose_n(kind, L(x), n) for x in xs]
            zmax = float(np.max(_z_scores(closed, est, se, cfg.samples)))
            checks.append(Check(f"{kind} x{n} max |compose_n - mc_chain| / se", zmax, SIGMAS, zmax <= SIGMAS))
    grid = np.linspace(1.0, 9.0, 161)
    for k in (0.5, 2.0):
        for n in (1, 2, 3, 5):
            hl = hedge.rescale_n(L, k, n)
            dev = max(abs(hl(x) - L.threshold.survival(abs(x - 5.0) / k**n)) for x in grid)
            checks.append(Check(f"rescale({k}) x{n} vs survival(d / k^n)", dev, 0.0, dev == 0.0))
    return checks


def bosc_suite() -> list:
    F = Trapezoid(2, 4, 6, 8)
    Z = Trapezoid(-1, -0.5, 0.5, 1)
    dil, con = classical.bosc_dilate(F, Z), classical.bosc_concentrate(F, Z)
    checks = [
        Check("bosc dilation corners == (1, 3.5, 6.5, 9)", float(dil.astuple() != (1, 3.5, 6.5, 9)), 0, dil.astuple() == (1, 3.5, 6.5, 9)),
        Check("bosc concentration corners == (3, 4.5, 5.5, 7)", float(con.astuple() != (3, 4.5, 5.5, 7)), 0, con.astuple() == (3, 4.5, 5.5, 7)),
    ]
    for mode in ("dilate", "concentrate"):
        dev = oracle.bosc_supinf_check(F, Z, mode=mode)
        checks.append(Check(f"bosc {mode} sampled sup/inf vs corners", dev, BOSC_GRID_LIMIT, dev <= BOSC_GRID_LIMIT))
    bad = 0
    P = Fraction(5)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for c, a in ((1, 2), (2, 5)):
            base = classical.label_trapezoid(P, c, a)
            for mode, ks in (("dilate", ("1.5", 2, 3)), ("concentrate", ("0.5", "0.8"))):
                for k in map(Fraction, ks):
                    z, alpha = classical.bosc_equivalence_params(k, c, a, mode)
                    op = classical.bosc_dilate if mode == "dilate" else classical.bosc_concentrate
                    got = op(base, classical.resemblance(z, alpha))
                    want = (P - k * a, P - k * c, P + k * c, P + k * a)
                    bad += got.astuple() != want
    checks.append(Check("bosc equivalence mapping mismatches", float(bad), 0, bad == 0))
    return checks


NOVAK_PARAMS = [(k, c, a) for k in (0.5, 1.0, 2.0) for c, a in ((1, 2), (0, 3), (2, 5))]


def novak_suite() -> list:
    checks = []
    for k, c, a in NOVAK_PARAMS:
        grid = np.linspace(0.0, 2.0 * max(k, 1.0) * a, 500)
        dev = classical.novak_equivalence_deviation(c, a, k, grid)
        checks.append(Check(f"novak k={k} c={c} a={a}", dev, EXACT_LIMIT, dev <= EXACT_LIMIT))
    return checks


def power_suite(b: float = 3.0, ks=(2.0, 0.5), P: float = 5.0) -> list:
    L = Label(P, Uniform(0, b))
    grid = np.linspace(P - b, P + b, 601)
    checks = []
    for k in ks:
        hl = hedge.apply(hedge.rescale(classical.power_as_threshold_fn(b, k)), L)
        dev = max(abs(hl(x) - L(x) ** k) for x in grid)
        checks.append(Check(f"power b={b} k={k} rescale vs mu^k", dev, EXACT_LIMIT, dev <= EXACT_LIMIT))
    return checks


SCOPES = ("dilate", "concentrate", "chain", "bosc", "novak", "power")


def run(scope: str, cfg: oracle.OracleConfig = oracle.OracleConfig(), b: float = 3.0, k=None) -> list:
    if scope == "all":
        return [c for s in SCOPES for c in run(s, cfg, b, k)]
    if scope in ("dilate", "concentrate"):
        return pair_suite(scope, cfg)
    if scope == "chain":
        return chain_suite(cfg)
    if scope == "bosc":
        return bosc_suite()
    if scope == "novak":
        return novak_suite()
    if scope == "power":
        return power_suite(b, (k,) if k is not None else (2.0, 0.5))
    raise ValueError(f"unknown verification scope {scope!r}")
