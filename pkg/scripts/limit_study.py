"""Repeated hedging: steps to the limit, and the chain sampler against the recurrence.

    python scripts/limit_study.py --samples 1000000
"""

import argparse

import numpy as np

from labelsem.hedge import compose_n, iterate_to_limit
from labelsem.label import Label
from labelsem.oracle import OracleConfig, mc_chain_curve
from labelsem.threshold import Uniform


def steps_table(m0s, tol):
    rows = []
    for m0 in m0s:
        row = [m0]
        for kind in ("dilate", "concentrate"):
            _, steps, seq = iterate_to_limit(kind, m0, tol=tol, history=True)
            row.append(steps)
        rows.append(row)
    return rows


def convergence_orders(kind, m0, tol=1e-14):
    # log e_{n+1} / log e_n tends to 2 for quadratic convergence
    target = 1.0 if kind == "dilate" else 0.0
    _, _, seq = iterate_to_limit(kind, m0, tol=tol, history=True)
    err = np.abs(np.array(seq) - target)
    err = err[err > 0]
    return np.log(err[1:]) / np.log(err[:-1])


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-6)
    args = p.parse_args()

    print("m0        dilate  concentrate  (steps to within tol)")
    for m0, sd, sc in steps_table([1e-6, 1e-3, 0.01, 0.1, 0.5, 0.9, 0.99, 0.999], args.tol):
        print(f"{m0:<9g} {sd:>6d}  {sc:>11d}")

    for kind in ("dilate", "concentrate"):
        orders = convergence_orders(kind, 0.5)
        print(f"{kind} error exponents from m0=0.5: " + " ".join(f"{o:.2f}" for o in orders))

    cfg = OracleConfig(samples=args.samples, seed=args.seed)
    L = Label(5.0, Uniform(0, 3))
    xs = [5.5, 6.0, 6.5, 7.0, 7.5]
    print("\nkind         n   x     recurrence   sampled     z")
    for kind in ("dilate", "concentrate"):
        for n in (1, 2, 3, 4):
            est, se = mc_chain_curve(L, xs, kind, n, cfg)
            for x, e, s in zip(xs, est, se):
                r = compose_n(kind, L(x), n)
                z = abs(e - r) / s if s > 0 else 0.0
                print(f"{kind:<12} {n}  {x:<4}  {r:.6f}     {e:.6f}   {z:.2f}")


if __name__ == "__main__":
    main()
