"""Write the membership curves behind the standard hedge figures as CSV.

    python scripts/figure_curves.py --out figures/
"""

import argparse
import os

from labelsem.cli import curve_table, write_table
from labelsem.classical import power_as_threshold_fn
from labelsem.hedge import quite, rescale, very
from labelsem.label import Label
from labelsem.space import PrototypeSet
from labelsem.threshold import Uniform


def figures():
    L = Label(5.0, Uniform(0, 3), name="L")
    wide = Label(PrototypeSet.interval(4.0, 6.0), Uniform(0, 3), name="L")
    narrow = Label(PrototypeSet.interval(4.5, 5.5), Uniform(0, 3), name="L")
    return {
        # dilation against the square-root powering modifier
        "quite_vs_sqrt": (L, [quite(), rescale(power_as_threshold_fn(3.0, 0.5))]),
        "very_vs_square": (L, [very(), rescale(power_as_threshold_fn(3.0, 2.0))]),
        "quite_expanded_prototype": (narrow, [quite(prototype=PrototypeSet.interval(4.0, 6.0))]),
        "very_contracted_prototype": (wide, [very(prototype=PrototypeSet.interval(4.5, 5.5))]),
        "very_very": (L, [very(), very()]),
        "rescale_u12": (Label(5.0, Uniform(1, 2)), [rescale(2.0)]),
    }


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--out", default="figures")
    p.add_argument("--steps", type=int, default=401)
    args = p.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for name, (L, chain) in figures().items():
        if name.endswith(("_sqrt", "_square")):
            # two alternatives side by side, not a chain
            cols = curve_table(L, chain[:1], 0.0, 10.0, args.steps)
            cols["mu_power"] = curve_table(L, chain[1:], 0.0, 10.0, args.steps)["mu_hedged"]
        else:
            cols = curve_table(L, chain, 0.0, 10.0, args.steps)
        path = os.path.join(args.out, f"{name}.csv")
        write_table(cols, path, "csv")
        print(path)


if __name__ == "__main__":
    main()
